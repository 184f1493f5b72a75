"""Brute-force and Monte Carlo oracles, kept independent of the fast paths."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .clustering import local_cc_all, triangles_per_vertex
from .generators import GirgParams, generate_girg
from .geometry import connection_threshold
from .graph import GraphInstance
from .rng_dist import INF, RngLike, as_generator, lp_norm, sample_unit_ball


@dataclass(frozen=True)
class OracleReport:
    estimate: float
    stderr: float
    trials: int
    reference: Optional[float] = None
    reference_source: str = ""
    extra: dict = field(default_factory=dict)

    def z_score(self) -> float:
        if self.reference is None:
            raise ValueError("report has no reference value")
        if self.stderr == 0:
            return 0.0 if self.estimate == self.reference else math.inf
        return (self.estimate - self.reference) / self.stderr

    def within(self, k: float) -> bool:
        return abs(self.estimate - self.reference) <= k * self.stderr


def bernoulli_report(hits: int, trials: int, reference=None, source="") -> OracleReport:
    est = hits / trials
    return OracleReport(est, math.sqrt(est * (1 - est) / trials), trials, reference, source)


def mc_triangle_prob(d: int, norm: float, w_v: float, w_s: float, w_t: float, n: int, lam: float,
                     trials: int, seed: RngLike = 0, chunk: int = 250_000) -> OracleReport:
    """Estimate ``Pr[s ~ t | v ~ s, v ~ t]`` by sampling s and t in v's neighbour balls.

    Given adjacency to v (at the origin), s and t are uniform in the balls of
    radius ``t_vs`` and ``t_vt``.  Requires ``w_v <= w_s <= w_t`` and the
    s-t threshold at most 1/4 so the torus can be ignored.  The reference is
    ``(3/4)^d``, exact for equal weights under the maximum norm.
    """
    if not (w_v <= w_s <= w_t):
        raise ValueError("need w_v <= w_s <= w_t")
    if trials < 1:
        raise ValueError("trials must be positive")
    r_tt = connection_threshold(w_t, w_t, n, lam, d, norm)
    if r_tt > 0.25:
        raise ValueError(f"threshold hypothesis violated: (w_t^2/(mu n))^(1/d) = {r_tt:.4g} > 1/4")
    r_vs = connection_threshold(w_v, w_s, n, lam, d, norm)
    r_vt = connection_threshold(w_v, w_t, n, lam, d, norm)
    r_st = connection_threshold(w_s, w_t, n, lam, d, norm)
    gen = as_generator(seed)
    hits = 0
    done = 0
    while done < trials:
        m = min(chunk, trials - done)
        xs = r_vs * sample_unit_ball(d, norm, gen, m)
        xt = r_vt * sample_unit_ball(d, norm, gen, m)
        hits += int(np.count_nonzero(lp_norm(xs - xt, norm) <= r_st))
        done += m
    rep = bernoulli_report(hits, trials, 0.75**d, "triangle probability given a star, (3/4)^d")
    return replace(rep, extra={"upper": (w_t / w_v) * 0.75**d})


def brute_force_triangles(g: GraphInstance) -> np.ndarray:
    """Triangles per vertex from the diagonal of the cubed dense adjacency matrix."""
    if g.n > 500:
        raise ValueError(f"brute-force oracle refuses n={g.n} > 500")
    A = np.zeros((g.n, g.n), dtype=np.int64)
    u, v = g.edges()
    A[u, v] = 1
    A[v, u] = 1
    return np.diagonal(A @ A @ A) // 2


def brute_force_global_cc(g: GraphInstance) -> Fraction:
    """Exact clustering coefficient as a rational number (O(n^3))."""
    if g.n == 0:
        raise ValueError("empty graph")
    tri = brute_force_triangles(g)
    deg = g.degrees
    total = Fraction(0)
    for t, k in zip(tri.tolist(), deg.tolist()):
        if k >= 2:
            total += Fraction(2 * t, k * (k - 1))
    return total / g.n


def global_cc_exact(g: GraphInstance) -> Fraction:
    """The fast kernel's triangle counts combined in rational arithmetic."""
    tri = triangles_per_vertex(g)
    total = Fraction(0)
    for t, k in zip(tri.tolist(), g.degrees.tolist()):
        if k >= 2:
            total += Fraction(2 * t, k * (k - 1))
    return total / g.n


def mc_cc_identity_check(params: GirgParams, trials: int) -> OracleReport:
    """Compare ``E[CC(G)]`` with ``Pr[triangle | v ~ s, t] * Pr[deg(v) >= 2]``.

    ``trials`` independent replicas (seeds ``params.seed + r``).  Per replica
    the left side is CC(G); the right side pools, over all vertex triples,
    the number of stars centred at v that close into triangles, divided by
    the number of stars, times the fraction of degree >= 2 vertices.  The
    report holds ``LHS - RHS`` with a jackknife standard error over replicas.
    """
    if params.n > 2000:
        raise ValueError("identity check is meant for n <= 2000")
    if trials < 2:
        raise ValueError("need at least two replicas")
    lhs = np.empty(trials)
    closed = np.empty(trials)
    stars = np.empty(trials)
    deg2 = np.empty(trials)
    for r in range(trials):
        g = generate_girg(replace(params, seed=params.seed + r))
        deg = g.degrees
        lhs[r] = local_cc_all(g).mean()
        closed[r] = triangles_per_vertex(g).sum()
        stars[r] = (deg * (deg - 1) // 2).sum()
        deg2[r] = np.mean(deg >= 2)

    def diff(lhs_sum, closed_sum, stars_sum, deg2_sum, count):
        ratio = np.divide(closed_sum, stars_sum, out=np.zeros_like(closed_sum, dtype=float), where=stars_sum > 0)
        return lhs_sum / count - ratio * deg2_sum / count

    sums = [lhs.sum(), closed.sum(), stars.sum(), deg2.sum()]
    full = float(diff(*[np.float64(s) for s in sums], trials))
    loo = diff(sums[0] - lhs, sums[1] - closed, sums[2] - stars, sums[3] - deg2, trials - 1)
    se = float(math.sqrt((trials - 1) / trials * np.sum((loo - loo.mean()) ** 2)))
    rhs = float(lhs.mean() - full)
    return OracleReport(full, se, trials, 0.0, "E[CC] = Pr[triangle | star] Pr[deg >= 2]",
                        {"lhs": float(lhs.mean()), "rhs": rhs})


def decay_fit(cc_values: Sequence[tuple[int, float]]) -> float:
    """Least-squares slope of ``log(cc_plus)`` against d."""
    pts = list(cc_values)
    if len(pts) < 4:
        raise ValueError("need at least 4 points to fit a decay slope")
    d = np.array([p[0] for p in pts], dtype=float)
    y = np.array([p[1] for p in pts], dtype=float)
    if np.any(~(y > 0)):
        raise ValueError("clustering values must be positive")
    ly = np.log(y)
    dc = d - d.mean()
    return float(np.sum(dc * (ly - ly.mean())) / np.sum(dc * dc))


__all__ = [
    "OracleReport", "mc_triangle_prob", "brute_force_global_cc", "global_cc_exact",
    "mc_cc_identity_check", "decay_fit", "INF",
]
