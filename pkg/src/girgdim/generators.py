"""GIRG (threshold model, any L_p norm) and Chung-Lu graph samplers.

Randomness layout for a given seed:

* substream 0 draws the weight sequence (shared by GIRG and Chung-Lu),
* substream ``1 + b`` draws positions for vertex block ``b``,
* substream ``CHUNG_LU_STREAM`` drives the Chung-Lu edge coins.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

import itertools

import numba
import numpy as np

from .geometry import connection_threshold, lp_ball_volume, torus_point
from .graph import GraphInstance
from .rng_dist import INF, ParetoParams, SeededStream, check_norm_order, sample_pareto

POSITION_BLOCK = 4096
CHUNG_LU_STREAM = 1 << 62
CALIBRATION_SEED = 0x5EED
CHUNG_LU_EXACT_MAX_N = 20_000
_SLACK = 1.0 + 1e-9


@dataclass(frozen=True)
class GirgParams:
    n: int
    d: int
    beta: float
    w0: float = 1.0
    lam: float = 1.0
    norm: float = INF
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")
        if not self.lam > 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        check_norm_order(self.norm)
        ParetoParams(self.w0, self.beta)

    @property
    def pareto(self) -> ParetoParams:
        return ParetoParams(self.w0, self.beta)

    def as_dict(self) -> dict:
        out = asdict(self)
        out["norm"] = "inf" if self.norm == INF else self.norm
        return out


def sample_weights(n: int, pareto: ParetoParams, seed: int) -> np.ndarray:
    return sample_pareto(n, pareto, SeededStream(seed, 0))


def sample_positions(n: int, d: int, seed: int) -> np.ndarray:
    """Uniform torus positions, drawn blockwise from independent substreams."""
    out = np.empty((n, d))
    for b, start in enumerate(range(0, n, POSITION_BLOCK)):
        stop = min(n, start + POSITION_BLOCK)
        out[start:stop] = SeededStream(seed, 1 + b).generator().random((stop - start, d))
    return out


# -- GIRG -------------------------------------------------------------------------

@numba.njit(cache=True, nogil=True)
def _adjacent(pos, w, u, v, scale, inv_d, p, unit_vol):
    # Scalar adjacency predicate shared by every GIRG path.  p <= 0 encodes INF.
    mass = scale * w[u] * w[v]
    if mass >= 1.0:
        return True
    d = pos.shape[1]
    if p <= 0.0:
        t = 0.5 * mass**inv_d
        for k in range(d):
            c = abs(pos[u, k] - pos[v, k])
            c = min(c, 1.0 - c)
            if c > t:
                return False
        return True
    t = (mass / unit_vol) ** inv_d
    if t > 0.5:
        return True
    acc = 0.0
    for k in range(d):
        c = abs(pos[u, k] - pos[v, k])
        c = min(c, 1.0 - c)
        if p == 1.0:
            acc += c
        elif p == 2.0:
            acc += c * c
        else:
            acc += c**p
    if p == 1.0:
        return acc <= t
    if p == 2.0:
        return np.sqrt(acc) <= t
    return acc ** (1.0 / p) <= t


@numba.njit(cache=True, nogil=True)
def _push(buf, count, u, v):
    if count == buf.shape[0]:
        grown = np.empty((buf.shape[0] * 2, 2), dtype=np.int64)
        grown[:count] = buf[:count]
        buf = grown
    buf[count, 0] = u
    buf[count, 1] = v
    return buf


@numba.njit(cache=True, nogil=True)
def _brute_kernel(pos, w, A, B, same, scale, inv_d, p, unit_vol):
    buf = np.empty((1024, 2), dtype=np.int64)
    count = 0
    for ia in range(A.size):
        u = A[ia]
        start = ia + 1 if same else 0
        for ib in range(start, B.size):
            v = B[ib]
            if _adjacent(pos, w, u, v, scale, inv_d, p, unit_vol):
                buf = _push(buf, count, u, v)
                count += 1
    return buf[:count]


@numba.njit(cache=True, nogil=True)
def _cell_kernel(pos, w, A, B, same, k, offsets, scale, inv_d, p, unit_vol):
    # Bucket B into a k^d grid (k >= 3), scan the neighbouring cells of every
    # A point.  Cells have side >= the layer-pair radius, so every adjacent
    # pair lies in neighbouring cells.  When A is B, offsets must hold the zero
    # offset first followed by one offset from each +/- pair.
    d = pos.shape[1]
    ncell = k**d
    cell_b = np.empty(B.size, dtype=np.int64)
    for ib in range(B.size):
        c = 0
        for x in range(d):
            q = int(pos[B[ib], x] * k)
            if q >= k:
                q = k - 1
            c = c * k + q
        cell_b[ib] = c
    order = np.argsort(cell_b, kind="mergesort")
    start = np.zeros(ncell + 1, dtype=np.int64)
    for ib in range(B.size):
        start[cell_b[ib] + 1] += 1
    for c in range(ncell):
        start[c + 1] += start[c]
    sorted_b = B[order]
    coord = np.empty(d, dtype=np.int64)
    buf = np.empty((1024, 2), dtype=np.int64)
    count = 0
    for ia in range(A.size):
        u = A[ia]
        for x in range(d):
            q = int(pos[u, x] * k)
            if q >= k:
                q = k - 1
            coord[x] = q
        for o in range(offsets.shape[0]):
            c = 0
            for x in range(d):
                q = (coord[x] + offsets[o, x]) % k
                c = c * k + q
            for s in range(start[c], start[c + 1]):
                v = sorted_b[s]
                if same and o == 0 and v <= u:
                    continue
                if _adjacent(pos, w, u, v, scale, inv_d, p, unit_vol):
                    buf = _push(buf, count, u, v)
                    count += 1
    return buf[:count]


def _kernel_args(n, lam, d, norm):
    p = -1.0 if norm == INF else float(norm)
    unit_vol = 1.0 if norm == INF else lp_ball_volume(d, norm)
    return lam / n, 1.0 / d, p, unit_vol


def _finish(parts):
    if not parts:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    e = np.concatenate(parts)
    return e[:, 0].copy(), e[:, 1].copy()


def girg_edges_reference(pos, w, lam, norm) -> tuple[np.ndarray, np.ndarray]:
    """Exact O(n^2) pair test; the correctness oracle for :func:`girg_edges`."""
    n, d = pos.shape
    ids = np.arange(n, dtype=np.int64)
    e = _brute_kernel(np.ascontiguousarray(pos), w, ids, ids, True, *_kernel_args(n, lam, d, norm))
    return _finish([e])


def _weight_layers(w):
    layer = np.floor(np.log2(w / w.min())).astype(np.int64)
    return [np.flatnonzero(layer == k) for k in np.unique(layer)]


def girg_edges(pos, w, lam, norm) -> tuple[np.ndarray, np.ndarray]:
    """GIRG edges via weight layers and a cell grid.

    Vertices are grouped into weight layers of ratio 2.  For each pair of
    layers the largest possible threshold sets the grid cell side, and only
    points in neighbouring cells are tested with the exact predicate.  Pairs
    whose radius is too large for a 3-cell grid are tested exhaustively.
    """
    n, d = pos.shape
    pos = np.ascontiguousarray(pos)
    args = _kernel_args(n, lam, d, norm)
    layers = _weight_layers(w)
    wmax = [w[ids].max() for ids in layers]
    offsets = np.array(list(itertools.product((-1, 0, 1), repeat=d)), dtype=np.int64)
    # zero offset first, then the lexicographically positive half
    positive = [o for o in offsets if any(o) and o[np.flatnonzero(o)[0]] > 0]
    half = np.array([np.zeros(d, np.int64)] + positive, dtype=np.int64)
    parts = []
    for a in range(len(layers)):
        for b in range(a, len(layers)):
            A, B = layers[a], layers[b]
            same = a == b
            if A.size > B.size:
                A, B = B, A
            # linf radius bounds the L_p radius for every p >= 1 on the cube side
            r = connection_threshold(wmax[a], wmax[b], n, lam, d, norm) * _SLACK
            k = int(1.0 / r) if r > 0 else 3
            # grid no finer than ~8 cells per B point
            k = min(k, max(3, int((8 * max(B.size, 1)) ** (1.0 / d))))
            if k < 3 or A.size * B.size <= 4096:
                parts.append(_brute_kernel(pos, w, A, B, same, *args))
            else:
                parts.append(_cell_kernel(pos, w, A, B, same, k, half if same else offsets, *args))
    return _finish(parts)


def generate_girg(params: GirgParams, *, weights=None, positions=None, reference=False) -> GraphInstance:
    """Sample a threshold GIRG.

    ``weights`` and ``positions`` override the seeded draws (useful for
    tests); ``reference=True`` uses the exhaustive pair test.
    """
    n, d = params.n, params.d
    w = sample_weights(n, params.pareto, params.seed) if weights is None else np.asarray(weights, float)
    pos = sample_positions(n, d, params.seed) if positions is None else torus_point(np.reshape(positions, (n, d)))
    if w.shape != (n,):
        raise ValueError("weights must have one entry per vertex")
    edge_fn = girg_edges_reference if reference else girg_edges
    u, v = edge_fn(pos, w, params.lam, params.norm)
    meta = {"model": "girg", **params.as_dict()}
    return GraphInstance.from_edges(n, u, v, weights=w, positions=pos, meta=meta)


# -- Chung-Lu ---------------------------------------------------------------------

def chung_lu_edges_reference(w, lam, rng) -> tuple[np.ndarray, np.ndarray]:
    """One independent coin per unordered pair."""
    n = w.size
    i, j = np.triu_indices(n, k=1)
    prob = np.minimum(1.0, lam * w[i] * w[j] / n)
    hit = rng.random(i.size) < prob
    return i[hit], j[hit]


def _skip_positions(total: int, q: float, rng) -> np.ndarray:
    """Positions in ``range(total)`` selected independently with probability q."""
    if q >= 1.0:
        return np.arange(total, dtype=np.int64)
    chunks = []
    last = -1
    batch = int(total * q * 1.1) + 64
    while True:
        gaps = rng.geometric(q, batch).astype(np.int64)
        pos = last + np.cumsum(gaps)
        inside = pos < total
        chunks.append(pos[inside])
        if not inside.all():
            break
        last = int(pos[-1])
    return np.concatenate(chunks)


def chung_lu_edges(w, lam, rng) -> tuple[np.ndarray, np.ndarray]:
    """Chung-Lu edges by geometric skipping within weight-layer pairs.

    Within a layer pair every pair is proposed independently with the layer's
    maximal probability q and kept with probability ``p_uv / q``, so each
    pair is an edge independently with probability ``p_uv``.
    """
    n = w.size
    layers = _weight_layers(w)
    wmax = [w[ids].max() for ids in layers]
    us, vs = [], []
    for a in range(len(layers)):
        for b in range(a, len(layers)):
            A, B = layers[a], layers[b]
            q = min(1.0, lam * wmax[a] * wmax[b] / n)
            k = _skip_positions(A.size * B.size, q, rng)
            i, j = A[k // B.size], B[k % B.size]
            if a == b:
                keep = i < j
                i, j = i[keep], j[keep]
            prob = np.minimum(1.0, lam * w[i] * w[j] / n)
            hit = rng.random(i.size) * q < prob
            us.append(i[hit])
            vs.append(j[hit])
    return np.concatenate(us), np.concatenate(vs)


def generate_chung_lu(n: int, beta: float, w0: float, lam: float, seed: int, *, weights=None, exact=None) -> GraphInstance:
    """Chung-Lu graph sharing the GIRG weight sequence of the same seed."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if not lam > 0:
        raise ValueError("lambda must be positive")
    pareto = ParetoParams(w0, beta)
    w = sample_weights(n, pareto, seed) if weights is None else np.asarray(weights, float)
    rng = SeededStream(seed, CHUNG_LU_STREAM).generator()
    if exact is None:
        exact = n <= CHUNG_LU_EXACT_MAX_N
    u, v = (chung_lu_edges_reference if exact else chung_lu_edges)(w, lam, rng)
    meta = {"model": "chunglu", "n": n, "beta": beta, "w0": w0, "lam": lam, "seed": seed}
    return GraphInstance.from_edges(n, u, v, weights=w, meta=meta)


# -- lambda calibration -----------------------------------------------------------

def expected_average_degree(weights, n: int, lam: float) -> float:
    """Mean over the sample of ``(n - 1) * E_v[min(1, lam w_u w_v / n)]``.

    With a full weight sequence (``len(weights) == n``) this is exactly
    ``2/n * sum_{u<v} min(1, lam w_u w_v / n)``.
    """
    w = np.sort(np.asarray(weights, dtype=float))
    s = w.size
    prefix = np.concatenate([[0.0], np.cumsum(w)])
    # for each u, partners v with w_v >= n / (lam w_u) are capped at 1
    cut = np.searchsorted(w, n / (lam * w), side="left")
    row = (s - cut) + lam * w / n * prefix[cut]
    self_term = np.minimum(1.0, lam * w * w / n)
    total = np.sum(row - self_term)
    return float(total / (s * (s - 1)) * (n - 1))


def calibrate_lambda_for_weights(weights, n: int, target_avg_degree: float, tol: float = 1e-10) -> float:
    if not target_avg_degree > 0:
        raise ValueError("target average degree must be positive")
    if target_avg_degree >= n - 1:
        raise ValueError(f"average degree {target_avg_degree} unattainable with n={n}")
    lo, hi = 0.0, 1.0
    while expected_average_degree(weights, n, hi) < target_avg_degree:
        lo, hi = hi, hi * 2.0
        if hi > 1e300:
            raise ValueError("could not bracket lambda")
    while hi - lo > tol * hi:
        mid = 0.5 * (lo + hi)
        if expected_average_degree(weights, n, mid) < target_avg_degree:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def calibrate_lambda(n: int, beta: float, w0: float, target_avg_degree: float,
                     calibration_seed: int = CALIBRATION_SEED, sample_size: Optional[int] = None) -> float:
    """lambda giving the target mean degree under independent pair probabilities.

    Weights are a Pareto sample of size ``min(n, 10**6)`` from a dedicated
    calibration stream, so the answer is reproducible for a given seed.
    """
    pareto = ParetoParams(w0, beta)
    size = min(n, 10**6) if sample_size is None else sample_size
    w = sample_pareto(size, pareto, SeededStream(calibration_seed, 0))
    return calibrate_lambda_for_weights(w, n, target_avg_degree)


def mean_field_degree(w, lam: float, mean_weight: float) -> np.ndarray:
    """``lam * w * E[w]``, the first-order expected degree of a weight-w vertex."""
    return lam * np.asarray(w) * mean_weight


__all__ = [
    "GirgParams", "generate_girg", "generate_chung_lu", "calibrate_lambda",
    "calibrate_lambda_for_weights", "expected_average_degree", "girg_edges",
    "girg_edges_reference", "sample_weights", "sample_positions",
]
