"""Torus geometry: circle metric, L_p torus distances, ball volumes, thresholds."""
from __future__ import annotations

import math

import numpy as np

from .rng_dist import INF, check_norm_order, lanczos_gamma


def torus_point(coords) -> np.ndarray:
    """Coordinates reduced mod 1 into ``[0, 1)``."""
    x = np.mod(np.asarray(coords, dtype=np.float64), 1.0)
    # mod can return exactly 1.0 for tiny negative inputs
    x[x >= 1.0] = 0.0
    return x


def circle_distance(x, y):
    """``min(|x - y|, 1 - |x - y|)``; works elementwise on arrays."""
    diff = np.abs(np.asarray(x, dtype=float) - np.asarray(y, dtype=float))
    out = np.minimum(diff, 1.0 - diff)
    return float(out) if out.ndim == 0 else out


def torus_distance(a, b, norm: float):
    """L_p distance on the torus between points (or rows of point arrays)."""
    check_norm_order(norm)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape[-1] != b.shape[-1]:
        raise ValueError(f"dimension mismatch: {a.shape[-1]} vs {b.shape[-1]}")
    diff = np.abs(a - b)
    c = np.minimum(diff, 1.0 - diff)
    if norm == INF:
        out = np.max(c, axis=-1)
    elif norm == 1:
        out = np.sum(c, axis=-1)
    elif norm == 2:
        out = np.sqrt(np.sum(c * c, axis=-1))
    else:
        out = np.sum(c**norm, axis=-1) ** (1.0 / norm)
    return float(out) if np.ndim(out) == 0 else out


def torus_diameter(d: int, norm: float) -> float:
    """Largest possible torus distance in dimension ``d``."""
    check_norm_order(norm)
    if norm == INF:
        return 0.5
    return d ** (1.0 / norm) / 2.0


def lp_ball_volume(d: int, norm: float, r: float = 1.0) -> float:
    """Volume of the L_p ball of radius ``r`` in R^d.

    ``(2 Gamma(1/p + 1))^d / Gamma(d/p + 1) * r^d``, or ``(2r)^d`` for INF.
    """
    check_norm_order(norm)
    if d < 1:
        raise ValueError("d must be >= 1")
    if norm == INF:
        unit = 2.0**d
    else:
        unit = math.exp(d * math.log(2.0 * lanczos_gamma(1.0 / norm + 1.0)) - math.log(lanczos_gamma(d / norm + 1.0)))
    return unit * r**d


def connection_threshold(w_u, w_v, n: int, lam: float, d: int, norm: float):
    """Distance below which ``u`` and ``v`` connect.

    Chosen so the ball of that radius has volume ``lam w_u w_v / n``.  When
    that ball no longer fits in the torus (``lam w_u w_v >= n`` for INF, radius
    above 1/2 for finite p) the threshold is capped at the torus diameter,
    which makes the edge unconditional.  Vectorized over the weights.
    """
    check_norm_order(norm)
    if n < 1 or not lam > 0:
        raise ValueError("need n >= 1 and lambda > 0")
    mass = lam * np.asarray(w_u, dtype=float) * np.asarray(w_v, dtype=float) / n
    diam = torus_diameter(d, norm)
    if norm == INF:
        t = 0.5 * mass ** (1.0 / d)
        t = np.where(mass >= 1.0, diam, t)
    else:
        t = (mass / lp_ball_volume(d, norm)) ** (1.0 / d)
        t = np.where((t > 0.5) | (mass >= 1.0), diam, t)
    return float(t) if t.ndim == 0 else t


def is_unconditional(threshold, d: int, norm: float):
    return np.asarray(threshold) >= torus_diameter(d, norm)
