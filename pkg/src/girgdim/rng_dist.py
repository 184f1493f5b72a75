"""Seeded sampling for Pareto weights, chi_p variates and L_p unit balls.

The chi_p(1) law has density ``gamma * exp(-|x|^p / 2)``.  Its p-th absolute
power ``|X|^p`` is Gamma distributed with shape ``1/p`` and scale 2 (this is
what the moment generating function ``(1 - 2 lam)^(-1/p)`` pins down), so we
sample a Gamma variate with Marsaglia-Tsang and map it back with a random sign.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

INF = math.inf
"""Distinguished norm order for the maximum norm. Compare with ``p == INF``."""

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SeededStream:
    """A reproducible random substream keyed by ``(seed, stream_id)``.

    Backed by the counter-based Philox generator, so the variates depend only
    on the key and not on the order in which streams are created.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        if not (0 <= self.seed <= _MASK64 and 0 <= self.stream_id <= _MASK64):
            raise ValueError("seed and stream_id must be 64-bit unsigned integers")

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(key=(self.stream_id << 64) | self.seed))

    def substream(self, stream_id: int) -> "SeededStream":
        return SeededStream(self.seed, stream_id)


RngLike = Union[SeededStream, np.random.Generator, int, None]


def as_generator(rng: RngLike) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, SeededStream):
        return rng.generator()
    return SeededStream(0 if rng is None else int(rng)).generator()


@dataclass(frozen=True)
class ParetoParams:
    w0: float
    beta: float

    def __post_init__(self):
        if not self.w0 > 0:
            raise ValueError(f"w0 must be positive, got {self.w0}")
        if not self.beta > 2:
            raise ValueError(f"beta must exceed 2 for a finite mean weight, got {self.beta}")

    @property
    def mean(self) -> float:
        return self.w0 * (self.beta - 1) / (self.beta - 2)


@dataclass(frozen=True)
class ChiPParams:
    p: float
    d: int

    def __post_init__(self):
        check_norm_order(self.p)
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")


def check_norm_order(p: float) -> float:
    if not (p == INF or p >= 1):
        raise ValueError(f"norm order must be >= 1 or INF, got {p}")
    return p


# -- special functions --------------------------------------------------------

# Lanczos coefficients for g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def lanczos_gamma(x: float) -> float:
    """Gamma function by the Lanczos approximation (reflection below 1/2)."""
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * lanczos_gamma(1.0 - x))
    x -= 1.0
    a = _LANCZOS_COEF[0]
    t = x + _LANCZOS_G + 0.5
    for i in range(1, len(_LANCZOS_COEF)):
        a += _LANCZOS_COEF[i] / (x + i)
    return math.sqrt(2 * math.pi) * t ** (x + 0.5) * math.exp(-t) * a


# -- Pareto ---------------------------------------------------------------------

def pareto_inverse_cdf(u, params: ParetoParams):
    """Invert ``Pr[w <= x] = 1 - (x/w0)^(1-beta)``. Accepts scalars or arrays."""
    u_arr = np.asarray(u, dtype=float)
    if np.any((u_arr < 0) | (u_arr >= 1)) or np.any(np.isnan(u_arr)):
        raise ValueError("u must lie in [0, 1)")
    w = params.w0 * (1.0 - u_arr) ** (1.0 / (1.0 - params.beta))
    return float(w) if w.ndim == 0 else w


def sample_pareto(n: int, params: ParetoParams, rng: RngLike) -> np.ndarray:
    u = as_generator(rng).random(n)
    return pareto_inverse_cdf(u, params)


def pareto_tail(x, params: ParetoParams):
    """``Pr[w >= x]``."""
    x = np.maximum(np.asarray(x, dtype=float), params.w0)
    return (x / params.w0) ** (1.0 - params.beta)


# -- chi_p family ---------------------------------------------------------------

def chi_p_normalizer(p: float) -> float:
    """Normalizing constant ``p / (2^(1/p + 1) Gamma(1/p))`` of the chi_p density."""
    if not p >= 1 or p == INF:
        raise ValueError(f"chi_p normalizer needs finite p >= 1, got {p}")
    return p / (2.0 ** (1.0 / p + 1.0) * lanczos_gamma(1.0 / p))


def chi_p_density(x, p: float):
    return chi_p_normalizer(p) * np.exp(-0.5 * np.abs(x) ** p)


def standard_gamma(shape: float, rng: RngLike, size=None) -> np.ndarray:
    """Marsaglia-Tsang squeeze sampler, boosted for ``shape < 1``."""
    if not shape > 0:
        raise ValueError("shape must be positive")
    gen = as_generator(rng)
    n = 1 if size is None else int(np.prod(size))
    if shape < 1:
        g = standard_gamma(shape + 1.0, gen, n)
        # G(a) = G(a + 1) * U^(1/a)
        out = g * gen.random(n) ** (1.0 / shape)
    else:
        dd = shape - 1.0 / 3.0
        c = 1.0 / math.sqrt(9.0 * dd)
        out = np.empty(n)
        todo = np.arange(n)
        while todo.size:
            m = todo.size
            x = gen.standard_normal(m)
            v = (1.0 + c * x) ** 3
            u = gen.random(m)
            ok = v > 0
            with np.errstate(invalid="ignore", divide="ignore"):
                logv = np.log(np.where(ok, v, 1.0))
                accept = ok & (
                    (u < 1.0 - 0.0331 * x**4)
                    | (np.log(u) < 0.5 * x * x + dd * (1.0 - v + logv))
                )
            out[todo[accept]] = dd * v[accept]
            todo = todo[~accept]
    if size is None:
        return float(out[0])
    return out.reshape(size)


def sample_chi_p_scalar(p: float, rng: RngLike, size=None):
    """Draw from chi_p(1): ``sign * (2 G)^(1/p)`` with ``G ~ Gamma(1/p, 1)``."""
    if not p >= 1 or p == INF:
        raise ValueError(f"chi_p sampling needs finite p >= 1, got {p}")
    gen = as_generator(rng)
    n = 1 if size is None else int(np.prod(size))
    g = 2.0 * standard_gamma(1.0 / p, gen, n)
    sign = np.where(gen.random(n) < 0.5, -1.0, 1.0)
    x = sign * g ** (1.0 / p)
    if size is None:
        return float(x[0])
    return x.reshape(size)


def sample_chi_p_power(p: float, d: int, rng: RngLike, size=None):
    """Draw ``Z = sum_i |X_i|^p`` with ``X_i ~ chi_p(1)`` i.i.d., i.e. chi^p(d)."""
    ChiPParams(p, d)
    if p == INF:
        raise ValueError("chi^p is undefined for the maximum norm")
    n = 1 if size is None else int(np.prod(size))
    x = sample_chi_p_scalar(p, rng, (n, d))
    z = np.sum(np.abs(x) ** p, axis=1)
    if size is None:
        return float(z[0])
    return z.reshape(size)


def chi_p_mgf(p: float, lam: float) -> float:
    """Moment generating function of chi^p(1), ``(1 - 2 lam)^(-1/p)``."""
    check_norm_order(p)
    if lam >= 0.5:
        raise ValueError(f"MGF diverges for lambda >= 1/2, got {lam}")
    return (1.0 - 2.0 * lam) ** (-1.0 / p)


def chi_p_tail_bound(p: float, d: int, epsilon: float) -> float:
    """Two-sided relative deviation bound ``2 exp(-2 delta d / p)``.

    ``delta`` solves ``epsilon = 2 (sqrt(2 delta) + delta)``.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    ChiPParams(p, d)
    s = -1.0 + math.sqrt(1.0 + epsilon)
    delta = 0.5 * s * s
    return 2.0 * math.exp(-2.0 * delta * d / p)


# -- L_p unit ball ----------------------------------------------------------------

def lp_norm(x: np.ndarray, p: float, axis=-1) -> np.ndarray:
    x = np.abs(x)
    if p == INF:
        return np.max(x, axis=axis)
    return np.sum(x**p, axis=axis) ** (1.0 / p)


def sample_unit_ball(d: int, p: float, rng: RngLike, size=None) -> np.ndarray:
    """Uniform point(s) in the L_p unit ball of R^d.

    Direction from a normalized chi_p(d) vector, radius ``U^(1/d)``.  Returns
    shape ``(d,)`` or ``(size, d)``.
    """
    check_norm_order(p)
    if d < 1:
        raise ValueError("d must be >= 1")
    gen = as_generator(rng)
    n = 1 if size is None else int(size)
    if p == INF:
        pts = gen.uniform(-1.0, 1.0, (n, d))
    else:
        z = sample_chi_p_scalar(p, gen, (n, d))
        r = gen.random(n) ** (1.0 / d)
        pts = z / lp_norm(z, p)[:, None] * r[:, None]
    return pts[0] if size is None else pts
