"""Vertex weights and power-law exponent for graphs that come without weights."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import GraphInstance


@dataclass(frozen=True)
class WeightEstimate:
    weights: np.ndarray
    beta_hat: float
    w0_hat: float
    method: str


def estimate_weights_from_degrees(g: GraphInstance, d_min: int | None = None) -> WeightEstimate:
    """Use the degree as the weight; isolated vertices get the smallest positive degree.

    The expected degree is proportional to the weight, and the band test is
    invariant under a global weight scale, so the unknown constant drops out.
    ``beta_hat`` is the tail estimate when there are enough tail samples and
    NaN otherwise.
    """
    deg = g.degrees.astype(np.float64)
    if g.m == 0:
        raise ValueError("cannot estimate weights of an edgeless graph")
    w0_hat = float(deg[deg > 0].min())
    weights = np.where(deg > 0, deg, w0_hat)
    try:
        beta_hat = estimate_beta(deg[deg > 0].astype(np.int64), d_min or max(int(w0_hat), 1))
    except ValueError:
        beta_hat = float("nan")
    return WeightEstimate(weights, beta_hat, w0_hat, "degree")


def estimate_beta(degrees, d_min: int) -> float:
    """Discrete power-law exponent by the continuous approximation to the MLE.

    ``1 + m / sum(log(k_i / (d_min - 1/2)))`` over the ``m`` degrees ``>= d_min``.
    """
    k = np.asarray(degrees, dtype=np.float64)
    tail = k[k >= d_min]
    if tail.size < 100:
        raise ValueError(f"need at least 100 degrees >= {d_min}, got {tail.size}")
    logs = np.log(tail / (d_min - 0.5))
    if np.all(tail == tail[0]) or logs.sum() <= 0:
        raise ValueError("degree tail is degenerate; no exponent to fit")
    return float(1.0 + tail.size / logs.sum())
