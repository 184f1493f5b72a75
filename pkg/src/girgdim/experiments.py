"""Experiment drivers shared by the CLI, the scripts and the acceptance suite."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .clustering import band_cc_plus, global_cc
from .dimension_test import DEFAULT_C
from .generators import GirgParams, calibrate_lambda, generate_girg
from .graph import WeightBand
from .oracles import decay_fit
from .rng_dist import INF


@dataclass(frozen=True)
class SweepRow:
    d: int
    cc_plus: Optional[float]
    s_size: int
    n_band: int
    global_cc: float
    flagged: bool


def sweep_decay(n: int, beta: float, ds: Sequence[int], *, norm: float = INF, w0: float = 1.0,
                avg_deg: float = 10.0, lam: Optional[float] = None, seed: int = 0,
                c: float = DEFAULT_C, w_c: Optional[float] = None) -> tuple[list[SweepRow], Optional[float]]:
    """Generate one GIRG per d and measure the band statistic at ``w_c`` (default ``w0``).

    Returns the rows and the least-squares slope of ``log(cc_plus)`` in d,
    or ``None`` when fewer than four rows are usable.  Rows with an
    undefined or zero statistic are flagged and left out of the fit.
    """
    if lam is None:
        lam = calibrate_lambda(n, beta, w0, avg_deg)
    band = WeightBand(w0 if w_c is None else w_c, c)
    rows = []
    for d in ds:
        g = generate_girg(GirgParams(n, d, beta, w0, lam, norm, seed))
        st = band_cc_plus(g, band)
        flagged = st.cc_plus is None or st.cc_plus <= 0
        rows.append(SweepRow(d, st.cc_plus, st.s_size, st.subgraph_n, global_cc(g), flagged))
    usable = [(r.d, r.cc_plus) for r in rows if not r.flagged]
    slope = decay_fit(usable) if len(usable) >= 4 else None
    return rows, slope


def global_decay_slope(rows: Sequence[SweepRow]) -> float:
    return decay_fit([(r.d, r.global_cc) for r in rows])


def pooled_decay(n: int, beta: float, ds: Sequence[int], seeds: Sequence[int], **kwargs
                 ) -> tuple[dict[int, float], Optional[float]]:
    """Band statistic per d pooled over several seeds, and its decay slope.

    Pooling weights each seed by its support size, which is the band
    statistic of the disjoint union of the replicas.  Useful when a single
    band holds only a few dozen supported vertices.
    """
    totals = {d: [0.0, 0] for d in ds}
    for seed in seeds:
        rows, _ = sweep_decay(n, beta, ds, seed=seed, **kwargs)
        for r in rows:
            if not r.flagged:
                totals[r.d][0] += r.cc_plus * r.s_size
                totals[r.d][1] += r.s_size
    pooled = {d: s / k for d, (s, k) in totals.items() if k > 0 and s > 0}
    slope = decay_fit(sorted(pooled.items())) if len(pooled) >= 4 else None
    return pooled, slope
