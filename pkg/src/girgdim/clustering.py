"""Local, global and weight-band clustering coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numba
import numpy as np

from .graph import GraphInstance, WeightBand, induced_band_subgraph, neighbor_pairs_adjacent_count


@numba.njit(cache=True, nogil=True)
def _triangles_per_vertex(indptr, indices):
    # Forward algorithm: orient every edge from lower to higher (degree, id)
    # rank and intersect out-lists. Each triangle is found exactly once.
    n = indptr.size - 1
    deg = indptr[1:] - indptr[:-1]
    out_ptr = np.zeros(n + 1, dtype=np.int64)
    for u in range(n):
        c = 0
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if deg[v] > deg[u] or (deg[v] == deg[u] and v > u):
                c += 1
        out_ptr[u + 1] = out_ptr[u] + c
    out = np.empty(out_ptr[n], dtype=np.int64)
    for u in range(n):
        pos = out_ptr[u]
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if deg[v] > deg[u] or (deg[v] == deg[u] and v > u):
                out[pos] = v
                pos += 1
    tri = np.zeros(n, dtype=np.int64)
    for u in range(n):
        a0 = out_ptr[u]
        a1 = out_ptr[u + 1]
        for k in range(a0, a1):
            v = out[k]
            i = a0
            j = out_ptr[v]
            j1 = out_ptr[v + 1]
            while i < a1 and j < j1:
                x = out[i]
                y = out[j]
                if x < y:
                    i += 1
                elif y < x:
                    j += 1
                else:
                    tri[u] += 1
                    tri[v] += 1
                    tri[x] += 1
                    i += 1
                    j += 1
    return tri


def triangles_per_vertex(g: GraphInstance) -> np.ndarray:
    """Number of triangles through each vertex."""
    if g.n == 0:
        return np.zeros(0, dtype=np.int64)
    return _triangles_per_vertex(g.indptr, g.indices)


def local_cc_all(g: GraphInstance) -> np.ndarray:
    """Local clustering coefficient of every vertex (0 below degree 2)."""
    tri = triangles_per_vertex(g)
    deg = g.degrees
    pairs = deg * (deg - 1) / 2.0
    out = np.zeros(g.n)
    ok = deg >= 2
    out[ok] = tri[ok] / pairs[ok]
    return out


def local_cc(g: GraphInstance, v: int) -> float:
    k = g.degree(v)
    if k < 2:
        return 0.0
    return neighbor_pairs_adjacent_count(g, v) / (k * (k - 1) / 2)


def global_cc(g: GraphInstance) -> float:
    """Mean local clustering coefficient over all vertices."""
    if g.n == 0:
        raise ValueError("clustering coefficient of the empty graph is undefined")
    return float(np.mean(local_cc_all(g)))


@dataclass(frozen=True)
class BandStatistic:
    """Mean local clustering inside a weight band over vertices of band degree >= 2.

    ``cc_plus`` is ``None`` when no vertex qualifies; that is different from 0.
    """

    cc_plus: Optional[float]
    band: WeightBand
    s_size: int
    subgraph_n: int
    subgraph_m: int

    @property
    def defined(self) -> bool:
        return self.cc_plus is not None


def cc_plus(sub: GraphInstance) -> tuple[Optional[float], int]:
    """Mean local clustering over vertices with degree >= 2, and their count."""
    s = sub.degrees >= 2
    size = int(s.sum())
    if size == 0:
        return None, 0
    return float(np.mean(local_cc_all(sub)[s])), size


def band_cc_plus(g: GraphInstance, band: WeightBand) -> BandStatistic:
    sub, _ = induced_band_subgraph(g, band)
    value, size = cc_plus(sub)
    return BandStatistic(value, band, size, sub.n, sub.m)
