"""Immutable undirected simple graphs in CSR layout, plus weight bands."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

MAX_BAND_RATIO = 2.0 / np.sqrt(3.0)


@dataclass(frozen=True)
class WeightBand:
    """Closed weight interval ``[w_c, c * w_c]``."""

    w_c: float
    c: float

    def __post_init__(self):
        if not self.w_c > 0:
            raise ValueError(f"w_c must be positive, got {self.w_c}")
        if not 1.0 < self.c:
            raise ValueError(f"band ratio c must exceed 1, got {self.c}")

    @property
    def lo(self) -> float:
        return self.w_c

    @property
    def hi(self) -> float:
        return self.c * self.w_c

    def contains(self, w):
        w = np.asarray(w)
        return (w >= self.lo) & (w <= self.hi)


@dataclass(frozen=True, eq=False)
class GraphInstance:
    """Undirected simple graph.

    ``indptr``/``indices`` hold the sorted neighbour lists.  ``weights`` and
    ``positions`` are optional per-vertex arrays; ``meta`` records where the
    graph came from.  Use :meth:`from_edges` rather than the constructor.
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    weights: Optional[np.ndarray] = None
    positions: Optional[np.ndarray] = None
    meta: dict = field(default_factory=dict)

    @classmethod
    def from_edges(cls, n, u, v, weights=None, positions=None, meta=None) -> "GraphInstance":
        """Build from endpoint arrays, dropping self-loops and duplicate edges.

        The number of dropped entries lands in ``meta['dropped_self_loops']``
        and ``meta['dropped_duplicates']``.
        """
        u = np.asarray(u, dtype=np.int64).ravel()
        v = np.asarray(v, dtype=np.int64).ravel()
        if u.shape != v.shape:
            raise ValueError("endpoint arrays differ in length")
        if u.size and (min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= n):
            raise ValueError("endpoint out of range")
        loops = u == v
        a = np.minimum(u[~loops], v[~loops])
        b = np.maximum(u[~loops], v[~loops])
        key = np.unique(a * n + b)
        a, b = key // n, key % n
        meta = dict(meta or {})
        meta.setdefault("dropped_self_loops", int(loops.sum()))
        meta.setdefault("dropped_duplicates", int((~loops).sum() - key.size))
        src = np.concatenate([a, b])
        dst = np.concatenate([b, a])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        if weights is not None:
            weights = np.asarray(weights, dtype=np.float64)
            if weights.shape != (n,):
                raise ValueError("weights must have one entry per vertex")
        if positions is not None:
            positions = np.asarray(positions, dtype=np.float64)
            if positions.shape[0] != n:
                raise ValueError("positions must have one row per vertex")
        return cls(int(n), indptr, dst.astype(np.int64), weights, positions, meta)

    # -- queries ------------------------------------------------------------

    @property
    def m(self) -> int:
        return int(self.indices.size // 2)

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def _check(self, v):
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range for n={self.n}")

    def degree(self, v: int) -> int:
        self._check(v)
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        self._check(v)
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < nb.size and nb[i] == v)

    def edges(self):
        """Edge endpoint arrays ``(u, v)`` with ``u < v``, lexicographically sorted."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        keep = src < self.indices
        return src[keep], self.indices[keep]

    def with_weights(self, weights, **meta) -> "GraphInstance":
        weights = np.asarray(weights, dtype=np.float64)
        if weights.shape != (self.n,):
            raise ValueError("weights must have one entry per vertex")
        return GraphInstance(self.n, self.indptr, self.indices, weights, self.positions, {**self.meta, **meta})

    def induced_subgraph(self, keep) -> tuple["GraphInstance", np.ndarray]:
        """Subgraph on a boolean mask (or id list); returns it and the kept ids."""
        keep = np.asarray(keep)
        if keep.dtype != bool:
            mask = np.zeros(self.n, dtype=bool)
            mask[keep] = True
            keep = mask
        ids = np.flatnonzero(keep)
        relabel = np.full(self.n, -1, dtype=np.int64)
        relabel[ids] = np.arange(ids.size)
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        sel = keep[src] & keep[self.indices]
        # rows stay sorted, so relabelled CSR can be assembled directly
        new_src = relabel[src[sel]]
        new_dst = relabel[self.indices[sel]]
        indptr = np.zeros(ids.size + 1, dtype=np.int64)
        np.cumsum(np.bincount(new_src, minlength=ids.size), out=indptr[1:])
        sub = GraphInstance(
            int(ids.size),
            indptr,
            new_dst,
            None if self.weights is None else self.weights[ids],
            None if self.positions is None else self.positions[ids],
            {"parent_n": self.n},
        )
        return sub, ids


def degree(g: GraphInstance, v: int) -> int:
    return g.degree(v)


def induced_band_subgraph(g: GraphInstance, band: WeightBand) -> tuple[GraphInstance, np.ndarray]:
    """Subgraph induced by vertices with weight in ``[w_c, c * w_c]``."""
    if g.weights is None:
        raise ValueError("graph carries no weights")
    return g.induced_subgraph(band.contains(g.weights))


def neighbor_pairs_adjacent_count(g: GraphInstance, v: int) -> int:
    """Number of adjacent unordered pairs among the neighbours of ``v``."""
    nb = g.neighbors(v)
    total = 0
    for i, s in enumerate(nb):
        others = g.indices[g.indptr[s]:g.indptr[s + 1]]
        # neighbours of s that are also neighbours of v and come after s
        total += np.intersect1d(others, nb[i + 1:], assume_unique=True).size
    return int(total)
