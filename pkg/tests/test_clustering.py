from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from girgdim.clustering import band_cc_plus, global_cc, local_cc, local_cc_all, triangles_per_vertex
from girgdim.graph import WeightBand, induced_band_subgraph
from girgdim.oracles import brute_force_global_cc, global_cc_exact

from conftest import make_graph
from test_graph import random_graphs


def test_local_cc_examples(triangle, path3):
    assert local_cc(triangle, 0) == 1.0
    assert local_cc(path3, 1) == 0.0
    assert local_cc(path3, 0) == 0.0


def test_global_cc_examples(triangle, k4_minus_edge):
    assert global_cc(triangle) == 1.0
    assert global_cc(k4_minus_edge) == pytest.approx(5 / 6, rel=1e-15)
    assert global_cc(make_graph(4, np.zeros((0, 2)))) == 0.0


def test_global_cc_rejects_empty():
    with pytest.raises(ValueError):
        global_cc(make_graph(0, np.zeros((0, 2))))


def test_band_triangle():
    g = make_graph(3, [(0, 1), (1, 2), (0, 2)], weights=[1.0, 1.0, 1.0])
    st_ = band_cc_plus(g, WeightBand(1.0, 1.15))
    assert st_.cc_plus == 1.0 and st_.s_size == 3


def test_band_path():
    g = make_graph(3, [(0, 1), (1, 2)], weights=[1.0, 1.0, 1.0])
    st_ = band_cc_plus(g, WeightBand(1.0, 1.15))
    assert st_.cc_plus == 0.0 and st_.s_size == 1


def test_band_excludes_heavy_hub():
    g = make_graph(4, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)], weights=[1, 1, 1, 5])
    st_ = band_cc_plus(g, WeightBand(1.0, 1.15))
    assert st_.cc_plus == 1.0 and st_.subgraph_n == 3 and st_.s_size == 3


def test_band_undefined_is_not_zero():
    g = make_graph(3, [(0, 1)], weights=[1.0, 1.0, 1.0])
    st_ = band_cc_plus(g, WeightBand(1.0, 1.15))
    assert st_.cc_plus is None and not st_.defined and st_.s_size == 0


@given(random_graphs())
def test_global_cc_matches_brute_force_exactly(g):
    if g.n == 0:
        return
    assert global_cc_exact(g) == brute_force_global_cc(g)
    assert global_cc(g) == pytest.approx(float(brute_force_global_cc(g)), abs=1e-12)


@given(random_graphs(), st.data())
def test_adding_neighbour_edge_never_lowers_local_cc(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    nb = g.neighbors(v).tolist()
    if len(nb) < 2:
        return
    a, b = data.draw(st.sampled_from([(x, y) for x in nb for y in nb if x < y]))
    u, w = g.edges()
    g2 = make_graph(g.n, np.column_stack([np.append(u, a), np.append(w, b)]))
    assert local_cc(g2, v) >= local_cc(g, v)


@given(random_graphs(), st.floats(0.01, 100.0))
def test_cc_plus_consistent_with_subgraph_global(g, scale):
    w = np.where(np.arange(g.n) % 3 == 0, 1.0, 1.05)
    g = g.with_weights(w)
    band = WeightBand(1.0, 1.1)
    res = band_cc_plus(g, band)
    sub, _ = induced_band_subgraph(g, band)
    if res.defined:
        assert res.cc_plus == pytest.approx(global_cc(sub) * sub.n / res.s_size, rel=1e-12)
    scaled = band_cc_plus(g.with_weights(w * scale), WeightBand(scale, 1.1))
    assert scaled.cc_plus == res.cc_plus and scaled.s_size == res.s_size


def test_triangles_kernel_matches_fraction_route(k4_minus_edge):
    assert triangles_per_vertex(k4_minus_edge).tolist() == [2, 2, 1, 1]
    assert global_cc_exact(k4_minus_edge) == Fraction(5, 6)
    assert local_cc_all(k4_minus_edge).tolist() == pytest.approx([2 / 3, 2 / 3, 1.0, 1.0])
