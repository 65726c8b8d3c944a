"""
Tests for the zero-temperature solver, half-integral covers and bipartite covers
"""

import math

import networkx as nx
import numpy as np
import pytest

from src.engines import (
    ZeroTempSolver,
    bipartite_cover,
    d_extended_sum,
    ext_Q,
    ext_R,
    f_all,
    fp0_check,
    half_cover,
    is_double_map_fixed,
    nu_star,
    p_map,
    rounded_cover,
    smallest_fixed_point,
)
from src.engines.zero_temp import _w_iteration
from src.exceptions import ContractViolation, DomainError
from src.graphs import Bipartition, Graph, bipartition, named
from src.oracles import bipartite_max_matching, nu_star_bruteforce, tau_bruteforce
from src.utils.halves import HalfInteger

from .conftest import from_networkx, full_corpus, random_bipartite


def test_extended_maps_handle_infinity(p3):
    Y = np.array([np.inf, 0.0, 0.0, 0.0])
    R = ext_R(p3, Y)
    # 1 -> 2 excludes the infinite 0 -> 1 message
    assert R[p3.directed_id(1, 2)] == 0.0
    assert R[p3.directed_id(0, 1)] == 1.0

    Q = ext_Q(p3, np.zeros(p3.n_directed))
    assert np.all(np.isinf(Q))


def test_p_map_examples(c3, p3):
    assert np.array_equal(p_map(c3, np.zeros(6, dtype=bool)), np.ones(6, dtype=bool))
    assert np.array_equal(p_map(c3, np.ones(6, dtype=bool)), np.zeros(6, dtype=bool))
    # leaves have no other neighbor, so their messages are always on
    out = p_map(p3, np.ones(4, dtype=bool))
    assert out[p3.directed_id(0, 1)] and out[p3.directed_id(2, 1)]
    assert not out[p3.directed_id(1, 0)] and not out[p3.directed_id(1, 2)]


def test_c3_smallest_fixed_point(c3):
    result = smallest_fixed_point(c3)
    assert result.certified
    assert np.all(result.I_Y)
    assert np.array_equal(f_all(c3, result.I_Y), [1, 1, 1])
    assert result.cover.value == HalfInteger(3)
    assert str(result.cover.value) == "3/2"


def test_p3_messages_and_cover(p3):
    result = smallest_fixed_point(p3)
    assert result.certified
    assert np.isinf(result.Y[p3.directed_id(0, 1)])
    assert np.isinf(result.Y[p3.directed_id(2, 1)])
    assert result.Y[p3.directed_id(1, 0)] == pytest.approx(1.0)
    assert result.Y[p3.directed_id(1, 2)] == pytest.approx(1.0)
    assert np.array_equal(result.cover.y, [0.0, 1.0, 0.0])


def test_c4_cover_is_all_halves(c4):
    result = smallest_fixed_point(c4)
    assert result.certified
    assert np.array_equal(result.cover.y, [0.5] * 4)
    assert result.cover.value == HalfInteger(4)


def test_petersen_nu_star():
    assert nu_star(named.petersen()) == HalfInteger(10)


def test_single_edge():
    assert nu_star(Graph(2, [(0, 1)])) == HalfInteger(2)


def test_half_cover_requires_a_double_map_fixed_point(c3):
    I = np.array([1, 0, 0, 0, 0, 0], dtype=bool)
    assert not is_double_map_fixed(c3, I)
    with pytest.raises(ContractViolation):
        half_cover(c3, I)


def test_solver_rejects_small_divergence_bound(c3):
    with pytest.raises(DomainError):
        ZeroTempSolver(c3).iterate(1.0, 10)


@pytest.mark.slow
@pytest.mark.parametrize("g", full_corpus(), ids=repr)
def test_nu_star_matches_bruteforce(g):
    result = smallest_fixed_point(g)
    assert result.certified, result.diagnostics
    assert result.cover.is_feasible(g)
    if g.n_edges <= 12:
        assert result.cover.value == nu_star_bruteforce(g)
    assert all(result.fp0_ok)
    assert d_extended_sum(g, result.Y) == pytest.approx(float(f_all(g, result.I_Y).sum()))


@pytest.mark.slow
@pytest.mark.parametrize("g", [g for g in full_corpus() if g.n_vertices <= 24], ids=repr)
def test_rounded_cover_is_a_two_approximation(g):
    result = smallest_fixed_point(g)
    rounded = rounded_cover(result.cover)
    assert rounded.is_feasible(g)
    tau = tau_bruteforce(g)
    assert rounded.size <= 2 * tau
    assert result.cover.value.value <= tau


@pytest.mark.parametrize("g", [named.cycle(3), named.cycle(5), named.path(4), named.petersen()], ids=repr)
def test_w_iteration_from_the_fixed_point_indicator(g):
    result = smallest_fixed_point(g)
    history = _w_iteration(g, result.I_Y, rounds=20)
    for previous, current in zip(history, history[1:]):
        assert np.all(current >= previous)
        assert np.array_equal(np.isinf(current), result.I_Y)


def test_fp0_holds_on_c5():
    g = named.cycle(5)
    result = smallest_fixed_point(g)
    assert fp0_check(g, result.Y) == (True, True)


@pytest.mark.parametrize("g", [named.cycle(4), named.cycle(6), Graph(2, [(0, 1)]),
                               named.complete_bipartite(3, 3), named.star(4), named.path(5)],
                         ids=repr)
def test_bipartite_cover_on_named_graphs(g):
    b = bipartition(g)
    result = smallest_fixed_point(g)
    cover = bipartite_cover(g, b, result.I_Y)
    assert cover.is_feasible(g)
    assert cover.size == bipartite_max_matching(g)


def test_c4_bipartite_cover_has_two_vertices(c4):
    result = smallest_fixed_point(c4)
    cover = bipartite_cover(c4, bipartition(c4), result.I_Y)
    assert cover.size == 2
    assert cover.vertices in ([0, 2], [1, 3])


@pytest.mark.slow
@pytest.mark.parametrize("g", random_bipartite(), ids=repr)
def test_bipartite_cover_matches_augmenting_paths(g):
    b = bipartition(g)
    result = smallest_fixed_point(g)
    cover = bipartite_cover(g, b, result.I_Y)
    assert cover.is_feasible(g)
    assert cover.size == bipartite_max_matching(g, b)


def test_bipartite_cover_rejects_a_bad_coloring(c4):
    result = smallest_fixed_point(c4)
    with pytest.raises(DomainError):
        bipartite_cover(c4, Bipartition((0, 0, 1, 1)), result.I_Y)


def test_isolated_vertices_are_rejected():
    g = Graph(3, [(0, 1)])
    with pytest.raises(DomainError, match="isolated vertex 2"):
        ZeroTempSolver(g)
    with pytest.raises(DomainError):
        nu_star(g)


@pytest.mark.parametrize("g", [named.cycle(3), named.petersen(), named.star(100)], ids=repr)
def test_default_divergence_bound(g):
    expected = max(1e6, float(g.n_vertices ** 2 * g.max_degree))
    assert ZeroTempSolver(g).default_bound() == expected


def test_growing_entries_are_promoted_early(c3):
    result = smallest_fixed_point(c3)
    assert result.growth_threshold == pytest.approx(1000.0)
    assert 1000 < result.rounds <= 1010
    assert result.attempts == 1


def test_bound_alone_needs_more_rounds_on_c3(c3):
    result = ZeroTempSolver(c3).iterate(1e6, 5000, growth_threshold=math.inf)
    assert not result.stationary
    assert not np.any(result.I_Y)
    assert "not stationary after 5000 rounds" in result.diagnostics


@pytest.mark.slow
def test_bipartite_cover_on_a_larger_random_graph():
    h = nx.bipartite.random_graph(60, 60, 0.15, seed=3)
    h.remove_nodes_from([v for v in list(h.nodes) if h.degree(v) == 0])
    g = from_networkx(h)
    result = smallest_fixed_point(g)
    assert result.certified, result.diagnostics
    cover = bipartite_cover(g, bipartition(g), result.I_Y)
    assert cover.is_feasible(g)
    assert cover.size == bipartite_max_matching(g)
