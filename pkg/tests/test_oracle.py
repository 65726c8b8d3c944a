"""
Tests for the brute-force and augmenting-path oracles
"""

import numpy as np
import pytest
from scipy.optimize import linprog

from src.analysis import matching_polynomial
from src.engines import f_all, smallest_fixed_point
from src.exceptions import CapExceededError, NotBipartiteError
from src.graphs import Graph, named
from src.oracles import (
    HopcroftKarp,
    bipartite_max_matching,
    enumerate_matchings,
    enumerate_pp_fixed_points,
    iter_matchings,
    nu_star_bruteforce,
    oracle_report,
    tau_bruteforce,
    tau_half_bruteforce,
)
from src.utils.halves import HalfInteger

from .conftest import connected_atlas, random_graphs


def lp_nu_star(g: Graph) -> float:
    """max sum x subject to vertex loads <= 1, by scipy's LP solver"""
    incidence = np.zeros((g.n_vertices, g.n_edges))
    for k, (u, v) in enumerate(g.edges):
        incidence[u, k] = incidence[v, k] = 1.0
    result = linprog(-np.ones(g.n_edges), A_ub=incidence, b_ub=np.ones(g.n_vertices),
                     bounds=[(0, 1)] * g.n_edges, method="highs")
    return -result.fun


def test_triangle_numbers(c3):
    assert enumerate_matchings(c3).nu == 1
    assert tau_bruteforce(c3) == 2
    assert nu_star_bruteforce(c3) == HalfInteger(3)
    assert tau_half_bruteforce(c3) == HalfInteger(3)


def test_odd_cycles_and_petersen():
    assert nu_star_bruteforce(named.cycle(5)) == HalfInteger(5)
    assert tau_bruteforce(named.petersen()) == 6
    assert enumerate_matchings(named.petersen()).nu == 5


def test_iter_matchings_lists_every_matching(c4):
    assert sorted(iter_matchings(c4)) == [(), (0,), (0, 2), (1,), (1, 3), (2,), (3,)]


@pytest.mark.parametrize("g", random_graphs(count=20), ids=repr)
def test_enumeration_matches_polynomial(g):
    enumeration = enumerate_matchings(g)
    assert enumeration.polynomial == matching_polynomial(g)
    assert enumeration.nu == enumeration.polynomial.degree


@pytest.mark.parametrize("g", random_graphs(count=20), ids=repr)
def test_half_integral_scan_agrees_with_lp(g):
    assert nu_star_bruteforce(g).value == pytest.approx(lp_nu_star(g), abs=1e-9)
    assert tau_half_bruteforce(g) == nu_star_bruteforce(g)


def test_hopcroft_karp_on_adjacency_lists():
    # left 0..2, right 0..2
    assert HopcroftKarp([[0, 1], [0], [0, 2]]).hopcroft_karp() == 3
    assert HopcroftKarp([[0], [0], [0]]).hopcroft_karp() == 1


def test_bipartite_max_matching():
    assert bipartite_max_matching(named.complete_bipartite(3, 3)) == 3
    assert bipartite_max_matching(named.star(5)) == 1
    assert bipartite_max_matching(named.path(6)) == 3


def test_bipartite_max_matching_rejects_odd_cycles(c3):
    with pytest.raises(NotBipartiteError) as excinfo:
        bipartite_max_matching(c3)
    assert len(excinfo.value.cycle) == 3


def test_caps_refuse_large_inputs():
    with pytest.raises(CapExceededError):
        nu_star_bruteforce(named.petersen())
    with pytest.raises(CapExceededError):
        enumerate_pp_fixed_points(named.cycle(9))


@pytest.mark.slow
@pytest.mark.parametrize("g", [g for g in connected_atlas() if g.n_edges <= 8], ids=repr)
def test_double_map_infimum_is_attained_by_the_fixed_point(g):
    scan = enumerate_pp_fixed_points(g)
    result = smallest_fixed_point(g)
    assert scan.minimum == 2 * nu_star_bruteforce(g).value
    assert int(f_all(g, result.I_Y).sum()) == scan.minimum


def test_double_map_scan_on_c3(c3):
    scan = enumerate_pp_fixed_points(c3)
    assert scan.minimum == 3
    assert any(np.all(I) for I, _ in scan.fixed_points)


def test_oracle_report_on_c3(c3):
    data = oracle_report(c3).to_dict()
    assert data['nu'] == 1
    assert data['tau'] == 2
    assert data['nu_star'] == "3/2"
    assert data['tau_star'] == "3/2"
    assert data['matching_polynomial'] == [1, 3]
    assert data['pp_minimum'] == 3
    assert data['method'] == "enumeration"
    assert data['notices'] == []


def test_oracle_report_falls_back_to_augmenting_paths():
    g = named.complete_bipartite(5, 6)
    report = oracle_report(g)
    assert report.method == "augmenting-path"
    assert report.nu == 5
    assert report.nu_star == HalfInteger(10)
    assert report.polynomial is None
    assert report.notices
