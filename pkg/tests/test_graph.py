"""
Tests for graph construction, the edge-list parser and structural queries
"""

import io

import numpy as np
import pytest

from src.exceptions import DomainError, GraphParseError
from src.graphs import (
    Graph,
    bipartition,
    format_edge_list,
    is_forest,
    named,
    neighbors_excluding,
    odd_cycle,
    parse_edge_list,
    rev,
)


def test_directed_ids_pair_up():
    g = Graph(3, [(2, 0), (0, 1)])
    assert g.edges == ((0, 2), (0, 1))
    assert g.n_directed == 4
    assert g.directed_id(0, 2) == 0
    assert g.directed_id(2, 0) == 1
    for d in range(g.n_directed):
        assert rev(rev(d)) == d
        assert g.tail[d] == g.head[rev(d)]


def test_excluded_neighbors_skip_the_reverse_edge(c3):
    d = c3.directed_id(0, 1)
    incoming = neighbors_excluding(c3, d)
    assert incoming == [c3.directed_id(2, 0)]


def test_graph_rejects_bad_edges():
    with pytest.raises(DomainError):
        Graph(2, [(0, 0)])
    with pytest.raises(DomainError):
        Graph(2, [(0, 1), (1, 0)])
    with pytest.raises(DomainError):
        Graph(2, [(0, 2)])


def test_parse_comments_and_blank_lines():
    g = parse_edge_list("# triangle\n0 1\n\n1 2\n  2 0  \n")
    assert g == named.cycle(3)


def test_parse_accepts_binary_streams():
    g = parse_edge_list(io.BytesIO(b"0 1\n1 2\n"))
    assert g.n_vertices == 3
    assert g.n_edges == 2


@pytest.mark.parametrize("text,line", [
    ("0 1\n1 x\n", 2),
    ("0 1\n1 1\n", 2),
    ("0 1\n2 1\n1 0\n", 3),
    ("0 1 2\n", 1),
    ("-1 2\n", 1),
])
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(GraphParseError) as excinfo:
        parse_edge_list(text)
    assert excinfo.value.line_number == line
    assert f"line {line}" in str(excinfo.value)


def test_parse_rejects_sparse_ids_and_empty_input():
    with pytest.raises(GraphParseError, match="unused id"):
        parse_edge_list("0 2\n")
    with pytest.raises(GraphParseError, match="no edges"):
        parse_edge_list("# nothing\n")


def test_format_edge_list_parses_back():
    g = named.petersen()
    assert parse_edge_list(format_edge_list(g, comment="petersen")) == g


def test_bipartition_and_odd_cycle():
    b = bipartition(named.cycle(6))
    assert b is not None
    assert b.is_valid_for(named.cycle(6))
    assert b.swapped().is_valid_for(named.cycle(6))
    assert odd_cycle(named.cycle(6)) is None

    g = named.cycle(5)
    assert bipartition(g) is None
    cycle = odd_cycle(g)
    assert len(cycle) % 2 == 1
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        assert b in g.neighbors(a)


def test_is_forest():
    assert is_forest(named.path(5))
    assert is_forest(named.star(4))
    assert not is_forest(named.cycle(4))


def test_degrees():
    g = named.star(3)
    assert np.array_equal(g.degrees, [3, 1, 1, 1])
    assert g.max_degree == 3
