"""
Shared fixtures: named graphs, a small-graph corpus built with networkx,
and a helper that runs the command-line entry point in-process
"""

import os
import random
import sys
from typing import List

import networkx as nx
import pytest

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.graphs import Graph, named  # noqa: E402


def from_networkx(nx_graph: nx.Graph) -> Graph:
    """Relabel to 0..n-1 and drop self-loops"""
    relabeled = nx.convert_node_labels_to_integers(nx_graph)
    edges = [(u, v) for u, v in relabeled.edges() if u != v]
    return Graph(relabeled.number_of_nodes(), edges)


def connected_atlas() -> List[Graph]:
    """Every connected graph on 2..6 vertices"""
    return [
        from_networkx(h) for h in nx.graph_atlas_g()
        if 2 <= h.number_of_nodes() <= 6 and nx.is_connected(h)
    ]


def random_graphs(count: int = 40, seed: int = 7) -> List[Graph]:
    """G(n, m) samples with at most 12 edges and no isolated vertices"""
    graphs: List[Graph] = []
    k = 0
    while len(graphs) < count:
        n = 4 + k % 6
        m = min(12, n * (n - 1) // 2, n - 1 + k % 5)
        h = nx.gnm_random_graph(n, m, seed=seed + k)
        k += 1
        h.remove_nodes_from([v for v in list(h.nodes) if h.degree(v) == 0])
        if h.number_of_edges():
            graphs.append(from_networkx(h))
    return graphs


def random_trees(count: int = 50, seed: int = 11) -> List[Graph]:
    """Uniform labelled trees with 2..13 vertices from Pruefer sequences"""
    rng = random.Random(seed)
    trees: List[Graph] = []
    for i in range(count):
        n = 2 + i % 12
        if n == 2:
            trees.append(Graph(2, [(0, 1)]))
            continue
        sequence = [rng.randrange(n) for _ in range(n - 2)]
        trees.append(from_networkx(nx.from_prufer_sequence(sequence)))
    return trees


def random_bipartite(count: int = 100, seed: int = 3) -> List[Graph]:
    """Random bipartite graphs on at most 14 vertices"""
    graphs: List[Graph] = []
    k = 0
    while len(graphs) < count:
        a, b = 2 + k % 6, 2 + (k // 6) % 6
        h = nx.bipartite.random_graph(a, b, 0.4, seed=seed + k)
        k += 1
        h.remove_nodes_from([v for v in list(h.nodes) if h.degree(v) == 0])
        if h.number_of_edges():
            graphs.append(from_networkx(h))
    return graphs


def named_corpus() -> List[Graph]:
    graphs = [named.cycle(n) for n in range(3, 9)]
    graphs += [named.path(n) for n in range(2, 8)]
    graphs += [named.star(k) for k in range(1, 6)]
    graphs += [named.complete(4), named.complete_bipartite(3, 3), named.petersen()]
    return graphs


def full_corpus() -> List[Graph]:
    return connected_atlas() + random_graphs() + named_corpus()


@pytest.fixture
def c3() -> Graph:
    return named.cycle(3)


@pytest.fixture
def c4() -> Graph:
    return named.cycle(4)


@pytest.fixture
def p3() -> Graph:
    return named.path(3)


@pytest.fixture
def k2() -> Graph:
    return Graph(2, [(0, 1)])


@pytest.fixture
def run_cli(tmp_path, capsys):
    """Run the CLI on a graph; returns (exit code, stdout, stderr)"""
    import labp_solver

    def run(graph: Graph, *args: str):
        edge_file = tmp_path / "graph.txt"
        edge_file.write_text(graph.to_edge_list())
        code = labp_solver.main([args[0], str(edge_file), *args[1:]])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run
