"""
Named graphs used by examples, tests and golden files
"""

from itertools import product

from .graph import Graph


def cycle(n: int) -> Graph:
    """C_n on vertices 0..n-1"""
    if n < 3:
        raise ValueError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    """Path with n vertices (n - 1 edges)"""
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star(k: int) -> Graph:
    """K_{1,k} with center 0"""
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b}: side one is 0..a-1, side two is a..a+b-1"""
    return Graph(a + b, [(i, a + j) for i, j in product(range(a), range(b))])


def complete(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def petersen() -> Graph:
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i - (i + 5)"""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph(10, outer + inner + spokes)
