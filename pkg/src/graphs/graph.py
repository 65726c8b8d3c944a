"""
Graph - immutable simple graph with a canonical directed-edge index

Edge k = (u, v) with u < v yields directed ids 2k (u -> v) and 2k + 1
(v -> u), so the reverse of a directed edge d is d ^ 1.
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import DomainError

U_SIDE = 0
W_SIDE = 1


def rev(d: int) -> int:
    """Reverse of a directed edge"""
    return d ^ 1


class Graph:
    """Undirected simple graph on vertices 0..n-1"""

    def __init__(self, n_vertices: int, edges: Iterable[Tuple[int, int]]):
        if n_vertices < 0:
            raise DomainError(f"vertex count must be nonnegative, got {n_vertices}")
        self.n_vertices = int(n_vertices)

        normalized: List[Tuple[int, int]] = []
        seen: Dict[Tuple[int, int], int] = {}
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise DomainError(f"edge ({u}, {v}) outside 0..{self.n_vertices - 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DomainError(f"duplicate edge {key}")
            seen[key] = len(normalized)
            normalized.append(key)

        self.edges: Tuple[Tuple[int, int], ...] = tuple(normalized)
        self._edge_index = seen

        m = len(self.edges)
        tail = np.empty(2 * m, dtype=np.int64)
        head = np.empty(2 * m, dtype=np.int64)
        adjacency: List[List[Tuple[int, int]]] = [[] for _ in range(self.n_vertices)]
        for k, (u, v) in enumerate(self.edges):
            tail[2 * k], head[2 * k] = u, v
            tail[2 * k + 1], head[2 * k + 1] = v, u
            adjacency[u].append((v, 2 * k))
            adjacency[v].append((u, 2 * k + 1))

        tail.setflags(write=False)
        head.setflags(write=False)
        self.tail = tail
        self.head = head
        # (neighbor, directed id vertex -> neighbor)
        self.adjacency: Tuple[Tuple[Tuple[int, int], ...], ...] = tuple(
            tuple(entries) for entries in adjacency
        )

    @classmethod
    def from_edges(cls, edges: Sequence[Tuple[int, int]]) -> "Graph":
        """Build a graph whose vertex count is max id + 1"""
        n = 1 + max((max(u, v) for u, v in edges), default=-1)
        return cls(n, edges)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_directed(self) -> int:
        return 2 * len(self.edges)

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.array([len(a) for a in self.adjacency], dtype=np.int64)
        deg.setflags(write=False)
        return deg

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n_vertices else 0

    def edge_id(self, u: int, v: int) -> int:
        return self._edge_index[(min(u, v), max(u, v))]

    def directed_id(self, u: int, v: int) -> int:
        """Directed id of u -> v"""
        k = self.edge_id(u, v)
        return 2 * k if u < v else 2 * k + 1

    def outgoing(self, v: int) -> List[int]:
        return [d for _, d in self.adjacency[v]]

    def incoming(self, v: int) -> List[int]:
        return [rev(d) for _, d in self.adjacency[v]]

    def neighbors(self, v: int) -> List[int]:
        return [w for w, _ in self.adjacency[v]]

    @cached_property
    def excluded_index(self) -> np.ndarray:
        """Row d = u -> v lists the ids w -> u, w != v, padded with n_directed

        Callers append one neutral entry to their message vector so the
        padding reads it.
        """
        width = max(self.max_degree - 1, 0)
        index = np.full((self.n_directed, width), self.n_directed, dtype=np.int64)
        for d in range(self.n_directed):
            row = neighbors_excluding(self, d)
            index[d, :len(row)] = row
        index.setflags(write=False)
        return index

    @cached_property
    def incoming_index(self) -> np.ndarray:
        """Row v lists the ids w -> v, padded with n_directed"""
        index = np.full((self.n_vertices, self.max_degree), self.n_directed, dtype=np.int64)
        for v in range(self.n_vertices):
            row = self.incoming(v)
            index[v, :len(row)] = row
        index.setflags(write=False)
        return index

    @cached_property
    def outgoing_index(self) -> np.ndarray:
        """Row v lists the ids v -> w, padded with n_directed"""
        index = np.full((self.n_vertices, self.max_degree), self.n_directed, dtype=np.int64)
        for v in range(self.n_vertices):
            row = self.outgoing(v)
            index[v, :len(row)] = row
        index.setflags(write=False)
        return index

    def to_edge_list(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n_vertices == other.n_vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n_vertices, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n_vertices={self.n_vertices}, n_edges={self.n_edges})"


@dataclass(frozen=True)
class Bipartition:
    """Two-coloring: side[v] is U_SIDE or W_SIDE"""

    side: Tuple[int, ...]

    @property
    def u_vertices(self) -> List[int]:
        return [v for v, s in enumerate(self.side) if s == U_SIDE]

    @property
    def w_vertices(self) -> List[int]:
        return [v for v, s in enumerate(self.side) if s == W_SIDE]

    def swapped(self) -> "Bipartition":
        return Bipartition(tuple(1 - s for s in self.side))

    def is_valid_for(self, g: Graph) -> bool:
        return len(self.side) == g.n_vertices and all(
            self.side[u] != self.side[v] for u, v in g.edges
        )


def neighbors_excluding(g: Graph, d: int) -> List[int]:
    """Directed edges w -> u for w in the neighborhood of u minus v, where d = u -> v"""
    u, v = int(g.tail[d]), int(g.head[d])
    return [rev(out) for w, out in g.adjacency[u] if w != v]


def _bfs_coloring(g: Graph) -> Tuple[List[int], List[int], Optional[Tuple[int, int]]]:
    color = [-1] * g.n_vertices
    parent = [-1] * g.n_vertices
    conflict: Optional[Tuple[int, int]] = None
    for root in range(g.n_vertices):
        if color[root] != -1:
            continue
        color[root] = U_SIDE
        queue = deque([root])
        while queue:
            a = queue.popleft()
            for b, _ in g.adjacency[a]:
                if color[b] == -1:
                    color[b] = 1 - color[a]
                    parent[b] = a
                    queue.append(b)
                elif color[b] == color[a] and conflict is None:
                    conflict = (a, b)
    return color, parent, conflict


def bipartition(g: Graph) -> Optional[Bipartition]:
    """BFS two-coloring with component roots on the U side, or None"""
    color, _, conflict = _bfs_coloring(g)
    if conflict is not None:
        return None
    return Bipartition(tuple(color))


def odd_cycle(g: Graph) -> Optional[List[int]]:
    """An odd cycle as a vertex list, or None when g is bipartite"""
    _, parent, conflict = _bfs_coloring(g)
    if conflict is None:
        return None
    a, b = conflict

    def to_root(v: int) -> List[int]:
        path = [v]
        while parent[path[-1]] != -1:
            path.append(parent[path[-1]])
        return path

    path_a, path_b = to_root(a), to_root(b)
    on_b = set(path_b)
    lca = next(v for v in path_a if v in on_b)
    head = path_a[:path_a.index(lca) + 1]
    tail = path_b[:path_b.index(lca)]
    return head + list(reversed(tail))


def is_forest(g: Graph) -> bool:
    """True when g has no cycle (union-find over the edges)"""
    parent = list(range(g.n_vertices))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True
