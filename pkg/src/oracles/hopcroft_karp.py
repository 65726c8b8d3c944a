"""
Hopcroft-Karp - maximum matching on bipartite graphs by shortest augmenting paths
"""

from collections import deque
from typing import Deque, Dict, List, Optional, Tuple

from ..exceptions import DomainError, NotBipartiteError
from ..graphs import Bipartition, Graph, bipartition, odd_cycle
from ..utils.logger import get_logger

INT_MAX = 10000000000000


class HopcroftKarp:
    """
    Maximum cardinality matching between left vertices 0..n_left-1 and right vertices

    The constructor takes, for each left vertex, the list of right
    vertices it is joined to.
    """

    def __init__(self, graph_left: List[List[int]]):
        self.logger = get_logger("HopcroftKarp")
        self._graph_left = [sorted(set(row)) for row in graph_left]
        self._left = list(range(len(self._graph_left)))
        self._pair_left: Dict[int, int] = {}
        self._pair_right: Dict[int, int] = {}
        self._dist_left: Dict[int, int] = {}
        self._reference_distance = INT_MAX

    def hopcroft_karp(self) -> int:
        self._pair_left.clear()
        self._pair_right.clear()
        matchings = 0
        while self._bfs():
            for left in self._left:
                if left not in self._pair_left and self._dfs(left):
                    matchings += 1
        self.logger.debug(f"maximum matching has {matchings} edges")
        return matchings

    def _bfs(self) -> bool:
        queue: Deque[int] = deque()
        for left in self._left:
            if left not in self._pair_left:
                queue.append(left)
                self._dist_left[left] = 0
            else:
                self._dist_left[left] = INT_MAX
        self._reference_distance = INT_MAX
        while queue:
            left = queue.popleft()
            if self._dist_left[left] >= self._reference_distance:
                continue
            for right in self._graph_left[left]:
                if right not in self._pair_right:
                    if self._reference_distance == INT_MAX:
                        self._reference_distance = self._dist_left[left] + 1
                else:
                    other = self._pair_right[right]
                    if self._dist_left[other] == INT_MAX:
                        self._dist_left[other] = self._dist_left[left] + 1
                        queue.append(other)
        return self._reference_distance < INT_MAX

    def _dfs(self, root: int) -> bool:
        """Layered augmenting-path search from root, iterative so long paths do not recurse"""
        # frames of (left vertex, index of the next right neighbor to try)
        stack: List[Tuple[int, int]] = [(root, 0)]
        path: List[Tuple[int, int]] = []
        while stack:
            left, i = stack.pop()
            neighbors = self._graph_left[left]
            advanced = False
            while i < len(neighbors):
                right = neighbors[i]
                i += 1
                if right not in self._pair_right:
                    if self._reference_distance == self._dist_left[left] + 1:
                        path.append((left, right))
                        for l, r in path:
                            self._pair_left[l] = r
                            self._pair_right[r] = l
                        return True
                else:
                    other = self._pair_right[right]
                    if self._dist_left[other] == self._dist_left[left] + 1:
                        stack.append((left, i))
                        path.append((left, right))
                        stack.append((other, 0))
                        advanced = True
                        break
            if not advanced:
                self._dist_left[left] = INT_MAX
                if path and stack:
                    path.pop()
        return False


def bipartite_max_matching(g: Graph, b: Optional[Bipartition] = None) -> int:
    """
    Matching number of a bipartite graph

    Raises:
        NotBipartiteError: g has an odd cycle
        DomainError: b is given but is not a proper two-coloring
    """
    if b is None:
        b = bipartition(g)
        if b is None:
            raise NotBipartiteError(odd_cycle(g))
    elif not b.is_valid_for(g):
        raise DomainError("bipartition is not a proper two-coloring of the graph")

    left = b.u_vertices
    right = b.w_vertices
    left_pos = {v: i for i, v in enumerate(left)}
    right_pos = {v: i for i, v in enumerate(right)}
    graph_left: List[List[int]] = [[] for _ in left]
    for u, v in g.edges:
        if u in left_pos:
            graph_left[left_pos[u]].append(right_pos[v])
        else:
            graph_left[left_pos[v]].append(right_pos[u])
    return HopcroftKarp(graph_left).hopcroft_karp()
