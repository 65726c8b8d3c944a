"""
Loop Series - exact correction Z = P_G(z) / exp(Phi^B(x(z); z)) as a sum over generalized loops

A generalized loop is a nonempty edge subset F in which no vertex has
degree exactly 1. Each contributes (-1)^|V(F)| prod_{v in V(F)} (d_F(v) - 1)
prod_{e in F} x_e / (1 - x_e), where V(F) is the set of vertices F touches.
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..config import get_setting
from ..engines.bp_engine import FractionalMatching
from ..exceptions import CapExceededError, DomainError
from ..graphs import Graph
from ..utils.logger import get_logger


@dataclass(frozen=True)
class LoopTerm:
    """One generalized loop and its contribution"""

    edges: Tuple[int, ...]
    contribution: float

    @property
    def size(self) -> int:
        return len(self.edges)

    def to_dict(self) -> Dict:
        return {'edges': list(self.edges), 'contribution': self.contribution}


@dataclass
class LoopSeriesResult:
    Z: float
    terms: List[LoopTerm]

    @property
    def ln_Z(self) -> float:
        return math.log(self.Z)

    def top_terms(self, n: int) -> List[LoopTerm]:
        """n largest terms by magnitude, ties in enumeration order"""
        return sorted(self.terms, key=lambda t: -abs(t.contribution))[:n]


class LoopEnumerator:
    """Depth-first scan over edges in index order, pruning stranded degree-1 vertices"""

    def __init__(self, graph: Graph, x: np.ndarray):
        self.logger = get_logger("LoopEnumerator")
        self.graph = graph
        self.ratio = x / (1.0 - x)
        self.last_edge = [-1] * graph.n_vertices
        for k, (u, v) in enumerate(graph.edges):
            self.last_edge[u] = k
            self.last_edge[v] = k

    def run(self) -> List[LoopTerm]:
        g = self.graph
        degree = [0] * g.n_vertices
        chosen: List[int] = []
        terms: List[LoopTerm] = []

        def closes_badly(k: int) -> bool:
            return any(self.last_edge[w] == k and degree[w] == 1 for w in g.edges[k])

        def visit(k: int) -> None:
            if k == g.n_edges:
                if chosen:
                    terms.append(self._term(tuple(chosen), degree))
                return
            u, v = g.edges[k]
            # exclude before include
            if not closes_badly(k):
                visit(k + 1)
            degree[u] += 1
            degree[v] += 1
            chosen.append(k)
            if not closes_badly(k):
                visit(k + 1)
            chosen.pop()
            degree[u] -= 1
            degree[v] -= 1

        visit(0)
        self.logger.debug(f"{len(terms)} generalized loops on {g.n_edges} edges")
        return terms

    def _term(self, edges: Tuple[int, ...], degree: List[int]) -> LoopTerm:
        touched = [d for d in degree if d > 0]
        value = -1.0 if len(touched) % 2 else 1.0
        for d in touched:
            value *= d - 1
        for k in edges:
            value *= self.ratio[k]
        return LoopTerm(edges=edges, contribution=value)


def loop_series(g: Graph, x, max_edges: Optional[int] = None) -> LoopSeriesResult:
    """
    Exact loop-series value Z for edge weights x

    Raises:
        CapExceededError: more edges than max_edges
        DomainError: some x_e is not strictly inside (0, 1)
    """
    cap = int(max_edges if max_edges is not None else get_setting('bethe', 'loop_series_cap', 24))
    if g.n_edges > cap:
        raise CapExceededError("loop series", g.n_edges, cap)
    if isinstance(x, FractionalMatching):
        x = x.x
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n_edges,) or np.any(x <= 0.0) or np.any(x >= 1.0):
        raise DomainError("loop series needs every x_e strictly inside (0, 1)")

    terms = LoopEnumerator(g, x).run()
    Z = 1.0 + math.fsum(t.contribution for t in terms)
    return LoopSeriesResult(Z=Z, terms=terms)


def loop_partial_sums(terms: List[LoopTerm]) -> List[Tuple[int, float]]:
    """Running Z after adding all loops of each size, smallest loops first"""
    by_size: Dict[int, List[float]] = {}
    for term in terms:
        by_size.setdefault(term.size, []).append(term.contribution)
    partial: List[Tuple[int, float]] = []
    collected: List[float] = []
    for size in sorted(by_size):
        collected.extend(by_size[size])
        partial.append((size, 1.0 + math.fsum(collected)))
    return partial
