"""
Matching Polynomial - exact integer coefficients by edge deletion

P_G(z) = sum over matchings B of z^|B|, built from
P_G = P_{G-e} + z * P_{G-u-v} with subgraphs keyed by their edge bitmask.
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.special import logsumexp

from ..config import get_setting
from ..exceptions import CapExceededError, DomainError
from ..graphs import Graph
from ..utils.logger import get_logger


@dataclass(frozen=True)
class MatchingPolynomial:
    """c_k = number of matchings with k edges"""

    coefficients: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, z: float) -> float:
        return math.exp(self.log_value(z))

    def log_value(self, z: float) -> float:
        """ln P(z), stable for large z"""
        z = _positive(z)
        return float(logsumexp(self._log_terms(z)))

    def weights(self, z: float) -> np.ndarray:
        """Probability that a Gibbs-sampled matching has k edges"""
        z = _positive(z)
        terms = self._log_terms(z)
        return np.exp(terms - logsumexp(terms))

    def mean_size(self, z: float) -> float:
        """z P'(z) / P(z)"""
        w = self.weights(z)
        return float(np.dot(np.arange(len(w)), w))

    def _log_terms(self, z: float) -> np.ndarray:
        ln_z = math.log(z)
        return np.array([math.log(c) + k * ln_z if c else -np.inf
                         for k, c in enumerate(self.coefficients)])

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}z" if c != 1 else "z")
            else:
                parts.append(f"{c}z^{k}" if c != 1 else f"z^{k}")
        return " + ".join(parts)


def _positive(z: float) -> float:
    z = float(z)
    if not (z > 0.0) or not math.isfinite(z):
        raise DomainError(f"z must be a positive finite real, got {z}")
    return z


def _add(a: Tuple[int, ...], b: Tuple[int, ...], shift: int) -> Tuple[int, ...]:
    size = max(len(a), len(b) + shift)
    out = [0] * size
    for k, c in enumerate(a):
        out[k] += c
    for k, c in enumerate(b):
        out[k + shift] += c
    return tuple(out)


class MatchingCounter:
    """Memoized deletion recursion over edge subsets of one graph"""

    def __init__(self, graph: Graph, cap: Optional[int] = None):
        self.logger = get_logger("MatchingCounter")
        cap = int(cap if cap is not None else get_setting('bethe', 'matching_polynomial_cap', 30))
        if graph.n_edges > cap:
            raise CapExceededError("matching polynomial", graph.n_edges, cap)
        self.graph = graph
        self.full_mask = (1 << graph.n_edges) - 1

        # conflict[k]: edges sharing an endpoint with edge k (k included)
        self.conflict: List[int] = []
        for u, v in graph.edges:
            mask = 0
            for w in (u, v):
                for _, d in graph.adjacency[w]:
                    mask |= 1 << (d >> 1)
            self.conflict.append(mask)
        self._memo: Dict[int, Tuple[int, ...]] = {0: (1,)}

    def coefficients(self, mask: int) -> Tuple[int, ...]:
        stack = [mask]
        while stack:
            current = stack[-1]
            if current in self._memo:
                stack.pop()
                continue
            k = (current & -current).bit_length() - 1
            without = current & ~(1 << k)
            contracted = current & ~self.conflict[k]
            pending = [m for m in (without, contracted) if m not in self._memo]
            if pending:
                stack.extend(pending)
                continue
            self._memo[current] = _add(self._memo[without], self._memo[contracted], 1)
            stack.pop()
        return self._memo[mask]

    def polynomial(self) -> MatchingPolynomial:
        return MatchingPolynomial(_trim(self.coefficients(self.full_mask)))

    def without_endpoints(self, k: int) -> MatchingPolynomial:
        """P of G minus both endpoints of edge k"""
        return MatchingPolynomial(_trim(self.coefficients(self.full_mask & ~self.conflict[k])))


def _trim(coefficients: Tuple[int, ...]) -> Tuple[int, ...]:
    end = len(coefficients)
    while end > 1 and coefficients[end - 1] == 0:
        end -= 1
    return coefficients[:end]


def matching_polynomial(g: Graph, cap: Optional[int] = None) -> MatchingPolynomial:
    """Exact matching polynomial; refuses graphs above the edge cap"""
    return MatchingCounter(g, cap).polynomial()
