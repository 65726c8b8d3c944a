"""
Brute-Force Oracles - exhaustive scans for matching and cover numbers

These are deliberately naive backtracking scans, independent of the
message-passing solvers they are used to check. Every scan refuses
inputs above its cap instead of sampling.
"""

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from ..analysis.matching_polynomial import MatchingPolynomial
from ..config import get_setting
from ..engines.zero_temp import f_all, is_double_map_fixed
from ..exceptions import CapExceededError
from ..graphs import Graph, bipartition
from ..utils.halves import HalfInteger
from ..utils.logger import get_logger
from .hopcroft_karp import bipartite_max_matching

logger = get_logger("Oracle")


def _cap(key: str, default: int, override: Optional[int]) -> int:
    return int(override if override is not None else get_setting('oracle', key, default))


def iter_matchings(g: Graph) -> Iterator[Tuple[int, ...]]:
    """Every matching as a tuple of edge ids, by backtracking over edges in order"""
    used = [False] * g.n_vertices
    chosen: List[int] = []

    def visit(k: int) -> Iterator[Tuple[int, ...]]:
        if k == g.n_edges:
            yield tuple(chosen)
            return
        yield from visit(k + 1)
        u, v = g.edges[k]
        if not used[u] and not used[v]:
            used[u] = used[v] = True
            chosen.append(k)
            yield from visit(k + 1)
            chosen.pop()
            used[u] = used[v] = False

    yield from visit(0)


@dataclass
class MatchingEnumeration:
    """Counts of matchings by size and the matching number"""

    polynomial: MatchingPolynomial
    nu: int


def enumerate_matchings(g: Graph, cap: Optional[int] = None) -> MatchingEnumeration:
    cap = _cap('enumerate_matchings_cap', 24, cap)
    if g.n_edges > cap:
        raise CapExceededError("matching enumeration", g.n_edges, cap)
    counts: Dict[int, int] = {}
    for matching in iter_matchings(g):
        counts[len(matching)] = counts.get(len(matching), 0) + 1
    nu = max(counts)
    return MatchingEnumeration(
        polynomial=MatchingPolynomial(tuple(counts.get(k, 0) for k in range(nu + 1))),
        nu=nu,
    )


def nu_star_bruteforce(g: Graph, cap: Optional[int] = None) -> HalfInteger:
    """Max sum x over x in {0, 1/2, 1}^E inside FM(G)"""
    cap = _cap('nu_star_scan_cap', 12, cap)
    if g.n_edges > cap:
        raise CapExceededError("fractional matching scan", g.n_edges, cap)

    # loads and weights are kept doubled: x_e = w / 2, load <= 2
    load = [0] * g.n_vertices
    best = 0

    def visit(k: int, total: int) -> None:
        nonlocal best
        if k == g.n_edges:
            best = max(best, total)
            return
        u, v = g.edges[k]
        for w in (0, 1, 2):
            if load[u] + w > 2 or load[v] + w > 2:
                break
            load[u] += w
            load[v] += w
            visit(k + 1, total + w)
            load[u] -= w
            load[v] -= w

    visit(0, 0)
    return HalfInteger.from_twice(best)


def tau_bruteforce(g: Graph, cap: Optional[int] = None) -> int:
    """Vertex cover number by branching on an uncovered edge"""
    cap = _cap('tau_cap', 24, cap)
    if g.n_vertices > cap:
        raise CapExceededError("vertex cover scan", g.n_vertices, cap)

    in_cover = [False] * g.n_vertices
    best = g.n_vertices

    def visit(size: int) -> None:
        nonlocal best
        if size >= best:
            return
        edge = next(((u, v) for u, v in g.edges if not in_cover[u] and not in_cover[v]), None)
        if edge is None:
            best = size
            return
        for w in edge:
            in_cover[w] = True
            visit(size + 1)
            in_cover[w] = False

    visit(0)
    return best


def tau_half_bruteforce(g: Graph, cap: Optional[int] = None) -> HalfInteger:
    """Min sum y over y in {0, 1/2, 1}^V with y_u + y_v >= 1 on every edge"""
    cap = _cap('tau_half_cap', 16, cap)
    if g.n_vertices > cap:
        raise CapExceededError("half-integral cover scan", g.n_vertices, cap)

    earlier = [[w for w in g.neighbors(v) if w < v] for v in range(g.n_vertices)]
    twice = [0] * g.n_vertices
    best = 2 * g.n_vertices

    def visit(v: int, total: int) -> None:
        nonlocal best
        if total >= best:
            return
        if v == g.n_vertices:
            best = total
            return
        for t in (0, 1, 2):
            if all(twice[w] + t >= 2 for w in earlier[v]):
                twice[v] = t
                visit(v + 1, total + t)
        twice[v] = 0

    visit(0, 0)
    return HalfInteger.from_twice(best)


@dataclass
class DoubleMapScan:
    """All fixed points of the double max-product map with their sum F_v"""

    fixed_points: List[Tuple[np.ndarray, int]]

    @property
    def minimum(self) -> int:
        return min(total for _, total in self.fixed_points)


def enumerate_pp_fixed_points(g: Graph, cap: Optional[int] = None) -> DoubleMapScan:
    """Scan all 2^(2|E|) boolean message vectors for I = P(P(I))"""
    cap = _cap('pp_fixed_point_cap', 8, cap)
    if g.n_edges > cap:
        raise CapExceededError("double-map fixed point scan", g.n_edges, cap)
    found: List[Tuple[np.ndarray, int]] = []
    for bits in itertools.product((False, True), repeat=g.n_directed):
        I = np.array(bits, dtype=bool)
        if is_double_map_fixed(g, I):
            found.append((I, int(f_all(g, I).sum())))
    logger.debug(f"{len(found)} double-map fixed points among {2 ** g.n_directed} vectors")
    return DoubleMapScan(fixed_points=found)


@dataclass
class OracleReport:
    """Ground-truth numbers for one graph; fields left None were above their cap"""

    nu: Optional[int]
    nu_star: Optional[HalfInteger]
    method: str
    tau: Optional[int] = None
    tau_star: Optional[HalfInteger] = None
    polynomial: Optional[MatchingPolynomial] = None
    pp_minimum: Optional[int] = None
    notices: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            'nu': self.nu,
            'tau': self.tau,
            'nu_star': str(self.nu_star) if self.nu_star is not None else None,
            'tau_star': str(self.tau_star) if self.tau_star is not None else None,
            'matching_polynomial': list(self.polynomial.coefficients) if self.polynomial else None,
            'pp_minimum': self.pp_minimum,
            'method': self.method,
            'notices': list(self.notices),
        }


def oracle_report(g: Graph) -> OracleReport:
    """Run every oracle that fits its cap; skipped ones are named in notices"""
    report = OracleReport(nu=None, nu_star=None, method="enumeration")
    try:
        enumeration = enumerate_matchings(g)
        report.nu, report.polynomial = enumeration.nu, enumeration.polynomial
    except CapExceededError as e:
        report.notices.append(str(e))
        if bipartition(g) is not None:
            report.nu = bipartite_max_matching(g)
            report.method = "augmenting-path"

    try:
        report.nu_star = nu_star_bruteforce(g)
    except CapExceededError as e:
        report.notices.append(str(e))
        if report.nu is not None and bipartition(g) is not None:
            # bipartite: the fractional and integral matching numbers agree
            report.nu_star = HalfInteger.from_twice(2 * report.nu)

    try:
        report.tau = tau_bruteforce(g)
    except CapExceededError as e:
        report.notices.append(str(e))

    try:
        report.tau_star = tau_half_bruteforce(g)
    except CapExceededError as e:
        report.notices.append(str(e))

    try:
        report.pp_minimum = enumerate_pp_fixed_points(g).minimum
    except CapExceededError as e:
        report.notices.append(str(e))
    return report
