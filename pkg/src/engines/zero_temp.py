"""
Zero-Temperature Solver - exact fractional matching number via the z -> infinity limit

Messages live in [0, inf] with 1/0 = inf, 1/inf = 0 and empty sums 0.
The smallest fixed point of Q o R is reached by monotone iteration from
zero; entries that grow past a bound are promoted to inf and the
resulting indicator vector is certified against an annealed primal.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..config import get_setting, resolve_threads
from ..exceptions import CertificationError, ContractViolation, DomainError
from ..graphs import Bipartition, Graph
from ..utils.halves import HalfInteger
from ..utils.logger import get_logger
from .bp_engine import FractionalMatching, LABPEngine
from .kernels import RoundExecutor, exclusion_sums, incoming_sums, outgoing_sums

logger = get_logger("ZeroTemp")


@dataclass
class HalfIntegralCover:
    """Vertex weights in {0, 1/2, 1} stored as integers F_v = 2 y_v"""

    twice: np.ndarray

    @property
    def y(self) -> np.ndarray:
        return self.twice / 2.0

    @property
    def value(self) -> HalfInteger:
        return HalfInteger.from_twice(int(self.twice.sum()))

    def is_feasible(self, g: Graph) -> bool:
        if g.n_edges == 0:
            return True
        return bool(np.all(self.twice[g.tail[0::2]] + self.twice[g.head[0::2]] >= 2))


@dataclass
class VertexCover:
    """Integral vertex cover as one bit per vertex"""

    in_cover: np.ndarray

    @property
    def size(self) -> int:
        return int(np.count_nonzero(self.in_cover))

    @property
    def vertices(self) -> List[int]:
        return [int(v) for v in np.flatnonzero(self.in_cover)]

    def is_feasible(self, g: Graph) -> bool:
        if g.n_edges == 0:
            return True
        return bool(np.all(self.in_cover[g.tail[0::2]] | self.in_cover[g.head[0::2]]))


@dataclass
class FixedPointResult:
    """Smallest fixed point of Q o R with its certification status"""

    Y: np.ndarray
    I_Y: np.ndarray
    certified: bool
    rounds: int
    divergence_bound: float
    growth_threshold: float
    stationary: bool
    double_map_fixed: bool
    fp0_ok: Tuple[bool, bool] = (False, False)
    cover: Optional[HalfIntegralCover] = None
    certificate: Optional[object] = None
    attempts: int = 1
    diagnostics: List[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# Extended-arithmetic maps
# ---------------------------------------------------------------------------

def ext_R(g: Graph, Y: np.ndarray, executor: Optional[RoundExecutor] = None) -> np.ndarray:
    """out[u -> v] = 1 / (1 + sum of Y[w -> u], w != v); an infinite summand gives 0"""
    s = exclusion_sums(g, np.asarray(Y, dtype=float), executor)
    return 1.0 / (1.0 + s)


def ext_Q(g: Graph, X: np.ndarray, executor: Optional[RoundExecutor] = None) -> np.ndarray:
    """out[u -> v] = 1 / (sum of X[w -> u], w != v); a zero or empty sum gives inf"""
    s = exclusion_sums(g, np.asarray(X, dtype=float), executor)
    with np.errstate(divide='ignore'):
        return np.where(s > 0.0, 1.0 / np.where(s > 0.0, s, 1.0), np.inf)


def p_map(g: Graph, I: np.ndarray) -> np.ndarray:
    """Boolean max-product map: out[u -> v] = 1 iff no w != v sends w -> u"""
    counts = exclusion_sums(g, np.asarray(I, dtype=np.int64))
    return counts == 0


def f_all(g: Graph, I: np.ndarray) -> np.ndarray:
    """F_v = min(1, incoming ones) + max(0, 1 - outgoing ones) for every vertex"""
    I = np.asarray(I, dtype=np.int64)
    incoming = incoming_sums(g, I)
    outgoing = outgoing_sums(g, I)
    return np.minimum(1, incoming) + np.maximum(0, 1 - outgoing)


def f_v(g: Graph, I: np.ndarray, v: int) -> int:
    incoming = sum(int(I[d]) for d in g.incoming(v))
    outgoing = sum(int(I[d]) for d in g.outgoing(v))
    return min(1, incoming) + max(0, 1 - outgoing)


def is_double_map_fixed(g: Graph, I: np.ndarray) -> bool:
    I = np.asarray(I, dtype=bool)
    return bool(np.array_equal(I, p_map(g, p_map(g, I))))


def half_cover(g: Graph, I: np.ndarray) -> HalfIntegralCover:
    """
    Half-integral vertex cover y_v = F_v(I) / 2

    Raises:
        ContractViolation: I is not a fixed point of the double map
        CertificationError: the resulting cover leaves an edge uncovered
    """
    if not is_double_map_fixed(g, I):
        raise ContractViolation("half_cover requires I = P(P(I))")
    cover = HalfIntegralCover(twice=f_all(g, I))
    if not cover.is_feasible(g):
        raise CertificationError("F_v / 2 is not a fractional vertex cover")
    return cover


def rounded_cover(cover: HalfIntegralCover) -> VertexCover:
    """Round every positive weight up to 1 (2-approximate vertex cover)"""
    return VertexCover(in_cover=np.asarray(cover.twice) > 0)


def d_v_extended(g: Graph, Y: np.ndarray, v: int) -> float:
    """D_v on [0, inf]: 1 once an incoming entry is infinite"""
    incoming = [float(Y[d]) for d in g.incoming(v)]
    if any(math.isinf(y) for y in incoming):
        return 1.0
    s = math.fsum(incoming)
    return s / (1.0 + s)


def d_extended_sum(g: Graph, Y: np.ndarray) -> float:
    return math.fsum(d_v_extended(g, Y, v) for v in range(g.n_vertices))


def fp0_check(g: Graph, Y: np.ndarray) -> Tuple[bool, bool]:
    """(I^Y == P(I^X), I^X == P(I^Y)) with I^X[d] = 1 iff R(Y)[d] > 0"""
    I_Y = np.isinf(Y)
    I_X = ext_R(g, Y) > 0.0
    return (bool(np.array_equal(I_Y, p_map(g, I_X))),
            bool(np.array_equal(I_X, p_map(g, I_Y))))


def _bipartite_cover_for(g: Graph, b: Bipartition, I: np.ndarray) -> VertexCover:
    I = np.asarray(I, dtype=np.int64)
    incoming = incoming_sums(g, I)
    incoming_p = incoming_sums(g, p_map(g, I).astype(np.int64))
    side = np.asarray(b.side)
    in_cover = np.where(side == 0, incoming >= 1, incoming_p >= 2)
    return VertexCover(in_cover=in_cover)


def bipartite_cover(g: Graph, b: Bipartition, I: np.ndarray) -> VertexCover:
    """
    Integral minimum vertex cover V(I) of a bipartite graph

    Both labelings are evaluated; the smaller cover wins and ties keep
    the labeling that was passed in.

    Raises:
        DomainError: b is not a proper two-coloring of g
        CertificationError: a candidate is infeasible or its size differs from sum F_v / 2
    """
    if not b.is_valid_for(g):
        raise DomainError("bipartition is not a proper two-coloring of the graph")
    twice = int(f_all(g, I).sum())
    if twice % 2:
        raise CertificationError(f"sum of F_v is odd ({twice}) on a bipartite graph")

    best: Optional[VertexCover] = None
    for labeling in (b, b.swapped()):
        cover = _bipartite_cover_for(g, labeling, I)
        if not cover.is_feasible(g):
            raise CertificationError("V(I) leaves an edge uncovered")
        if cover.size != twice // 2:
            raise CertificationError(f"|V(I)| = {cover.size} but sum F_v / 2 = {twice // 2}")
        if best is None or cover.size < best.size:
            best = cover
    logger.debug(f"V(I) has {best.size} vertices")
    return best


def _w_iteration(g: Graph, I: np.ndarray, rounds: int) -> List[np.ndarray]:
    """Iterates W^k of Q o R started at inf on I and 0 elsewhere (test helper)"""
    W = np.where(np.asarray(I, dtype=bool), np.inf, 0.0)
    history = [W]
    for _ in range(rounds):
        W = ext_Q(g, ext_R(g, W))
        history.append(W)
    return history


# ---------------------------------------------------------------------------
# Solver
# ---------------------------------------------------------------------------

class ZeroTempSolver:
    """
    Smallest fixed point of Q o R, promote-and-certify

    An entry is promoted to inf once it passes the divergence bound, or
    earlier once it passes the square root of the bound while still
    growing, provided the promoted pattern I satisfies I = P(P(I)).

    Raises:
        DomainError: the graph has an isolated vertex
    """

    def __init__(self, graph: Graph, threads: Optional[int] = 1,
                 gap_tol: Optional[float] = None):
        self.logger = get_logger("ZeroTempSolver")
        isolated = np.flatnonzero(graph.degrees == 0)
        if isolated.size:
            raise DomainError(
                f"isolated vertex {int(isolated[0])} has no edge to cover"
            )
        self.graph = graph
        self.threads = threads
        self.gap_tol = float(gap_tol if gap_tol is not None
                             else get_setting('certificate', 'gap_tol', 0.25))
        self.stationarity_tol = float(get_setting('zero_temp', 'stationarity_tol', 1e-12))
        self.stable_rounds = int(get_setting('zero_temp', 'stable_rounds', 2))
        self._primal: Optional[FractionalMatching] = None

    def default_bound(self) -> float:
        g = self.graph
        floor = float(get_setting('zero_temp', 'divergence_floor', 1e6))
        return max(floor, float(g.n_vertices ** 2 * g.max_degree))

    def _promote_growing(self, Y: np.ndarray, Y_next: np.ndarray, threshold: float) -> np.ndarray:
        growing = np.isfinite(Y_next) & (Y_next > threshold) & (Y_next > Y + self.stationarity_tol)
        if not np.any(growing):
            return Y_next
        pattern = np.isinf(Y_next) | growing
        if not is_double_map_fixed(self.graph, pattern):
            return Y_next
        self.logger.debug(f"promoting {int(growing.sum())} growing entries past {threshold:g}")
        return np.where(pattern, np.inf, Y_next)

    def primal(self) -> FractionalMatching:
        """Annealed fractional matching used as the primal side of the certificate"""
        if self._primal is None:
            stop = int(get_setting('certificate', 'primal_ladder_stop_exponent', 6))
            tol = float(get_setting('certificate', 'primal_tol', 1e-10))
            ladder = [10.0 ** k for k in range(stop + 1)]
            with LABPEngine(self.graph, threads=self.threads) as engine:
                steps = engine.anneal(ladder, tol=tol)
            x = steps[-1].matching.x
            if self.graph.n_edges:
                worst = float(np.max(steps[-1].matching.loads(self.graph)))
                x = x / max(1.0, worst)
            self._primal = FractionalMatching(x)
            self.logger.info(f"primal sum x = {self._primal.value:.12g} at z = {ladder[-1]:g}")
        return self._primal

    def iterate(self, divergence_bound: float, max_rounds: int,
                growth_threshold: Optional[float] = None) -> FixedPointResult:
        """
        Monotone iteration of Q o R from zero with promotion past divergence_bound

        Promoted entries stay infinite. The result is not yet certified.

        Args:
            divergence_bound: entries above it become inf
            max_rounds: round cap
            growth_threshold: growing entries above it become inf when their
                pattern is P o P fixed (default sqrt(divergence_bound); inf disables)
        """
        if not divergence_bound > 1.0:
            raise DomainError(f"divergence bound must exceed 1, got {divergence_bound}")
        if growth_threshold is None:
            growth_threshold = math.sqrt(divergence_bound)
        early = bool(get_setting('zero_temp', 'growth_promotion', True)) and math.isfinite(growth_threshold)
        g = self.graph
        Y = np.zeros(g.n_directed)
        stable = 0
        rounds = 0
        reverted = False
        diagnostics: List[str] = []

        with RoundExecutor(resolve_threads(self.threads)) as executor:
            while rounds < max_rounds:
                raw = ext_Q(g, ext_R(g, Y, executor), executor)
                rounds += 1
                promoted = np.where(raw > divergence_bound, np.inf, raw)
                was_inf = np.isinf(Y)
                reverted = bool(np.any(was_inf & ~np.isinf(promoted)))
                Y_next = np.where(was_inf, np.inf, promoted)

                if np.any(Y_next < Y):
                    raise ContractViolation(f"Q o R iteration decreased at round {rounds}")
                if early:
                    Y_next = self._promote_growing(Y, Y_next, growth_threshold)

                same_pattern = np.array_equal(np.isinf(Y_next), was_inf)
                finite = ~was_inf
                drift = float(np.max(Y_next[finite] - Y[finite])) if np.any(finite) else 0.0
                stable = stable + 1 if same_pattern and drift <= self.stationarity_tol else 0
                Y = Y_next
                if stable >= self.stable_rounds:
                    break

        stationary = stable >= self.stable_rounds
        if not stationary:
            diagnostics.append(f"not stationary after {rounds} rounds")
        if reverted:
            diagnostics.append("a promoted entry maps back to a finite value")

        I_Y = np.isinf(Y)
        fixed = is_double_map_fixed(g, I_Y)
        if not fixed:
            diagnostics.append("I^Y is not a fixed point of P o P")
        fp0 = fp0_check(g, Y)
        if fixed and not all(fp0):
            diagnostics.append(f"I^Y / I^X consistency failed: {fp0}")

        return FixedPointResult(
            Y=Y, I_Y=I_Y, certified=False, rounds=rounds, divergence_bound=divergence_bound,
            growth_threshold=growth_threshold if early else math.inf,
            stationary=stationary and not reverted, double_map_fixed=fixed, fp0_ok=fp0,
            diagnostics=diagnostics
        )

    def smallest_fixed_point(self, divergence_bound: Optional[float] = None,
                             max_rounds: Optional[int] = None,
                             retries: Optional[int] = None) -> FixedPointResult:
        """
        Smallest fixed point Y of Q o R with indicator I^Y and certificate

        Args:
            divergence_bound: first promotion bound (default max(floor, |V|^2 * max degree))
            max_rounds: round cap per attempt
            retries: how many times the bound is squared after a failed certificate

        Returns:
            FixedPointResult; certified is False when every attempt failed
        """
        from .certificate import certify_optimal

        bound = float(divergence_bound if divergence_bound is not None else self.default_bound())
        max_rounds = int(max_rounds if max_rounds is not None
                         else get_setting('zero_temp', 'max_rounds', 200000))
        retries = int(retries if retries is not None
                      else get_setting('zero_temp', 'divergence_retries', 3))

        result: Optional[FixedPointResult] = None
        for attempt in range(retries + 1):
            self.logger.info(f"Attempt {attempt + 1}: divergence bound {bound:g}")
            result = self.iterate(bound, max_rounds)
            result.attempts = attempt + 1

            if result.stationary and result.double_map_fixed:
                cover = half_cover(self.graph, result.I_Y)
                result.cover = cover
                try:
                    report = certify_optimal(self.graph, self.primal(), cover, self.gap_tol)
                except CertificationError as e:
                    result.diagnostics.append(str(e))
                    report = None
                result.certificate = report
                if report is not None and report.passed:
                    result.certified = True
                    self.logger.info(
                        f"certified nu* = {cover.value} after {result.rounds} rounds (gap {report.gap:.3e})"
                    )
                    return result
                if report is not None:
                    result.diagnostics.append(report.reason)

            if bound > 1e150:
                break
            bound = bound * bound

        self.logger.warning(f"zero-temperature solution not certified: {'; '.join(result.diagnostics)}")
        return result

    def nu_star(self) -> HalfInteger:
        """Exact fractional matching number"""
        result = self.smallest_fixed_point()
        if not result.certified:
            raise CertificationError(
                "could not certify nu*: " + "; ".join(result.diagnostics)
            )
        return result.cover.value


def smallest_fixed_point(g: Graph, divergence_bound: Optional[float] = None,
                         max_rounds: Optional[int] = None, threads: Optional[int] = 1) -> FixedPointResult:
    return ZeroTempSolver(g, threads=threads).smallest_fixed_point(divergence_bound, max_rounds)


def nu_star(g: Graph, threads: Optional[int] = 1) -> HalfInteger:
    return ZeroTempSolver(g, threads=threads).nu_star()
