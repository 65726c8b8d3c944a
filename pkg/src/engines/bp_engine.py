"""
LABP Engine - finite-temperature loopy annealing belief propagation

Synchronous iteration m <- z / (1 + sum of incoming messages except the
reverse one), started from zero. Even iterates increase and odd iterates
decrease towards the unique fixed point Y(z), so each run carries a
certified two-sided envelope.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from ..config import default_ladder, get_setting, resolve_threads
from ..exceptions import ContractViolation, DomainError, NumericalQualityError
from ..graphs import Graph
from ..utils.logger import get_logger
from .kernels import RoundExecutor, exclusion_sums, incoming_sums, vertex_loads


@dataclass
class FractionalMatching:
    """Edge weights x_e in [0, 1], one per undirected edge"""

    x: np.ndarray

    @property
    def value(self) -> float:
        return math.fsum(self.x.tolist())

    def loads(self, g: Graph) -> np.ndarray:
        return vertex_loads(g, self.x)

    def is_feasible(self, g: Graph, tol: float = 1e-9) -> bool:
        if len(self.x) != g.n_edges:
            return False
        if np.any(self.x < -tol):
            return False
        return bool(g.n_vertices == 0 or np.all(self.loads(g) <= 1.0 + tol))


@dataclass
class EnvelopeState:
    """Even (lower) and odd (upper) iterates sandwiching Y(z)"""

    lower: np.ndarray
    upper: np.ndarray
    rounds: int = 0

    @property
    def gap(self) -> float:
        if self.lower.size == 0:
            return 0.0
        return float(np.max(self.upper - self.lower))


@dataclass
class LABPRun:
    """Outcome of one run at fixed z"""

    z: float
    Y: np.ndarray
    envelope: EnvelopeState
    converged: bool
    warm_started: bool = False

    @property
    def gap(self) -> float:
        return self.envelope.gap

    @property
    def error_bound(self) -> float:
        return self.envelope.gap / 2.0


@dataclass
class AnnealStep:
    """One rung of the annealing ladder"""

    z: float
    matching: FractionalMatching
    gap: float
    rounds: int
    converged: bool
    run: LABPRun = field(repr=False)


def _check_z(z: float) -> float:
    z = float(z)
    z_cap = float(get_setting('bp_engine', 'z_cap', 1e300))
    if not (z > 0.0) or not math.isfinite(z):
        raise DomainError(f"z must be a positive finite real, got {z}")
    if z > z_cap:
        raise DomainError(f"z = {z:g} exceeds the cap {z_cap:g}")
    return z


class LABPEngine:
    """Runs LABP rounds on one graph, optionally across worker threads"""

    def __init__(self, graph: Graph, threads: Optional[int] = 1):
        self.logger = get_logger("LABPEngine")
        self.graph = graph
        self.threads = resolve_threads(threads)
        self.executor = RoundExecutor(self.threads)

    def close(self) -> None:
        self.executor.close()

    def __enter__(self) -> "LABPEngine":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def bp_update(self, z: float, m: np.ndarray) -> np.ndarray:
        """out[u -> v] = z / (1 + sum over w in du minus v of m[w -> u])"""
        return z / (1.0 + exclusion_sums(self.graph, np.asarray(m, dtype=float), self.executor))

    def run_labp(self, z: float, tol: Optional[float] = None,
                 max_rounds: Optional[int] = None,
                 lower_start: Optional[np.ndarray] = None) -> LABPRun:
        """
        Iterate to the fixed point Y(z) with a certified envelope

        Args:
            z: temperature parameter, z > 0
            tol: stop when gap <= tol * max(1, max entry)
            max_rounds: cap on the number of message updates
            lower_start: optional valid lower bound on Y(z) (warm start)

        Returns:
            LABPRun with Y the envelope midpoint; converged is False
            when max_rounds ran out (the gap is still reported)
        """
        z = _check_z(z)
        tol = float(tol if tol is not None else get_setting('bp_engine', 'tol', 1e-12))
        max_rounds = int(max_rounds if max_rounds is not None else get_setting('bp_engine', 'max_rounds', 10 ** 6))
        if tol <= 0.0:
            raise DomainError(f"tol must be positive, got {tol}")

        g = self.graph
        zero = np.zeros(g.n_directed)
        warm = False
        lower = zero
        if lower_start is not None:
            candidate = np.clip(np.asarray(lower_start, dtype=float), 0.0, z)
            upper = self.bp_update(z, candidate)
            next_lower = self.bp_update(z, upper)
            if np.all(next_lower >= candidate):
                lower, warm = candidate, True
            else:
                self.logger.info(f"warm start at z={z:g} is not a lower bound, restarting from 0")

        upper = self.bp_update(z, lower)
        rounds = 1
        converged = False
        while True:
            gap = float(np.max(upper - lower)) if g.n_directed else 0.0
            scale = max(1.0, float(np.max(upper))) if g.n_directed else 1.0
            if gap <= tol * scale:
                converged = True
                break
            if rounds >= max_rounds:
                break

            next_lower = self.bp_update(z, upper)
            next_upper = self.bp_update(z, next_lower)
            rounds += 2
            self._assert_sandwich(lower, next_lower, next_upper, upper, rounds)
            lower, upper = next_lower, next_upper

        envelope = EnvelopeState(lower=lower, upper=upper, rounds=rounds)
        if not converged:
            self.logger.warning(
                f"LABP did not converge at z={z:g} after {rounds} rounds (gap {envelope.gap:.3e})"
            )
        else:
            self.logger.debug(f"z={z:g}: converged in {rounds} rounds, gap {envelope.gap:.3e}")

        Y = (lower + upper) / 2.0
        return LABPRun(z=z, Y=Y, envelope=envelope, converged=converged, warm_started=warm)

    def _assert_sandwich(self, lower, next_lower, next_upper, upper, rounds: int) -> None:
        # X^{2t} <= X^{2t+2} <= X^{2t+3} <= X^{2t+1}
        if not (np.all(lower <= next_lower) and np.all(next_lower <= next_upper)
                and np.all(next_upper <= upper)):
            raise ContractViolation(f"envelope sandwich broken at round {rounds}")

    def anneal(self, ladder: Optional[Sequence[float]] = None, tol: Optional[float] = None,
               max_rounds: Optional[int] = None) -> List[AnnealStep]:
        """
        Run LABP along an increasing ladder of z values

        Each rung warm-starts from the previous rung's lower envelope,
        which stays a lower bound because Y(z) is nondecreasing in z.
        """
        ladder = [float(z) for z in (ladder if ladder is not None else default_ladder())]
        if not ladder:
            raise DomainError("annealing ladder is empty")
        if any(b <= a for a, b in zip(ladder, ladder[1:])):
            raise DomainError(f"annealing ladder must be strictly increasing, got {ladder}")

        steps: List[AnnealStep] = []
        previous_lower: Optional[np.ndarray] = None
        for z in ladder:
            run = self.run_labp(z, tol=tol, max_rounds=max_rounds, lower_start=previous_lower)
            matching = x_of_z(self.graph, z, run.Y) if run.converged else _scaled_matching(self.graph, z, run.Y)
            steps.append(AnnealStep(
                z=z, matching=matching, gap=run.gap, rounds=run.envelope.rounds,
                converged=run.converged, run=run
            ))
            self.logger.info(f"anneal z={z:g}: sum x = {matching.value:.12g} ({run.envelope.rounds} rounds)")
            previous_lower = run.envelope.lower
        return steps


def _xe_values(g: Graph, z: float, Y: np.ndarray) -> np.ndarray:
    Y = np.asarray(Y, dtype=float)
    product = Y[0::2] * Y[1::2]
    return product / (z + product)


def _scaled_matching(g: Graph, z: float, Y: np.ndarray) -> FractionalMatching:
    """x(z) from an unconverged Y, scaled down into FM(G) if needed"""
    x = _xe_values(g, z, Y)
    if g.n_edges:
        worst = float(np.max(vertex_loads(g, x)))
        if worst > 1.0:
            x = x / worst
    return FractionalMatching(x)


def x_of_z(g: Graph, z: float, Y: np.ndarray, feasibility_tol: Optional[float] = None) -> FractionalMatching:
    """x_e = Y[e]Y[-e] / (z + Y[e]Y[-e]), checked against FM(G)"""
    tol = float(feasibility_tol if feasibility_tol is not None
                else get_setting('bp_engine', 'feasibility_tol', 1e-9))
    matching = FractionalMatching(_xe_values(g, z, Y))
    if not matching.is_feasible(g, tol):
        worst = float(np.max(matching.loads(g))) if g.n_vertices else 0.0
        raise NumericalQualityError(
            f"x(z) at z={z:g} violates FM(G): max vertex load {worst:.15g} > 1 + {tol:g}"
        )
    return matching


def d_all(g: Graph, Y: np.ndarray) -> np.ndarray:
    """D_v = S / (1 + S), S = sum of incoming messages, for every vertex"""
    s = incoming_sums(g, np.asarray(Y, dtype=float))
    return s / (1.0 + s)


def d_v(g: Graph, Y: np.ndarray, v: int) -> float:
    incoming = g.incoming(v)
    s = math.fsum(float(Y[d]) for d in incoming)
    return s / (1.0 + s)


def nu_from_d(g: Graph, Y: np.ndarray) -> float:
    """Half the sum of D_v: the vertex-side estimate of sum x_e"""
    return 0.5 * math.fsum(d_all(g, Y).tolist())


def tree_marginal(g: Graph, z: float, Y: np.ndarray, d: int) -> float:
    """Y[d] R_{rev d}(Y) / (1 + Y[d] R_{rev d}(Y)); exact Gibbs marginal on trees"""
    r = 1.0 / (1.0 + exclusion_sums(g, np.asarray(Y, dtype=float)))
    t = float(Y[d]) * float(r[d ^ 1])
    return t / (1.0 + t)


def bp_update(g: Graph, z: float, m: np.ndarray) -> np.ndarray:
    return LABPEngine(g, threads=1).bp_update(_check_z(z), m)


def run_labp(g: Graph, z: float, tol: Optional[float] = None, max_rounds: Optional[int] = None,
             threads: Optional[int] = 1) -> LABPRun:
    with LABPEngine(g, threads=threads) as engine:
        return engine.run_labp(z, tol=tol, max_rounds=max_rounds)


def anneal(g: Graph, z_ladder: Optional[Sequence[float]] = None, tol: Optional[float] = None,
           max_rounds: Optional[int] = None, threads: Optional[int] = 1) -> List[AnnealStep]:
    with LABPEngine(g, threads=threads) as engine:
        return engine.anneal(z_ladder, tol=tol, max_rounds=max_rounds)
