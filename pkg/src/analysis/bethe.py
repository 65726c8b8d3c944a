"""
Bethe Analysis - Bethe functionals on FM(G), exact Gibbs quantities and their comparison

All entropies use the 0 ln 0 = 0 convention through scipy's xlogy.
"""

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.special import xlogy

from ..config import get_setting
from ..engines.bp_engine import FractionalMatching, run_labp, x_of_z
from ..engines.kernels import vertex_loads
from ..exceptions import CapExceededError, DomainError
from ..graphs import Graph
from ..utils.logger import get_logger
from .loop_series import LoopTerm, loop_partial_sums, loop_series
from .matching_polynomial import MatchingCounter

logger = get_logger("Bethe")


def _weights(x) -> np.ndarray:
    if isinstance(x, FractionalMatching):
        x = x.x
    return np.asarray(x, dtype=float)


def _domain_tol(tol: Optional[float]) -> float:
    return float(tol if tol is not None else get_setting('bethe', 'domain_tol', 1e-9))


def check_fm(g: Graph, x, tol: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Validate x against FM(G) and clip rounding noise

    Returns:
        (x clipped to [0, 1], vertex loads clipped to [0, 1])

    Raises:
        DomainError: x has the wrong length or leaves FM(G) by more than tol
    """
    tol = _domain_tol(tol)
    x = _weights(x)
    if x.shape != (g.n_edges,):
        raise DomainError(f"expected {g.n_edges} edge weights, got shape {x.shape}")
    if np.any(x < -tol) or np.any(x > 1.0 + tol):
        raise DomainError("edge weight outside [0, 1]")
    x = np.clip(x, 0.0, 1.0)
    loads = vertex_loads(g, x)
    if np.any(loads > 1.0 + tol):
        worst = int(np.argmax(loads))
        raise DomainError(f"vertex {worst} has load {loads[worst]:.12g} > 1")
    return x, np.clip(loads, 0.0, 1.0)


def bethe_entropy(g: Graph, x, tol: Optional[float] = None) -> float:
    """
    S^B(x) = 1/2 sum_v { sum_{e at v} [-x ln x + (1-x) ln(1-x)] - 2 (1-s_v) ln(1-s_v) }

    Every edge term is seen from both endpoints, so the half cancels on it.
    """
    x, s = check_fm(g, x, tol)
    edge_terms = -xlogy(x, x) + xlogy(1.0 - x, 1.0 - x)
    vertex_terms = xlogy(1.0 - s, 1.0 - s)
    return math.fsum(edge_terms.tolist()) - math.fsum(vertex_terms.tolist())


def bethe_internal_energy(g: Graph, x, tol: Optional[float] = None) -> float:
    """U^B(x) = -sum x_e"""
    x, _ = check_fm(g, x, tol)
    return -math.fsum(x.tolist())


def bethe_free_entropy(g: Graph, x, z: float, tol: Optional[float] = None) -> float:
    """Phi^B(x; z) = -U^B(x) ln z + S^B(x)"""
    z = _positive(z)
    return -bethe_internal_energy(g, x, tol) * math.log(z) + bethe_entropy(g, x, tol)


def bethe_gradient(g: Graph, x, z: float) -> np.ndarray:
    """
    Per-edge partial derivative of Phi^B at an interior point

    d Phi^B / d x_e = ln z + ln((1 - s_u)(1 - s_v) / (x_e (1 - x_e)))
    It vanishes exactly at the LABP fixed point x(z).

    Raises:
        DomainError: some x_e is 0 or 1 or some vertex is saturated
    """
    z = _positive(z)
    x = _weights(x)
    if x.shape != (g.n_edges,) or np.any(x <= 0.0) or np.any(x >= 1.0):
        raise DomainError("gradient needs every x_e strictly inside (0, 1)")
    s = vertex_loads(g, x)
    if np.any(s >= 1.0):
        raise DomainError("gradient needs every vertex load strictly below 1")
    edges = np.asarray(g.edges, dtype=np.int64).reshape(-1, 2)
    slack = np.log1p(-s)
    return math.log(z) + slack[edges[:, 0]] + slack[edges[:, 1]] - np.log(x) - np.log1p(-x)


def _positive(z: float) -> float:
    z = float(z)
    if not (z > 0.0) or not math.isfinite(z):
        raise DomainError(f"z must be a positive finite real, got {z}")
    return z


def gibbs_marginals(g: Graph, z: float, cap: Optional[int] = None) -> np.ndarray:
    """mu(B_e = 1) = z P_{G-u-v}(z) / P_G(z) from exact polynomials"""
    z = _positive(z)
    counter = MatchingCounter(g, cap)
    ln_p = counter.polynomial().log_value(z)
    ln_z = math.log(z)
    return np.array([
        math.exp(ln_z + counter.without_endpoints(k).log_value(z) - ln_p)
        for k in range(g.n_edges)
    ])


@dataclass
class CanonicalThermodynamics:
    """Internal energy, entropy and free entropy of the Gibbs model"""

    z: float
    U: float
    S: float
    Phi: float


def canonical_thermodynamics(g: Graph, z: float, cap: Optional[int] = None) -> CanonicalThermodynamics:
    """U_G = -z P'/P, Phi_G = ln P, S_G = Phi_G + U_G ln z"""
    z = _positive(z)
    poly = MatchingCounter(g, cap).polynomial()
    phi = poly.log_value(z)
    energy = -poly.mean_size(z)
    return CanonicalThermodynamics(z=z, U=energy, S=phi + energy * math.log(z), Phi=phi)


def _labp_matching(g: Graph, z: float) -> FractionalMatching:
    run = run_labp(g, z)
    if not run.converged:
        logger.warning(f"LABP did not converge at z={z:g}; Bethe quantities use the envelope midpoint")
    return x_of_z(g, z, run.Y)


def _local_measure(x: np.ndarray, s: float, occupied: Tuple[int, ...], local: List[int]) -> float:
    """mu_dv for a local configuration: (1 - s)^(1 - sum B) prod x^B"""
    total = sum(occupied)
    value = 1.0 if total else 1.0 - s
    for b, k in zip(occupied, local):
        if b:
            value *= x[k]
    return value


def _edge_measure(xe: float, b: int) -> float:
    return xe if b else 1.0 - xe


def fracmu_check(g: Graph, x) -> float:
    """
    Largest deviation between mu_dv / prod mu_e and its subset expansion

    The expansion is 1 - sum over nonempty S of (-1)^|S| (|S| - 1) prod_S (B_e - x_e) / (1 - x_e),
    evaluated for every vertex and every local configuration with at most one occupied edge.
    """
    x = _weights(x)
    if np.any(x <= 0.0) or np.any(x >= 1.0):
        raise DomainError("subset expansion needs every x_e strictly inside (0, 1)")
    x, s = check_fm(g, x)
    worst = 0.0
    for v in range(g.n_vertices):
        local = [d >> 1 for d in g.outgoing(v)]
        degree = len(local)
        configs = [tuple(0 for _ in local)] + [
            tuple(1 if j == i else 0 for j in range(degree)) for i in range(degree)
        ]
        for occupied in configs:
            lhs = _local_measure(x, s[v], occupied, local)
            for b, k in zip(occupied, local):
                lhs /= _edge_measure(x[k], b)
            rhs = 1.0
            for size in range(2, degree + 1):
                sign = -1.0 if size % 2 else 1.0
                for subset in itertools.combinations(range(degree), size):
                    term = 1.0
                    for j in subset:
                        k = local[j]
                        term *= (occupied[j] - x[k]) / (1.0 - x[k])
                    rhs -= sign * (size - 1) * term
            worst = max(worst, abs(lhs - rhs))
    return worst


def reparameterization_check(g: Graph, z: float, cap: Optional[int] = None) -> float:
    """
    Max |RHS - mu(B)| over all matchings, RHS = prod_v mu_dv / prod_e mu_e normalized

    mu_dv and mu_e are the local marginals built from x(z).
    """
    from ..oracles.bruteforce import iter_matchings

    z = _positive(z)
    cap = int(cap if cap is not None else get_setting('bethe', 'reparameterization_cap', 12))
    if g.n_edges > cap:
        raise CapExceededError("reparameterization check", g.n_edges, cap)

    x, s = check_fm(g, _labp_matching(g, z))
    matchings = list(iter_matchings(g))
    ln_z = math.log(z)

    rhs = []
    gibbs = []
    for matching in matchings:
        occupied = np.zeros(g.n_edges, dtype=np.int64)
        occupied[list(matching)] = 1
        value = 1.0
        for v in range(g.n_vertices):
            local = [d >> 1 for d in g.outgoing(v)]
            value *= _local_measure(x, s[v], tuple(int(occupied[k]) for k in local), local)
        for k in range(g.n_edges):
            value /= _edge_measure(x[k], int(occupied[k]))
        rhs.append(value)
        gibbs.append(len(matching) * ln_z)

    rhs = np.asarray(rhs)
    rhs = rhs / math.fsum(rhs.tolist())
    gibbs = np.asarray(gibbs)
    gibbs = np.exp(gibbs - np.max(gibbs))
    gibbs = gibbs / math.fsum(gibbs.tolist())
    return float(np.max(np.abs(rhs - gibbs)))


@dataclass
class BetheReport:
    """Bethe functionals at x(z) plus exact and loop-corrected quantities when affordable"""

    z: float
    x: FractionalMatching
    U_B: float
    S_B: float
    Phi_B: float
    Phi_exact: Optional[float] = None
    Z: Optional[float] = None
    ln_Z: Optional[float] = None
    residual: Optional[float] = None
    top_terms: List[LoopTerm] = field(default_factory=list)
    partial_sums: List[Tuple[int, float]] = field(default_factory=list)
    notices: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            'z': self.z,
            'U_B': self.U_B,
            'S_B': self.S_B,
            'Phi_B': self.Phi_B,
            'Phi_exact': self.Phi_exact,
            'Z': self.Z,
            'ln_Z': self.ln_Z,
            'residual': self.residual,
            'top_terms': [term.to_dict() for term in self.top_terms],
            'partial_sums': [[size, value] for size, value in self.partial_sums],
            'notices': list(self.notices),
        }


def bethe_report(g: Graph, z: float, x: Optional[FractionalMatching] = None,
                 loops: bool = False) -> BetheReport:
    """
    Bethe quantities at x(z); with loops, also the exact and loop fields within their caps

    Caps never raise here: the skipped part is named in notices.
    """
    z = _positive(z)
    if x is None:
        x = _labp_matching(g, z)
    energy = bethe_internal_energy(g, x)
    entropy = bethe_entropy(g, x)
    report = BetheReport(z=z, x=x, U_B=energy, S_B=entropy, Phi_B=-energy * math.log(z) + entropy)
    if entropy < -1e-12:
        logger.warning(f"negative Bethe entropy {entropy:.3e}")

    if loops:
        try:
            report.Phi_exact = canonical_thermodynamics(g, z).Phi
        except CapExceededError as e:
            report.notices.append(f"exact partition function skipped: {e}")
        try:
            series = loop_series(g, x)
        except (CapExceededError, DomainError) as e:
            report.notices.append(f"loop series skipped: {e}")
        else:
            report.Z = series.Z
            report.ln_Z = math.log(series.Z) if series.Z > 0 else None
            top = int(get_setting('bethe', 'top_loop_terms', 10))
            report.top_terms = series.top_terms(top)
            report.partial_sums = loop_partial_sums(series.terms)
            if report.ln_Z is not None and report.Phi_exact is not None:
                report.residual = abs(report.ln_Z - (report.Phi_exact - report.Phi_B))
    return report
