"""
Duality Certificate - primal fractional matching against a half-integral cover
"""

from dataclasses import dataclass
from typing import Optional

from ..config import get_setting
from ..exceptions import CertificationError, DomainError
from ..graphs import Graph
from ..utils.halves import HalfInteger
from ..utils.logger import get_logger
from .bp_engine import FractionalMatching

logger = get_logger("Certificate")

# slack for weak duality on floating-point primal values
WEAK_DUALITY_SLACK = 1e-9


@dataclass
class CertificateReport:
    """Outcome of comparing sum x against sum y"""

    primal_value: float
    dual_value: HalfInteger
    gap: float
    gap_tol: float
    passed: bool
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            'primal_value': self.primal_value,
            'dual_value': str(self.dual_value),
            'gap': self.gap,
            'gap_tol': self.gap_tol,
            'passed': self.passed,
            'reason': self.reason,
        }


def certify_optimal(g: Graph, primal: FractionalMatching, dual, gap_tol: Optional[float] = None,
                    feasibility_tol: float = 1e-9) -> CertificateReport:
    """
    Certify that primal and dual are both optimal

    Args:
        g: the graph
        primal: fractional matching, must lie in FM(G)
        dual: HalfIntegralCover, must lie in FVC(G)
        gap_tol: largest accepted dual - primal gap (default from config)

    Returns:
        CertificateReport; passed means both values are optimal within gap_tol

    Raises:
        DomainError: primal or dual is infeasible
        CertificationError: dual value below primal value (weak duality broken)
    """
    gap_tol = float(gap_tol if gap_tol is not None else get_setting('certificate', 'gap_tol', 0.25))
    if not primal.is_feasible(g, feasibility_tol):
        raise DomainError("primal is not a fractional matching of the graph")
    if not dual.is_feasible(g):
        raise DomainError("dual is not a fractional vertex cover of the graph")

    primal_value = primal.value
    dual_value = dual.value
    gap = dual_value.value - primal_value
    if gap < -WEAK_DUALITY_SLACK:
        raise CertificationError(
            f"weak duality violated: cover {dual_value} < matching {primal_value:.12g}"
        )

    if gap > gap_tol:
        passed, reason = False, f"duality gap {gap:.3e} exceeds {gap_tol:g}"
    elif HalfInteger.nearest(primal_value) != dual_value:
        passed, reason = False, f"cover {dual_value} is not the half-integer nearest {primal_value:.12g}"
    else:
        passed, reason = True, ""

    logger.debug(f"certificate: primal {primal_value:.12g}, dual {dual_value}, gap {gap:.3e}, passed {passed}")
    return CertificateReport(
        primal_value=primal_value, dual_value=dual_value, gap=gap,
        gap_tol=gap_tol, passed=passed, reason=reason
    )
