"""
Exception hierarchy for the LABP solver
"""

from typing import List, Optional


class LABPError(Exception):
    """Base class for every error raised by the solver"""


class GraphParseError(LABPError, ValueError):
    """Edge-list input could not be turned into a simple graph"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class NotBipartiteError(LABPError, ValueError):
    """Raised when a bipartite-only operation meets an odd cycle"""

    def __init__(self, cycle: List[int]):
        self.cycle = list(cycle)
        path = " -> ".join(str(v) for v in self.cycle + self.cycle[:1])
        super().__init__(f"graph is not bipartite: odd cycle {path}")


class CapExceededError(LABPError, ValueError):
    """A brute-force or exact computation refused an input above its cap"""

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class DomainError(LABPError, ValueError):
    """Argument outside the mathematical domain of the operation"""


class NumericalQualityError(LABPError, ArithmeticError):
    """Floating-point result violates a constraint beyond tolerance"""


class ContractViolation(LABPError, AssertionError):
    """A documented pre-condition or invariant did not hold"""


class CertificationError(LABPError, RuntimeError):
    """An optimality certificate could not be produced or was violated"""
