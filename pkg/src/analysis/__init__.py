"""
Analysis - Bethe functionals, exact matching polynomial and loop series
"""

from .bethe import (
    BetheReport,
    CanonicalThermodynamics,
    bethe_entropy,
    bethe_free_entropy,
    bethe_gradient,
    bethe_internal_energy,
    bethe_report,
    canonical_thermodynamics,
    check_fm,
    fracmu_check,
    gibbs_marginals,
    reparameterization_check,
)
from .loop_series import LoopSeriesResult, LoopTerm, loop_partial_sums, loop_series
from .matching_polynomial import MatchingCounter, MatchingPolynomial, matching_polynomial

__all__ = [
    'BetheReport', 'CanonicalThermodynamics', 'bethe_entropy', 'bethe_free_entropy',
    'bethe_gradient', 'bethe_internal_energy', 'bethe_report', 'canonical_thermodynamics',
    'check_fm', 'fracmu_check', 'gibbs_marginals', 'reparameterization_check',
    'LoopSeriesResult', 'LoopTerm', 'loop_partial_sums', 'loop_series',
    'MatchingCounter', 'MatchingPolynomial', 'matching_polynomial',
]
