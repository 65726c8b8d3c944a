"""
Engines - finite and zero temperature message passing
"""

from .bp_engine import (
    AnnealStep,
    EnvelopeState,
    FractionalMatching,
    LABPEngine,
    LABPRun,
    anneal,
    bp_update,
    d_all,
    d_v,
    nu_from_d,
    run_labp,
    tree_marginal,
    x_of_z,
)
from .certificate import CertificateReport, certify_optimal
from .zero_temp import (
    FixedPointResult,
    HalfIntegralCover,
    VertexCover,
    ZeroTempSolver,
    bipartite_cover,
    d_extended_sum,
    d_v_extended,
    ext_Q,
    ext_R,
    f_all,
    f_v,
    fp0_check,
    half_cover,
    is_double_map_fixed,
    nu_star,
    p_map,
    rounded_cover,
    smallest_fixed_point,
)

__all__ = [
    'AnnealStep', 'EnvelopeState', 'FractionalMatching', 'LABPEngine', 'LABPRun',
    'anneal', 'bp_update', 'd_all', 'd_v', 'nu_from_d', 'run_labp', 'tree_marginal', 'x_of_z',
    'CertificateReport', 'certify_optimal',
    'FixedPointResult', 'HalfIntegralCover', 'VertexCover', 'ZeroTempSolver',
    'bipartite_cover', 'd_extended_sum', 'd_v_extended', 'ext_Q', 'ext_R', 'f_all', 'f_v',
    'fp0_check', 'half_cover', 'is_double_map_fixed', 'nu_star', 'p_map', 'rounded_cover',
    'smallest_fixed_point',
]
