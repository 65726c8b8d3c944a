"""
Oracles - independent ground truth for matching and cover numbers
"""

from .bruteforce import (
    DoubleMapScan,
    MatchingEnumeration,
    OracleReport,
    enumerate_matchings,
    enumerate_pp_fixed_points,
    iter_matchings,
    nu_star_bruteforce,
    oracle_report,
    tau_bruteforce,
    tau_half_bruteforce,
)
from .hopcroft_karp import HopcroftKarp, bipartite_max_matching

__all__ = [
    'DoubleMapScan', 'MatchingEnumeration', 'OracleReport', 'enumerate_matchings',
    'enumerate_pp_fixed_points', 'iter_matchings', 'nu_star_bruteforce', 'oracle_report',
    'tau_bruteforce', 'tau_half_bruteforce', 'HopcroftKarp', 'bipartite_max_matching',
]
