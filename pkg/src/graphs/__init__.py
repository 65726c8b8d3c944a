"""
Graph representation, parsing and structural queries
"""

from .graph import Graph, Bipartition, U_SIDE, W_SIDE, rev, neighbors_excluding, bipartition, odd_cycle, is_forest
from .parser import parse_edge_list, read_edge_list, format_edge_list
from . import named

__all__ = [
    'Graph', 'Bipartition', 'U_SIDE', 'W_SIDE', 'rev',
    'neighbors_excluding', 'bipartition', 'odd_cycle', 'is_forest',
    'parse_edge_list', 'read_edge_list', 'format_edge_list', 'named'
]
