"""
Utility modules
"""

from .logger import get_logger, set_global_level
from .halves import HalfInteger

__all__ = ['get_logger', 'set_global_level', 'HalfInteger']
