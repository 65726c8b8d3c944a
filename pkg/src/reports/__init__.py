"""
Reports - run records, rendering and persistence
"""

from .data_saver import DataSaver
from .formatter import ReportFormatter, round_floats
from .run_report import EXIT_CERTIFIED, EXIT_ERROR, EXIT_UNCERTIFIED, InputSummary, RunReport

__all__ = [
    'DataSaver', 'ReportFormatter', 'round_floats',
    'EXIT_CERTIFIED', 'EXIT_ERROR', 'EXIT_UNCERTIFIED', 'InputSummary', 'RunReport',
]
