"""
LABP Solver - Main package
"""
