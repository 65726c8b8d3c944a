"""
Pipelines - multi-step solver runs behind the CLI commands
"""

from .solver_pipeline import LABPPipeline

__all__ = ['LABPPipeline']
