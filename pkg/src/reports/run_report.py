"""
Run Report - validated record of one CLI run
"""

from typing import Any, Dict, List

from pydantic import BaseModel, Field

EXIT_CERTIFIED = 0
EXIT_ERROR = 1
EXIT_UNCERTIFIED = 2


class InputSummary(BaseModel):
    n_vertices: int
    n_edges: int
    bipartite: bool


class RunReport(BaseModel):
    """What a command computed, how it was certified, and how long it took"""

    command: str
    input: InputSummary
    certified: bool
    converged: bool = True
    results: Dict[str, Any] = Field(default_factory=dict)
    certificates: Dict[str, Any] = Field(default_factory=dict)
    notices: List[str] = Field(default_factory=list)
    timing: Dict[str, float] = Field(default_factory=dict)
    # per-edge / per-vertex rows for the CSV summary; not printed
    tables: Dict[str, List[Dict[str, Any]]] = Field(default_factory=dict, exclude=True)

    @property
    def status(self) -> str:
        return "certified" if self.certified and self.converged else "uncertified"

    @property
    def exit_code(self) -> int:
        return EXIT_CERTIFIED if self.status == "certified" else EXIT_UNCERTIFIED

    def public_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        """Fields that go to stdout; timing only on request"""
        data = self.model_dump(exclude={'timing'} if not include_timing else set())
        data['status'] = self.status
        return data
