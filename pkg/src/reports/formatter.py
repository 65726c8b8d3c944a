"""
Report Formatter - renders a RunReport as text or JSON for stdout

Floats are cut to a fixed number of significant digits before either
rendering, so the JSON parses back to exactly the printed values.
"""

import json
import math
from typing import Any, Dict, List, Optional

from ..config import get_setting
from ..utils.logger import get_logger
from .run_report import RunReport


def round_floats(value: Any, digits: int) -> Any:
    """Round every finite float in a nested structure to `digits` significant digits"""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return float(f"{value:.{digits}g}")
    if isinstance(value, dict):
        return {k: round_floats(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_floats(v, digits) for v in value]
    return value


class ReportFormatter:
    """Formats reports for humans (text) and machines (JSON)"""

    def __init__(self, digits: Optional[int] = None, show_timing: bool = False):
        self.logger = get_logger("ReportFormatter")
        self.digits = int(digits if digits is not None else get_setting('output', 'significant_digits', 12))
        self.show_timing = show_timing

    def to_json(self, report: RunReport) -> str:
        data = round_floats(report.public_dict(include_timing=self.show_timing), self.digits)
        return json.dumps(data, indent=2, sort_keys=True)

    def to_text(self, report: RunReport) -> str:
        data = round_floats(report.public_dict(include_timing=self.show_timing), self.digits)
        lines: List[str] = []
        lines.append("=" * 80)
        lines.append(f"LABP {report.command}")
        lines.append("=" * 80)
        summary = data['input']
        lines.append(
            f"graph: {summary['n_vertices']} vertices, {summary['n_edges']} edges, "
            f"bipartite: {'yes' if summary['bipartite'] else 'no'}"
        )

        section = getattr(self, f"_format_{report.command.replace('-', '_')}", None)
        if section is not None:
            lines.extend(section(data['results']))
        else:
            lines.extend(self._format_mapping(data['results']))

        if data['certificates']:
            lines.append("")
            lines.append("CERTIFICATES:")
            lines.append("-" * 60)
            lines.extend(self._format_mapping(data['certificates'], indent="  "))

        if data['notices']:
            lines.append("")
            lines.append("NOTICES:")
            for notice in data['notices']:
                lines.append(f"  - {notice}")

        if self.show_timing and data.get('timing'):
            lines.append("")
            lines.append("TIMING:")
            for step, seconds in data['timing'].items():
                lines.append(f"  {step}: {self._number(seconds)} s")

        lines.append("")
        lines.append(f"status: {data['status']}")
        return "\n".join(lines) + "\n"

    def _number(self, value: Any) -> str:
        if isinstance(value, float):
            return f"{value:.{self.digits}g}"
        if value is None:
            return "n/a"
        return str(value)

    def _vector(self, values: List[Any]) -> str:
        return "(" + ", ".join(self._number(v) for v in values) + ")"

    def _format_mapping(self, mapping: Dict[str, Any], indent: str = "") -> List[str]:
        lines = []
        for key, value in mapping.items():
            if isinstance(value, dict):
                lines.append(f"{indent}{key}:")
                lines.extend(self._format_mapping(value, indent + "  "))
            elif isinstance(value, list):
                lines.append(f"{indent}{key} = {self._vector(value)}")
            else:
                lines.append(f"{indent}{key} = {self._number(value)}")
        return lines

    def _format_nu_star(self, results: Dict[str, Any]) -> List[str]:
        if results.get('nu_star') is None:
            lines = [f"nu_star = uncertified ({results.get('diagnostic', 'no certificate')})"]
        else:
            lines = [f"nu_star = {results['nu_star']}"]
        if 'cover_y' in results:
            lines.append(f"cover y = {self._vector(results['cover_y'])}")
        lines.append(f"zero-temperature rounds: {results.get('rounds')}")
        return lines

    def _format_cover(self, results: Dict[str, Any]) -> List[str]:
        lines = []
        if 'cover' in results:
            lines.append(f"cover = {self._vector(results['cover'])}")
            lines.append(f"cover size = {results['cover_size']}")
        if 'cover_y' in results:
            lines.append(f"cover y = {self._vector(results['cover_y'])}")
            lines.append(f"tau_star = {results['tau_star']}")
        if 'rounded_cover' in results:
            lines.append(f"rounded cover = {self._vector(results['rounded_cover'])}")
            lines.append(f"rounded cover size = {results['rounded_cover_size']}")
        return lines

    def _format_match(self, results: Dict[str, Any]) -> List[str]:
        lines = []
        for step in results.get('ladder', []):
            lines.append("")
            lines.append(f"z = {self._number(step['z'])}")
            lines.append(f"  x = {self._vector(step['x'])}")
            lines.append(f"  sum x = {self._number(step['sum_x'])}")
            lines.append(f"  half sum D_v = {self._number(step['half_sum_d'])}")
            lines.append(f"  envelope gap = {self._number(step['gap'])}")
            lines.append(f"  rounds = {step['rounds']}")
            lines.append(f"  converged = {'yes' if step['converged'] else 'no'}")
            if 'gibbs_deviation' in step:
                lines.append(f"  max |x - Gibbs marginal| = {self._number(step['gibbs_deviation'])}")
        return lines

    def _format_bethe(self, results: Dict[str, Any]) -> List[str]:
        lines = [
            f"z = {self._number(results['z'])}",
            f"U_B = {self._number(results['U_B'])}",
            f"S_B = {self._number(results['S_B'])}",
            f"Phi_B = {self._number(results['Phi_B'])}",
        ]
        for key in ('Phi_exact', 'Z', 'ln_Z', 'residual'):
            if results.get(key) is not None:
                lines.append(f"{key} = {self._number(results[key])}")
        if results.get('top_terms'):
            lines.append("")
            lines.append("TOP LOOP TERMS:")
            for term in results['top_terms']:
                edges = " ".join(str(k) for k in term['edges'])
                lines.append(f"  [{edges}] {self._number(term['contribution'])}")
        if results.get('partial_sums'):
            lines.append("")
            lines.append("PARTIAL SUMS BY LOOP SIZE:")
            for size, value in results['partial_sums']:
                lines.append(f"  |F| <= {size}: Z ~ {self._number(value)}")
        return lines

    def _format_oracle(self, results: Dict[str, Any]) -> List[str]:
        lines = []
        for key in ('nu', 'tau', 'nu_star', 'tau_star', 'pp_minimum', 'method'):
            lines.append(f"{key} = {self._number(results.get(key))}")
        if results.get('matching_polynomial'):
            lines.append(f"matching polynomial coefficients = {self._vector(results['matching_polynomial'])}")
        return lines
