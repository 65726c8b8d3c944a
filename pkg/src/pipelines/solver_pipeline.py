"""
Solver Pipeline - runs one command end to end and collects a RunReport
"""

import time
from typing import Any, Dict, List, Optional

import numpy as np

from ..analysis.bethe import bethe_report, gibbs_marginals
from ..config import default_ladder, get_setting
from ..engines.bp_engine import LABPEngine, nu_from_d, x_of_z
from ..engines.zero_temp import (
    FixedPointResult,
    ZeroTempSolver,
    bipartite_cover,
    rounded_cover,
)
from ..exceptions import NotBipartiteError
from ..graphs import Graph, bipartition, is_forest, odd_cycle
from ..oracles.bruteforce import oracle_report
from ..oracles.hopcroft_karp import bipartite_max_matching
from ..reports.run_report import InputSummary, RunReport
from ..utils.halves import HalfInteger
from ..utils.logger import get_logger


class LABPPipeline:
    """
    Orchestrates solver runs on one graph

    Each run_* method mirrors a CLI command and returns its RunReport.
    """

    def __init__(self, graph: Graph, threads: Optional[int] = None):
        self.logger = get_logger("LABPPipeline")
        self.graph = graph
        self.threads = threads
        self.timing: Dict[str, float] = {}

    def _summary(self) -> InputSummary:
        g = self.graph
        return InputSummary(
            n_vertices=g.n_vertices, n_edges=g.n_edges, bipartite=bipartition(g) is not None
        )

    def _timed(self, step: str, start: float) -> None:
        self.timing[step] = time.perf_counter() - start

    def _solve_zero_temperature(self) -> FixedPointResult:
        start = time.perf_counter()
        solver = ZeroTempSolver(self.graph, threads=self.threads)
        result = solver.smallest_fixed_point()
        self._timed('zero_temperature', start)
        return result

    def _fixed_point_certificates(self, result: FixedPointResult) -> Dict[str, Any]:
        certificates: Dict[str, Any] = {
            'fixed_point': {
                'stationary': result.stationary,
                'double_map_fixed': result.double_map_fixed,
                'fp0_I_Y': result.fp0_ok[0],
                'fp0_I_X': result.fp0_ok[1],
                'divergence_bound': result.divergence_bound,
                'growth_threshold': result.growth_threshold,
                'attempts': result.attempts,
            }
        }
        if result.certificate is not None:
            certificates['duality'] = result.certificate.to_dict()
        return certificates

    @staticmethod
    def _half_strings(twice: np.ndarray) -> List[str]:
        return [str(HalfInteger.from_twice(int(t))) for t in twice]

    def run_nu_star(self) -> RunReport:
        """Exact nu* with its half-integral cover and duality certificate"""
        self.logger.info("Step 1: Solving the zero-temperature fixed point...")
        result = self._solve_zero_temperature()

        results: Dict[str, Any] = {
            'nu_star': None,
            'rounds': result.rounds,
        }
        tables: Dict[str, List[Dict[str, Any]]] = {}
        if not result.certified:
            results['diagnostic'] = '; '.join(result.diagnostics) or "no certificate"
        if result.cover is not None:
            self.logger.info("Step 2: Reading off the half-integral cover...")
            if result.certified:
                results['nu_star'] = str(result.cover.value)
            results['cover_y'] = self._half_strings(result.cover.twice)
            tables['vertices'] = [
                {'vertex': v, 'y': float(y)} for v, y in enumerate(result.cover.y)
            ]

        return RunReport(
            command="nu-star",
            input=self._summary(),
            certified=result.certified,
            results=results,
            certificates=self._fixed_point_certificates(result),
            notices=list(result.diagnostics),
            timing=dict(self.timing),
            tables=tables,
        )

    def run_cover(self, bipartite: bool = False) -> RunReport:
        """
        Vertex cover from the zero-temperature messages

        Args:
            bipartite: emit an integral minimum cover (requires a 2-colorable graph)

        Raises:
            NotBipartiteError: bipartite requested on a graph with an odd cycle
        """
        g = self.graph
        b = None
        if bipartite:
            self.logger.info("Step 1: Two-coloring the graph...")
            b = bipartition(g)
            if b is None:
                raise NotBipartiteError(odd_cycle(g))

        self.logger.info("Step 2: Solving the zero-temperature fixed point...")
        result = self._solve_zero_temperature()
        certificates = self._fixed_point_certificates(result)
        results: Dict[str, Any] = {}
        tables: Dict[str, List[Dict[str, Any]]] = {}
        certified = result.certified

        if result.cover is not None and b is not None:
            self.logger.info("Step 3: Building the integral cover V(I)...")
            cover = bipartite_cover(g, b, result.I_Y)
            start = time.perf_counter()
            nu = bipartite_max_matching(g, b)
            self._timed('augmenting_path', start)
            results['cover'] = cover.vertices
            results['cover_size'] = cover.size
            certificates['konig'] = {'matching_number': nu, 'cover_size': cover.size,
                                     'passed': cover.size == nu}
            certified = certified and cover.size == nu
            tables['vertices'] = [
                {'vertex': v, 'in_cover': bool(c)} for v, c in enumerate(cover.in_cover)
            ]
        elif result.cover is not None:
            self.logger.info("Step 3: Rounding the half-integral cover...")
            rounded = rounded_cover(result.cover)
            results['cover_y'] = self._half_strings(result.cover.twice)
            results['tau_star'] = str(result.cover.value)
            results['rounded_cover'] = rounded.vertices
            results['rounded_cover_size'] = rounded.size
            tables['vertices'] = [
                {'vertex': v, 'y': float(y), 'rounded': bool(r)}
                for v, (y, r) in enumerate(zip(result.cover.y, rounded.in_cover))
            ]

        return RunReport(
            command="cover",
            input=self._summary(),
            certified=certified,
            results=results,
            certificates=certificates,
            notices=list(result.diagnostics),
            timing=dict(self.timing),
            tables=tables,
        )

    def run_match(self, z: Optional[float] = None, tol: Optional[float] = None,
                  max_rounds: Optional[int] = None, anneal: bool = False) -> RunReport:
        """
        x(z) at one temperature, or along the default ladder

        Without z (or with anneal) the default ladder 10^0 .. 10^8 is used.
        """
        g = self.graph
        ladder = default_ladder() if anneal or z is None else [float(z)]
        tree_cap = int(get_setting('oracle', 'tree_check_cap', 12))
        check_tree = is_forest(g) and g.n_edges <= tree_cap

        self.logger.info(f"Step 1: Running LABP over {len(ladder)} value(s) of z...")
        start = time.perf_counter()
        with LABPEngine(g, threads=self.threads) as engine:
            steps = engine.anneal(ladder, tol=tol, max_rounds=max_rounds)
        self._timed('labp', start)

        rows: List[Dict[str, Any]] = []
        entries: List[Dict[str, Any]] = []
        for step in steps:
            entry: Dict[str, Any] = {
                'z': step.z,
                'x': [float(v) for v in step.matching.x],
                'sum_x': step.matching.value,
                'half_sum_d': nu_from_d(g, step.run.Y),
                'gap': step.gap,
                'rounds': step.rounds,
                'converged': step.converged,
            }
            if check_tree:
                exact = gibbs_marginals(g, step.z)
                entry['gibbs_deviation'] = float(np.max(np.abs(step.matching.x - exact))) if g.n_edges else 0.0
            entries.append(entry)
            rows.extend(
                {'z': step.z, 'u': u, 'v': v, 'x': float(x)}
                for (u, v), x in zip(g.edges, step.matching.x)
            )

        converged = all(step.converged for step in steps)
        notices = [] if converged else ["LABP did not converge for every z; gaps are reported"]
        return RunReport(
            command="match",
            input=self._summary(),
            certified=True,
            converged=converged,
            results={'edges': [list(e) for e in g.edges], 'ladder': entries},
            certificates={'envelope': {'max_gap': max(step.gap for step in steps)}},
            notices=notices,
            timing=dict(self.timing),
            tables={'edges': rows},
        )

    def run_bethe(self, z: float = 1.0, loops: bool = False) -> RunReport:
        """Bethe functionals at x(z), with exact and loop-corrected values within caps"""
        g = self.graph
        self.logger.info(f"Step 1: Running LABP at z={z:g}...")
        start = time.perf_counter()
        with LABPEngine(g, threads=self.threads) as engine:
            run = engine.run_labp(z)
        x = x_of_z(g, z, run.Y)
        self._timed('labp', start)

        self.logger.info("Step 2: Evaluating Bethe quantities...")
        start = time.perf_counter()
        report = bethe_report(g, z, x=x, loops=loops)
        self._timed('bethe', start)

        results = report.to_dict()
        results.pop('notices', None)
        certificates: Dict[str, Any] = {'envelope': {'gap': run.gap, 'rounds': run.envelope.rounds}}
        if report.residual is not None:
            certificates['loop_identity'] = {'residual': report.residual}
        return RunReport(
            command="bethe",
            input=self._summary(),
            certified=True,
            converged=run.converged,
            results=results,
            certificates=certificates,
            notices=list(report.notices),
            timing=dict(self.timing),
            tables={'edges': [
                {'u': u, 'v': v, 'x': float(xe)} for (u, v), xe in zip(g.edges, x.x)
            ]},
        )

    def run_oracle(self) -> RunReport:
        """Brute-force ground truth within caps"""
        self.logger.info("Step 1: Running brute-force oracles...")
        start = time.perf_counter()
        report = oracle_report(self.graph)
        self._timed('oracle', start)
        return RunReport(
            command="oracle",
            input=self._summary(),
            certified=True,
            results={k: v for k, v in report.to_dict().items() if k != 'notices'},
            notices=list(report.notices),
            timing=dict(self.timing),
        )
