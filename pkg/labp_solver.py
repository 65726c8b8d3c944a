#!/usr/bin/env python3
"""
LABP Solver - fractional matchings, covers and Bethe analysis by loopy annealing BP

Reads an edge list ("u v" per line) from a file or stdin and prints a
certified report.

Exit codes: 0 certified, 2 uncertified or not converged, 1 error.
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

# Add project root to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from src.config import get_setting
from src.exceptions import LABPError
from src.graphs import read_edge_list
from src.pipelines import LABPPipeline
from src.reports import EXIT_ERROR, DataSaver, ReportFormatter, RunReport
from src.utils.logger import get_logger, set_global_level

logger = get_logger("LABPSolver")


class SolverArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with the hard-error code, not argparse's 2"""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        'graph',
        nargs='?',
        default='-',
        help='Edge-list file, or - for stdin (default: -)'
    )
    parser.add_argument('--json', action='store_true', help='Print the report as JSON')
    parser.add_argument(
        '--threads',
        type=int,
        default=None,
        help='Worker threads per round (default: LABP_THREADS or all cores)'
    )
    parser.add_argument('--save-dir', default=None, help='Also save JSON and CSV reports here')
    parser.add_argument('--timing', action='store_true', help='Include wall-clock timings')
    parser.add_argument('-v', '--verbose', action='store_true', help='Log progress to stderr')


def build_parser() -> argparse.ArgumentParser:
    parser = SolverArgumentParser(
        description='Loopy annealing belief propagation for matchings and vertex covers'
    )
    commands = parser.add_subparsers(dest='command', required=True)

    nu_star = commands.add_parser('nu-star', help='Exact fractional matching number')
    _add_common_arguments(nu_star)

    cover = commands.add_parser('cover', help='Half-integral or (bipartite) minimum vertex cover')
    _add_common_arguments(cover)
    cover.add_argument('--bipartite', action='store_true',
                       help='Emit an integral minimum cover; fails on odd cycles')

    match = commands.add_parser('match', help='LABP fractional matching x(z)')
    _add_common_arguments(match)
    match.add_argument('--z', type=float, default=None,
                       help='Temperature parameter (default: ladder 10^0 .. 10^8)')
    match.add_argument('--tol', type=float, default=None, help='Relative envelope gap (default: 1e-12)')
    match.add_argument('--max-rounds', type=int, default=None, help='Round cap (default: 10^6)')
    match.add_argument('--anneal', action='store_true', help='Run the default annealing ladder')

    bethe = commands.add_parser('bethe', help='Bethe free entropy and loop-series correction')
    _add_common_arguments(bethe)
    bethe.add_argument('--z', type=float, default=1.0, help='Temperature parameter (default: 1)')
    bethe.add_argument('--loops', action='store_true', help='Enumerate generalized loops')

    oracle = commands.add_parser('oracle', help='Brute-force ground truth for small graphs')
    _add_common_arguments(oracle)

    return parser


def run_command(args: argparse.Namespace) -> RunReport:
    """Parse the graph and run the requested pipeline"""
    graph = read_edge_list(args.graph)
    logger.info(f"Loaded graph with {graph.n_vertices} vertices and {graph.n_edges} edges")

    z = getattr(args, 'z', None)
    z_warn = float(get_setting('bp_engine', 'z_warn', 1e12))
    if z is not None and z > z_warn:
        logger.warning(f"z = {z:g} is above {z_warn:g}; convergence will be slow")

    pipeline = LABPPipeline(graph, threads=args.threads)
    if args.command == 'nu-star':
        return pipeline.run_nu_star()
    if args.command == 'cover':
        return pipeline.run_cover(bipartite=args.bipartite)
    if args.command == 'match':
        return pipeline.run_match(z=args.z, tol=args.tol, max_rounds=args.max_rounds, anneal=args.anneal)
    if args.command == 'bethe':
        return pipeline.run_bethe(z=args.z, loops=args.loops)
    return pipeline.run_oracle()


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.verbose:
        set_global_level(logging.INFO)

    try:
        report = run_command(args)
    except KeyboardInterrupt:
        print("Interrupted", file=sys.stderr)
        return EXIT_ERROR
    except (LABPError, OSError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR

    formatter = ReportFormatter(show_timing=args.timing)
    sys.stdout.write(formatter.to_json(report) + "\n" if args.json else formatter.to_text(report))

    if args.save_dir:
        try:
            DataSaver(args.save_dir).save_run_report(report)
        except OSError as e:
            logger.error(f"Could not save report: {e}")
            print(f"Error: {e}", file=sys.stderr)
            return EXIT_ERROR

    if report.exit_code != 0:
        logger.warning(f"{args.command}: result is {report.status}")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
