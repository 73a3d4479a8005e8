#!/usr/bin/env python3
"""
cat0-collapse command line.

Usage:
    cat0-collapse validate fixtures/tetra.yaml
    cat0-collapse check-cat0 fixtures/degree5.yaml --samples 2000 --seed 3
    cat0-collapse property-a fixtures/regular_star.yaml --sigma a,b,c,d --alpha b,c,d
    cat0-collapse geodesic fixtures/single_fin.yaml --p a,b,c,e:0.1,0.3,0.3,0.3 \\
        --q a,b,c,d:0.1,0.3,0.3,0.3
    cat0-collapse collapse fixtures/dunce_hat.yaml --no-verify

Exit codes:
    0   pass, inconclusive or collapsed to a point
    1   a check failed, or the engine got stuck or failed verification
    2   usage error or unusable input
"""

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..core.config import Tolerances, get_config
from ..core.exceptions import Cat0Error, MalformedInputError, PreconditionError
from ..core.logging import get_run_logger, setup_logging
from ..core.utils import step_seed
from ..core.utils.enums import EngineOutcome, Verdict
from ..engine import EngineConfig, VerifiedTrace, run
from ..geodesics import (
    CollapseGeometry,
    GeodesicSolver,
    SimplexPoint,
    balance_point_bisection,
    balance_point_closed_form,
    brute_force_distance,
    detect_crossing,
    reroute_after_collapse,
)
from ..geometry import MetricAssignment
from ..topology import SimplexId, SimplicialComplex, free_faces
from ..verification import (
    CheckReport,
    NeighborhoodSpec,
    betti_numbers,
    cat0_triangle_sample_check,
    combine_reports,
    edge_link_check,
    four_point_sample_check,
    homology_necessary_check,
    property_a_check,
)
from .document import read_document
from .report import emit_report

logger = logging.getLogger("cat0.cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


# =======================================================================
# Argument parsing
# =======================================================================

def parse_labels(text: str) -> List[str]:
    labels = [part.strip() for part in text.split(',') if part.strip()]
    if not labels:
        raise MalformedInputError(f"No vertex labels in {text!r}", item=text)
    return labels


def parse_simplex(text: str) -> SimplexId:
    return SimplexId.of(*parse_labels(text))


def parse_point(text: str) -> SimplexPoint:
    """`a,b,c:0.2,0.3,0.5` is the point 0.2a + 0.3b + 0.5c."""
    labels, sep, coords = text.partition(':')
    if not sep:
        raise MalformedInputError(f"Point {text!r} must read labels:coordinates", item=text)
    try:
        values = [float(c) for c in coords.split(',')]
    except ValueError as exc:
        raise MalformedInputError(f"Bad coordinates in {text!r}", item=text) from exc
    return SimplexPoint.of(parse_labels(labels), values)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Usage errors raise instead of exiting, so dispatch can return exit code 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    config = get_config()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        'document',
        type=str,
        help='Complex document (YAML)'
    )
    common.add_argument(
        '--samples',
        type=int,
        default=config.samples,
        help=f'Sample count (default: {config.samples})'
    )
    common.add_argument(
        '--seed',
        type=int,
        default=config.seed,
        help=f'Random seed (default: {config.seed})'
    )
    common.add_argument(
        '--tol',
        type=float,
        default=None,
        help='Relative tolerance of the checks (default: from config, 1e-7)'
    )
    common.add_argument(
        '--comparison-grid',
        type=int,
        default=config.comparison_grid,
        help='Points per side compared in each sampled triangle'
    )
    common.add_argument(
        '--oracle-resolution',
        type=int,
        default=config.oracle_resolution,
        help=f'Subdivision points per edge of the brute-force oracle, 0 to skip '
             f'(default: {config.oracle_resolution})'
    )
    common.add_argument(
        '--out',
        type=str,
        default=None,
        help='Write the report here instead of stdout'
    )
    common.add_argument(
        '--log-level',
        type=str,
        default=None,
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
        help='Log level for stderr (default: from config)'
    )

    parser = _Parser(prog='cat0-collapse',
                     description='CAT(0) checks, reroutes and verified collapses of '
                                 'piecewise Euclidean complexes')
    commands = parser.add_subparsers(dest='command', metavar='COMMAND',
                                     parser_class=_Parser)
    commands.required = True

    commands.add_parser('validate', parents=[common],
                        help='Parse a document and run the structural checks')
    commands.add_parser('check-cat0', parents=[common],
                        help='Link condition, sampled four-point and triangle checks, homology')

    property_a = commands.add_parser('property-a', parents=[common],
                                     help='Property A for one tetrahedron collapse')
    property_a.add_argument('--sigma', type=str, required=True, help='Tetrahedron, e.g. a,b,c,d')
    property_a.add_argument('--alpha', type=str, required=True, help='Its free triangle')

    geodesic = commands.add_parser('geodesic', parents=[common],
                                   help='Geodesic, reroute or balance point between two points')
    geodesic.add_argument('--p', type=str, required=True, help='First point, labels:coords')
    geodesic.add_argument('--q', type=str, required=True, help='Second point, labels:coords')
    geodesic.add_argument('--sigma', type=str, default=None,
                          help='Collapse this tetrahedron first and reroute')
    geodesic.add_argument('--alpha', type=str, default=None, help='Free triangle of --sigma')
    geodesic.add_argument('--edge', type=str, default=None,
                          help='Balance point on this edge between p and q in adjacent triangles')

    collapse = commands.add_parser('collapse', parents=[common],
                                   help='Collapse to a point, verifying every tetrahedron step')
    collapse.add_argument('--verify', dest='verify', action='store_true',
                          default=config.verify_each_step, help='Verify each step (default)')
    collapse.add_argument('--no-verify', dest='verify', action='store_false',
                          help='Collapse without verification')
    collapse.add_argument('--verify-spine', action='store_true', default=config.verify_spine,
                          help='Also sample triangles after lower-dimensional collapses')
    return parser


# =======================================================================
# Subcommands
# =======================================================================

def _tolerances(args: argparse.Namespace) -> Tolerances:
    tolerances = Tolerances.from_config()
    return tolerances if args.tol is None else tolerances.with_check(args.tol)


def _load(args: argparse.Namespace) -> Tuple[SimplicialComplex, MetricAssignment, Dict[str, Any]]:
    document = read_document(args.document)
    K, metric = document.build(_tolerances(args))
    return K, metric, document.metadata


def _require_points_in(K: SimplicialComplex, *points: SimplexPoint) -> None:
    for point in points:
        if point.simplex not in K:
            raise PreconditionError(f"{point.simplex} is not a simplex of the complex",
                                    operation='geodesic', subject=point.to_dict())


def cmd_validate(args: argparse.Namespace) -> Tuple[Dict[str, Any], int]:
    K, metric, metadata = _load(args)
    K.check_invariants()
    f_vector = K.f_vector
    result = {
        'command': 'validate',
        'name': metadata.get('name'),
        'dimension': K.dimension,
        'f_vector': f_vector,
        'euler_characteristic': sum((-1) ** d * n for d, n in enumerate(f_vector)),
        'betti': betti_numbers(K),
        'free_pairs': len(free_faces(K)),
        'edge_lengths': {'min': min(v for _, v in metric.items()),
                         'max': max(v for _, v in metric.items())} if len(metric) else None,
    }
    return result, EXIT_OK


def cmd_check_cat0(args: argparse.Namespace) -> Tuple[Dict[str, Any], int]:
    """Structural checks plus sampled checks on the star of every vertex."""
    K, metric, metadata = _load(args)
    tolerances = _tolerances(args)
    workers = get_config().workers
    vertices = K.vertices
    per_vertex = max(1, args.samples // len(vertices))

    four_point, triangles = [], []
    for index, vertex in enumerate(vertices):
        spec = NeighborhoodSpec.around(K, metric, vertex)
        seed = step_seed(args.seed, index)
        four_point.append(four_point_sample_check(spec, n_samples=per_vertex, seed=seed,
                                                  tolerances=tolerances, workers=workers))
        triangles.append(cat0_triangle_sample_check(spec, n_samples=per_vertex, seed=seed,
                                                    tolerances=tolerances,
                                                    comparison_grid=args.comparison_grid,
                                                    workers=workers))
    reports: List[CheckReport] = [
        edge_link_check(K, metric, tolerances),
        combine_reports('four_point', four_point),
        combine_reports('cat0_triangle', triangles),
        homology_necessary_check(K),
    ]
    verdict = Verdict.worst(*(r.verdict for r in reports))
    result = {
        'command': 'check-cat0',
        'name': metadata.get('name'),
        'verdict': verdict.value,
        'samples': args.samples,
        'seed': args.seed,
        'reports': [r.to_dict() for r in reports],
    }
    return result, EXIT_FAILED if verdict is Verdict.FAIL else EXIT_OK


def cmd_property_a(args: argparse.Namespace) -> Tuple[Dict[str, Any], int]:
    K, metric, _ = _load(args)
    tolerances = _tolerances(args)
    if args.tol is not None:
        tolerances = replace(tolerances, property_a_equality=args.tol)
    report = property_a_check(K, metric, parse_simplex(args.sigma), parse_simplex(args.alpha),
                              n_samples=args.samples, seed=args.seed, tolerances=tolerances,
                              workers=get_config().workers)
    return report.to_dict(), EXIT_FAILED if report.failed else EXIT_OK


def cmd_geodesic(args: argparse.Namespace) -> Tuple[Dict[str, Any], int]:
    """
    Three queries, by flag:

    --edge          balance point on the edge shared by the triangles of p and q
    --sigma/--alpha reroute of the segment p-q after collapsing (σ, α)
    neither         geodesic between p and q in the complex
    """
    K, metric, _ = _load(args)
    tolerances = _tolerances(args)
    p, q = parse_point(args.p), parse_point(args.q)
    _require_points_in(K, p, q)
    result: Dict[str, Any] = {'command': 'geodesic', 'p': p.to_dict(), 'q': q.to_dict()}

    if args.edge is not None:
        edge = parse_simplex(args.edge)
        shared = SimplexId.of(*p.simplex.intersection(q.simplex)) \
            if p.simplex.intersection(q.simplex) else None
        if edge.dimension != 1 or shared != edge:
            raise PreconditionError(f"{edge} is not the edge shared by the triangles of p and q",
                                    operation='balance_point', subject=edge.to_list())
        closed = balance_point_closed_form(metric, p, q, p.simplex, q.simplex,
                                           tolerances.planar)
        result['closed_form'] = closed.to_dict()
        try:
            result['bisection'] = balance_point_bisection(
                metric, p, q, p.simplex, q.simplex, get_config().bisection_iterations).to_dict()
        except Cat0Error as exc:
            result['bisection'] = {'error': exc.error_code, 'message': exc.message}
        return result, EXIT_OK

    if (args.sigma is None) != (args.alpha is None):
        raise PreconditionError("--sigma and --alpha go together", operation='geodesic')
    if args.sigma is not None:
        geom = CollapseGeometry(K, metric, parse_simplex(args.sigma), parse_simplex(args.alpha))
        neighborhood = geom.collapsed
        crossing = detect_crossing(geom, p, q, tolerances)
        if crossing is not None:
            reroute = reroute_after_collapse(geom, p, q, crossing, tolerances)
            result['reroute'] = reroute.to_dict()
            result['distance'] = reroute.chosen.length
        else:
            result['reroute'] = None
    else:
        neighborhood = K

    if 'distance' not in result:
        path = GeodesicSolver(neighborhood, metric, tolerances=tolerances).geodesic(p, q)
        result['geodesic'] = path.to_dict()
        result['distance'] = path.length
    if args.oracle_resolution > 0:
        oracle = brute_force_distance(neighborhood, metric, p, q, args.oracle_resolution)
        result['oracle'] = {'resolution': args.oracle_resolution, 'distance': oracle,
                            'relative_gap': (result['distance'] - oracle) / oracle
                            if oracle > 0 else 0.0}
    return result, EXIT_OK


def cmd_collapse(args: argparse.Namespace) -> Tuple[VerifiedTrace, int]:
    K, metric, metadata = _load(args)
    config = EngineConfig.from_config(
        verify_each_step=args.verify,
        n_samples=args.samples,
        seed=args.seed,
        tolerances=_tolerances(args),
        verify_spine=args.verify_spine,
        comparison_grid=args.comparison_grid,
    )
    trace = run(K, metric, config)
    if metadata.get('name'):
        trace.metadata['name'] = metadata['name']
    code = EXIT_OK if trace.outcome is EngineOutcome.COLLAPSED_TO_POINT else EXIT_FAILED
    return trace, code


HANDLERS = {
    'validate': cmd_validate,
    'check-cat0': cmd_check_cat0,
    'property-a': cmd_property_a,
    'geodesic': cmd_geodesic,
    'collapse': cmd_collapse,
}


# =======================================================================
# Entry points
# =======================================================================

def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding='utf-8')
    logger.debug(f"Report written to {path}")


def cli_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one subcommand and return its exit code.

    Returns:
        0 on pass or success, 1 on fail or stuck, 2 on usage or input errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)

    setup_logging(level=args.log_level, component='cli')
    run_log = get_run_logger('cli', f"{args.command}-seed{args.seed}")
    run_log.info(f"{args.command} {args.document}")
    try:
        result, code = HANDLERS[args.command](args)
        _write(emit_report(result), args.out)
    except Cat0Error as exc:
        run_log.error(str(exc))
        sys.stderr.write(f"cat0-collapse: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        run_log.error(f"Cannot write report: {exc}")
        sys.stderr.write(f"cat0-collapse: {exc}\n")
        return EXIT_USAGE
    run_log.info(f"{args.command} finished with exit code {code}")
    return code


def main():
    sys.exit(cli_dispatch())


if __name__ == '__main__':
    main()
