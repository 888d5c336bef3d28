"""
Command-line surface: measurements, constructions, certificates, bounds,
searches and drawings. Every command prints one report on standard output
(JSON with --json, plain text otherwise); diagnostics go to stderr.
"""
import argparse
import json
import logging
import math
import os
import sys
import time
from pathlib import Path
from typing import Any, Dict

import pandas as pd
from pydantic import BaseModel, ValidationError

from symmetria import __version__
from symmetria.certificates import AXIAL_BOUND, axial_certificate, bounds_table
from symmetria.constructions import (
    cs_fold_construction, folding_parallelogram_closed_form, formula_check_table, largest_cap_lower_bound,
    inscribed_rectangle, parallelogram, parallelogram_fold_candidates, quad_area, quad_family, rectangle_caps,
)
from symmetria.errors import InternalInconsistency, SymmetriaError
from symmetria.export import export_table
from symmetria.folding_program import (
    CERTIFIED_FLOOR, RESIDUAL_TOLERANCE, VARIANTS, FoldingProgramPoint, folding_program_residuals,
    folding_program_search,
)
from symmetria.geometry import HalfPlane, polygon_area
from symmetria.measures import MEASURES, folding_feasible, measure
from symmetria.options import AnnealConfig, MeasureOptions
from symmetria.polygon_io import polygon_document, read_polygon, write_polygon
from symmetria.render import write_report_svg
from symmetria.search import anneal_seeds, merge_results

logger = logging.getLogger('symmetria.cli')

_DIGITS = 12
_FORMULA_TOLERANCE = 1e-5


class CommandReport(BaseModel):
    command: str
    inputs_echo: Dict[str, Any]
    result: Dict[str, Any]
    wall_time: float
    version: str = __version__

    def to_json(self):
        return json.dumps(_rounded(self.model_dump()), sort_keys=True, indent=2)


def _rounded(value):
    """12 significant digits for floats, None for non-finite ones, recursively."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        return float(f'{value:.{_DIGITS}g}') if math.isfinite(value) else None
    if isinstance(value, dict):
        return {str(k): _rounded(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_rounded(v) for v in value]
    if hasattr(value, 'item'):
        return _rounded(value.item())
    return value


def _rows(frame):
    return [{k: _rounded(v) for k, v in row.items()} for row in frame.to_dict(orient='records')]


def _workers():
    raw = os.environ.get('SYMMETRIA_THREADS')
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f'SYMMETRIA_THREADS must be a positive integer, got {raw!r}')
    if n < 1:
        raise argparse.ArgumentTypeError(f'SYMMETRIA_THREADS must be a positive integer, got {raw!r}')
    return n


def _maybe_export(frame, args, title, source):
    if getattr(args, 'xlsx', None):
        export_table(frame, args.xlsx, title, source)


# ── commands ──

def cmd_measure(args):
    P = read_polygon(args.polygon)
    opts = MeasureOptions(angle_samples=args.angles, offset_tolerance=args.tol, workers=_workers())
    report = measure(args.measure, P, opts)
    if args.svg:
        write_report_svg(P, report, args.svg)
    return report.to_dict()


def cmd_render(args):
    P = read_polygon(args.polygon)
    report = measure(args.measure, P, MeasureOptions(workers=_workers()))
    write_report_svg(P, report, args.svg)
    return {'svg': str(args.svg), 'measure': report.measure, 'value': report.value}


def cmd_family(args):
    if args.family == 'quad':
        P = quad_family(args.eps)
        result = {'family': 'quad', 'epsilon': args.eps, 'area': quad_area(args.eps)}
    else:
        P = parallelogram(args.d1, args.h)
        result = {
            'family': 'parallelogram', 'd1': args.d1, 'h': args.h,
            'folding_closed_form': folding_parallelogram_closed_form(args.d1, args.h),
            'fold_candidates': list(parallelogram_fold_candidates(args.d1, args.h)),
        }
    result['polygon'] = polygon_document(P)
    if args.out:
        write_polygon(P, args.out)
        result['out'] = str(args.out)
    return result


def cmd_inscribe_rect(args):
    P = read_polygon(args.polygon)
    rect = inscribed_rectangle(P, args.area)
    area = polygon_area(P)
    caps = [polygon_area(c) for c in rectangle_caps(P, rect)]
    ratio = rect.area / area
    return {
        'rectangle': rect.to_dict(),
        'area_ratio': ratio,
        'cap_areas': caps,
        'largest_cap_ratio': max(caps) / area,
        'largest_cap_lower_bound': largest_cap_lower_bound(min(ratio, 0.5)),
    }


def cmd_verify_formulas(args):
    frame = formula_check_table(tuple(args.eps), args.samples)
    _maybe_export(frame, args, 'Overlap formulas', 'analytic maxima vs numeric overlap')
    worst = float(frame['max_difference'].max())
    if not frame['valid'].all():
        raise InternalInconsistency(f'{int((~frame["valid"]).sum())} sampled angles leave their overlap case')
    if worst > _FORMULA_TOLERANCE:
        raise InternalInconsistency(f'analytic and numeric overlaps differ by {worst:.3g}')
    return {'rows': _rows(frame), 'worst_difference': worst, 'tolerance': _FORMULA_TOLERANCE}


def cmd_verify_cs_fold(args):
    P = read_polygon(args.polygon)
    report = cs_fold_construction(P)
    feasible = folding_feasible(P, HalfPlane(report.line, report.fold_side))
    if not feasible:
        raise InternalInconsistency('constructed fold does not map its cap into the polygon')
    return {'construction': report.to_dict(), 'fold_feasible': feasible, 'floor': 4.0 / 9.0}


def cmd_verify_program(args):
    point = FoldingProgramPoint.model_validate_json(Path(args.point).read_text())
    residuals = folding_program_residuals(point, args.variant)
    violated = [name for name, r in residuals if r > RESIDUAL_TOLERANCE]
    return {
        'variant': args.variant,
        'residuals': dict(residuals),
        'violated': violated,
        'feasible': not violated,
    }


def cmd_certify_axial(args):
    cert = axial_certificate()
    out = cert.to_dict()
    out['decimal'] = float(cert.value)
    if cert.value == AXIAL_BOUND:
        out['closed_form'] = '(2/41)(10 + 3√2)'
    out['transcript'] = cert.transcript()
    return out


def cmd_certify_folding(args):
    res = folding_program_search(args.budget, args.seed, shards=args.shards)
    out = res.to_dict()
    out['certified_floor'] = CERTIFIED_FLOOR
    return out


def cmd_bounds(args):
    frame = bounds_table(args.n_max)
    _maybe_export(frame, args, 'Symmetry bounds', f'dimensions 2..{args.n_max}')
    return {'rows': _rows(frame)}


def cmd_search(args):
    start = read_polygon(args.start) if args.start else None
    cfg = AnnealConfig(n_vertices=args.vertices, iterations=args.iters, seed=args.seeds[0])
    results = anneal_seeds(cfg, args.seeds, start, workers=min(_workers(), len(args.seeds)))
    best = merge_results(results)
    out = best.to_dict()
    out['per_seed'] = [{'seed': r.seed, 'best_value': r.best_value} for r in results]
    if args.out:
        Path(args.out).write_text(json.dumps(_rounded(out), sort_keys=True, indent=2) + '\n')
    if args.svg:
        write_report_svg(best.best_polygon, measure('axiality', best.best_polygon), args.svg)
    _maybe_export(best.trace_frame(), args, 'Annealing trace', f'seed {best.seed}')
    return out


# ── grammar ──

def _add_polygon(p):
    p.add_argument('--polygon', required=True, type=Path, help='polygon JSON file')


def build_parser():
    # --json is accepted before or after the subcommand; SUPPRESS keeps a subparser from resetting it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', default=argparse.SUPPRESS, help='print the report as JSON')
    parser = argparse.ArgumentParser(prog='symmetria', description='Reflection-symmetry measures of convex polygons.')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='-v for INFO, -vv for DEBUG on stderr')
    parser.add_argument('--json', action='store_true', help='print the report as JSON')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('measure', parents=[common], help='compute a symmetry measure')
    p.add_argument('measure', choices=sorted(MEASURES))
    _add_polygon(p)
    p.add_argument('--angles', type=int, default=720)
    p.add_argument('--tol', type=float, default=1e-10)
    p.add_argument('--svg', type=Path)
    p.set_defaults(handler=cmd_measure)

    p = sub.add_parser('render', parents=[common], help='draw a polygon with its optimal line or center')
    _add_polygon(p)
    p.add_argument('--measure', required=True, choices=sorted(MEASURES))
    p.add_argument('--svg', required=True, type=Path)
    p.set_defaults(handler=cmd_render)

    p = sub.add_parser('family', parents=[common], help='write a member of an extremal family')
    fam = p.add_subparsers(dest='family', required=True)
    q = fam.add_parser('quad', parents=[common])
    q.add_argument('--eps', required=True, type=float)
    q.add_argument('--out', type=Path)
    q = fam.add_parser('parallelogram', parents=[common])
    q.add_argument('--d1', required=True, type=float)
    q.add_argument('--h', required=True, type=float)
    q.add_argument('--out', type=Path)
    p.set_defaults(handler=cmd_family)

    p = sub.add_parser('inscribe-rect', parents=[common],
                       help='inscribe a rectangle of given area in a centrally symmetric polygon')
    _add_polygon(p)
    p.add_argument('--area', required=True, type=float)
    p.set_defaults(handler=cmd_inscribe_rect)

    p = sub.add_parser('verify', parents=[common], help='numerical verification suites')
    ver = p.add_subparsers(dest='suite', required=True)
    q = ver.add_parser('appendix-b', parents=[common], aliases=['overlap-formulas'])
    q.add_argument('--eps', type=float, nargs='+', default=[0.01, 0.05])
    q.add_argument('--samples', type=int, default=20)
    q.add_argument('--xlsx', type=Path)
    q.set_defaults(handler=cmd_verify_formulas)
    q = ver.add_parser('cs-fold', parents=[common])
    _add_polygon(q)
    q.set_defaults(handler=cmd_verify_cs_fold)
    q = ver.add_parser('program-constraints', parents=[common])
    q.add_argument('--point', required=True, type=Path)
    q.add_argument('--variant', choices=VARIANTS, default='standard')
    q.set_defaults(handler=cmd_verify_program)

    p = sub.add_parser('certify', parents=[common], help='exact and sampled certificates')
    cert = p.add_subparsers(dest='certificate', required=True)
    q = cert.add_parser('theorem-1-1', parents=[common], aliases=['axiality-bound'])
    q.set_defaults(handler=cmd_certify_axial)
    q = cert.add_parser('folding-search', parents=[common])
    q.add_argument('--budget', required=True, type=int)
    q.add_argument('--seed', required=True, type=int)
    q.add_argument('--shards', type=int, default=1)
    q.set_defaults(handler=cmd_certify_folding)

    p = sub.add_parser('bounds', parents=[common], help='closed-form bounds by dimension')
    bnd = p.add_subparsers(dest='table', required=True)
    q = bnd.add_parser('table', parents=[common])
    q.add_argument('--n-max', required=True, type=int)
    q.add_argument('--xlsx', type=Path)
    q.set_defaults(handler=cmd_bounds)

    p = sub.add_parser('search', parents=[common], help='simulated annealing for low-axiality polygons')
    p.add_argument('--vertices', required=True, type=int)
    p.add_argument('--iters', required=True, type=int)
    p.add_argument('--seeds', required=True, type=int, nargs='+')
    p.add_argument('--start', type=Path)
    p.add_argument('--out', type=Path)
    p.add_argument('--svg', type=Path)
    p.add_argument('--xlsx', type=Path)
    p.set_defaults(handler=cmd_search)
    return parser


def _echo(args):
    skip = {'handler', 'verbose', 'json'}
    return {k: str(v) if isinstance(v, Path) else v for k, v in vars(args).items() if k not in skip}


def _command_name(args):
    parts = [args.command]
    for key in ('family', 'suite', 'certificate', 'table', 'measure'):
        value = getattr(args, key, None)
        if isinstance(value, str) and args.command != 'render':
            parts.append(value)
    return ' '.join(parts)


def _render_text(report):
    lines = [f'{report.command}  (symmetria {report.version}, {report.wall_time:.3f} s)']
    for key, value in sorted(report.result.items()):
        if key == 'rows':
            lines.append(pd.DataFrame(value).to_string(index=False))
        elif key == 'transcript':
            lines.extend(value)
        elif isinstance(value, float):
            lines.append(f'{key}: {value:.{_DIGITS}g}')
        elif isinstance(value, (dict, list)):
            lines.append(f'{key}: {json.dumps(_rounded(value), sort_keys=True, ensure_ascii=False)}')
        else:
            lines.append(f'{key}: {value}')
    return '\n'.join(lines)


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s', force=True)

    command = _command_name(args)
    start = time.perf_counter()
    try:
        result = args.handler(args)
        code = 0
    except (ValidationError, argparse.ArgumentTypeError) as exc:
        print(f'usage error: {exc}', file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    except SymmetriaError as exc:
        name = type(exc).__name__
        print(f'error: {name}: {exc}', file=sys.stderr)
        result = {'error': name, 'message': str(exc)}
        code = 3
    except OSError as exc:
        print(f'error: {type(exc).__name__}: {exc}', file=sys.stderr)
        return 2

    report = CommandReport(
        command=command,
        inputs_echo=_rounded(_echo(args)),
        result=_rounded(result),
        wall_time=time.perf_counter() - start,
    )
    if args.json:
        print(report.to_json())
    elif code == 0:
        print(_render_text(report))
    logger.info('%s finished in %.3f s with exit code %d', command, report.wall_time, code)
    return code


if __name__ == '__main__':
    sys.exit(run())
