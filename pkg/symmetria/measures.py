"""
Symmetry measure engines.
Axiality (best mirror line), central symmetry (best point reflection) and
folding symmetry (best cap that folds back inside the body). Each engine
returns a SymmetryReport whose value is the best overlap actually found, so
it is always a valid lower bound for the measure.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from symmetria.errors import BadParam, ThinPolygon
from symmetria.geometry import (
    EMPTY, LineSpec, Point, _clip_raw, _diameter_sq, _edge_halfplanes, _reflect_point, _shoelace,
    aspect_ratio, centroid, clip, contains, diameter,
)
from symmetria.golden import golden_max
from symmetria.options import MeasureOptions

logger = logging.getLogger(__name__)

_MAX_ASPECT = 1e6
# Containment slack of the fold scans, relative to the diameter.
_FOLD_SLACK = 1e-12
# Offsets of the angle-grid pass are only used to rank angles.
_COARSE_TOLERANCE = 1e-6
_ANGLE_BLOCK = 128


@dataclass(frozen=True)
class SymmetryReport:
    measure: str
    value: float
    overlap_area: float
    body_area: float
    evaluations: int
    achieved_tolerance: float
    line: Optional[LineSpec] = None
    center: Optional[Point] = None
    fold_side: Optional[int] = None
    overlap_region: tuple = ()
    resolution_limited: bool = False

    def to_dict(self):
        out = {
            'measure': self.measure,
            'value': self.value,
            'overlap_area': self.overlap_area,
            'body_area': self.body_area,
            'evaluations': self.evaluations,
            'achieved_tolerance': self.achieved_tolerance,
            'resolution_limited': self.resolution_limited,
            'overlap_region': [[x, y] for x, y in self.overlap_region],
        }
        if self.line is not None:
            out['line'] = self.line.to_dict()
        if self.center is not None:
            out['center'] = [self.center.x, self.center.y]
        if self.fold_side is not None:
            out['fold_side'] = self.fold_side
        return out


def _prepare(P):
    ratio = aspect_ratio(P)
    if ratio > _MAX_ASPECT:
        raise ThinPolygon(f'aspect ratio {ratio:.3g} exceeds {_MAX_ASPECT:g}')
    verts = [(v.x, v.y) for v in P.vertices]
    return verts, _edge_halfplanes(verts), _shoelace(verts), diameter(P)


def _bracket_seeds(values, k):
    """Indices of the k best cyclic local maxima of a grid of values."""
    n = len(values)
    peaks = [i for i in range(n) if values[i] >= values[i - 1] and values[i] >= values[(i + 1) % n]]
    if not peaks:
        peaks = list(range(n))
    return sorted(peaks, key=lambda i: (-values[i], i))[:k]


def _map_blocks(fn, payload, thetas, workers):
    """Apply fn(payload, block) over contiguous angle blocks, results in grid order."""
    if workers <= 1 or len(thetas) < 2 * workers:
        return fn(payload, thetas)
    size = math.ceil(len(thetas) / workers)
    blocks = [thetas[i:i + size] for i in range(0, len(thetas), size)]
    out = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(fn, [payload] * len(blocks), blocks):
            out.extend(part)
    return out


# ── axiality ──

def _axial_region(verts, edges, nx, ny, d):
    """P ∩ refl(P): clip P by the mirror images of its own edge halfplanes."""
    poly = verts
    for ex, ey, h in edges:
        en = ex * nx + ey * ny
        poly = _clip_raw(poly, ex - 2.0 * en * nx, ey - 2.0 * en * ny, h - 2.0 * d * en)
        if len(poly) < 3:
            return []
    return poly


def _axial_overlap(verts, edges, theta, d):
    return _shoelace(_axial_region(verts, edges, math.cos(theta), math.sin(theta), d))


def _axial_slice(verts, edges, theta, tol):
    nx, ny = math.cos(theta), math.sin(theta)
    dots = [x * nx + y * ny for x, y in verts]
    return golden_max(lambda d: _shoelace(_axial_region(verts, edges, nx, ny, d)), min(dots), max(dots), tol)


def _axial_scan(payload, thetas):
    verts, edges, tol = payload
    out = []
    for theta in thetas:
        res = _axial_slice(verts, edges, theta, tol)
        out.append((res.value, theta, res.x, res.evaluations))
    return out


def overlap_ratio_axial(P, L):
    verts = [(v.x, v.y) for v in P.vertices]
    nx, ny = L.normal
    return _shoelace(_axial_region(verts, _edge_halfplanes(verts), nx, ny, L.d)) / _shoelace(verts)


def offset_profile(P, theta, samples=2048):
    """Overlap area of P with its mirror image at evenly spaced offsets across the support."""
    verts = [(v.x, v.y) for v in P.vertices]
    edges = _edge_halfplanes(verts)
    nx, ny = math.cos(theta), math.sin(theta)
    dots = [x * nx + y * ny for x, y in verts]
    offsets = np.linspace(min(dots), max(dots), samples)
    return offsets, np.array([_shoelace(_axial_region(verts, edges, nx, ny, d)) for d in offsets])


def best_offset_ratio(P, theta, tol=1e-12):
    """(max over offsets d of the overlap ratio at normal angle theta, maximizing d)."""
    verts = [(v.x, v.y) for v in P.vertices]
    res = _axial_slice(verts, _edge_halfplanes(verts), theta, tol * math.sqrt(_diameter_sq(verts)))
    return res.value / _shoelace(verts), res.x


def axiality(P, opts=None):
    opts = opts or MeasureOptions()
    verts, edges, area, diam = _prepare(P)
    tol = opts.offset_tolerance * diam
    coarse = max(tol, _COARSE_TOLERANCE * diam)
    n = opts.angle_samples
    thetas = [math.pi * i / n for i in range(n)]

    grid = _map_blocks(_axial_scan, (verts, edges, coarse), thetas, opts.workers)
    evaluations = sum(g[3] for g in grid)
    best = max((g[0], g[1], g[2]) for g in grid)
    best_width = coarse
    limited = False
    spacing = math.pi / n

    for i in _bracket_seeds([g[0] for g in grid], opts.refine_brackets):
        lo, hi = thetas[i] - spacing, thetas[i] + spacing
        inner = {}

        def slice_value(theta):
            res = _axial_slice(verts, edges, theta, tol)
            inner[theta] = res
            return res.value

        outer = golden_max(slice_value, lo, hi, opts.offset_tolerance, max_iter=opts.refine_rounds)
        evaluations += sum(r.evaluations for r in inner.values())
        res = inner.get(outer.x) or _axial_slice(verts, edges, outer.x, tol)
        logger.debug('axiality bracket %.6f: value %.12g at theta %.12g', thetas[i], res.value, outer.x)
        candidate = (res.value, outer.x, res.x)
        if candidate > best:
            best = candidate
            best_width = max(res.width, outer.width * diam)
            limited = min(outer.x - lo, hi - outer.x) <= outer.width

    value, theta, d = best
    line = LineSpec.make(theta, d)
    region = _axial_region(verts, edges, math.cos(theta), math.sin(theta), d)
    logger.info('axiality %.12g at theta=%.9f d=%.9f (%d evaluations)', value / area, theta, d, evaluations)
    return SymmetryReport(
        measure='axiality',
        value=min(value / area, 1.0 + 1e-12),
        overlap_area=value,
        body_area=area,
        evaluations=evaluations,
        achieved_tolerance=best_width,
        line=line,
        overlap_region=tuple(region),
        resolution_limited=limited,
    )


# ── central symmetry ──

def _central_region(verts, edges, cx, cy):
    """P ∩ (2c − P)."""
    poly = verts
    for ex, ey, h in edges:
        poly = _clip_raw(poly, -ex, -ey, h - 2.0 * (ex * cx + ey * cy))
        if len(poly) < 3:
            return []
    return poly


def overlap_ratio_central(P, c):
    verts = [(v.x, v.y) for v in P.vertices]
    return _shoelace(_central_region(verts, _edge_halfplanes(verts), c[0], c[1])) / _shoelace(verts)


def _chord(edges, c, u):
    """Parameter range s with c + s·u inside the polygon."""
    lo, hi = -math.inf, math.inf
    for ex, ey, h in edges:
        eu = ex * u[0] + ey * u[1]
        r = h - (ex * c[0] + ey * c[1])
        if eu > 1e-15:
            lo = max(lo, r / eu)
        elif eu < -1e-15:
            hi = min(hi, r / eu)
    return lo, hi


def central_symmetry(P, opts=None):
    opts = opts or MeasureOptions()
    verts, edges, area, diam = _prepare(P)
    tol = opts.offset_tolerance * diam
    r = math.sqrt(0.5)
    directions = [(1.0, 0.0), (0.0, 1.0), (r, r), (r, -r)]
    evaluations = 0

    def f(x, y):
        return _shoelace(_central_region(verts, edges, x, y))

    c = tuple(centroid(P))
    best = f(*c)
    evaluations += 1
    for _ in range(opts.refine_rounds):
        start = best
        for u in directions:
            lo, hi = _chord(edges, c, u)
            res = golden_max(lambda s: f(c[0] + s * u[0], c[1] + s * u[1]), lo, hi, tol)
            evaluations += res.evaluations
            if res.value > best:
                best = res.value
                c = (c[0] + res.x * u[0], c[1] + res.x * u[1])
        if best - start <= 1e-15 * area:
            break

    # Pattern search to step off kinks of the objective.
    compass = directions + [(-x, -y) for x, y in directions]
    step = 1e-3 * diam
    while step > tol:
        moved = False
        for ux, uy in compass:
            x, y = c[0] + step * ux, c[1] + step * uy
            value = f(x, y)
            evaluations += 1
            if value > best:
                best, c, moved = value, (x, y), True
                break
        if not moved:
            step *= 0.5

    region = _central_region(verts, edges, c[0], c[1])
    logger.info('central symmetry %.12g at (%.9f, %.9f) (%d evaluations)', best / area, c[0], c[1], evaluations)
    return SymmetryReport(
        measure='central',
        value=min(best / area, 1.0 + 1e-12),
        overlap_area=best,
        body_area=area,
        evaluations=evaluations,
        achieved_tolerance=tol,
        center=Point(*c),
        overlap_region=tuple(region),
    )


# ── folding symmetry ──

def folding_feasible(P, H, tol=1e-9):
    """True iff the cap P ∩ H reflected across the boundary of H stays inside P."""
    cap = clip(P, H)
    if cap is EMPTY:
        return True
    nx, ny = H.line.normal
    return all(contains(P, _reflect_point(v, nx, ny, H.line.d), tol) for v in cap.vertices)


def fold_cap_area(P, theta, d):
    """Area of the cap {x ∈ P : x·n(θ) ≥ d}."""
    return _shoelace(_clip_raw(list(P.vertices), math.cos(theta), math.sin(theta), d))


class _FoldKernel:
    """Vectorized fold-feasibility tests for one polygon.

    A vertex v of the cap x·n ≥ d reflects to a point inside P iff
    d ≥ v·n − (slack_vj + tol)/(2·e_j·n) for every edge normal e_j with
    e_j·n > 0, where slack_vj = e_j·v − h_j.
    """

    def __init__(self, verts, edges, diam):
        self.verts = verts
        self.V = np.asarray(verts, dtype=float)
        E = np.asarray(edges, dtype=float)
        self.E = E[:, :2]
        self.slack = np.maximum(self.V @ self.E.T - E[:, 2], 0.0)
        self.tol = _FOLD_SLACK * diam

    def thresholds(self, thetas):
        N = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)
        S = N @ self.V.T
        C = N @ self.E.T
        with np.errstate(divide='ignore', invalid='ignore'):
            ratio = np.where(C[:, None, :] > 1e-15,
                             (self.slack[None, :, :] + self.tol) / (2.0 * C[:, None, :]),
                             np.inf)
        return S, S - ratio.min(axis=2)

    @staticmethod
    def feasible(S, L, D):
        """Feasibility of offsets D (A × K) given projections S and thresholds L (A × n)."""
        in_cap = S[:, None, :] > D[:, :, None]
        return (~in_cap | (L[:, None, :] <= D[:, :, None])).all(axis=2)

    def best_offsets(self, thetas, samples, tol):
        """Scan `samples` offsets per angle, then bisect to the feasibility edge."""
        S, L = self.thresholds(thetas)
        lo, hi = S.min(axis=1), S.max(axis=1)
        steps = np.arange(samples + 1) / samples
        D = lo[:, None] + (hi - lo)[:, None] * steps[None, :]
        ok = self.feasible(S, L, D)
        first = ok.argmax(axis=1)
        rows = np.arange(len(thetas))
        upper = D[rows, first]
        lower = np.where(first > 0, D[rows, np.maximum(first - 1, 0)], upper)
        width = float((upper - lower).max(initial=0.0))
        rounds = 0 if width <= tol else int(math.ceil(math.log2(width / tol)))
        for _ in range(rounds):
            mid = 0.5 * (lower + upper)
            good = self.feasible(S, L, mid[:, None])[:, 0]
            upper = np.where(good, mid, upper)
            lower = np.where(good, lower, mid)
        return upper, float((upper - lower).max(initial=0.0)), (samples + 1 + rounds) * len(thetas)

    def cap_area(self, theta, d):
        return _shoelace(_clip_raw(self.verts, math.cos(theta), math.sin(theta), d))


def folding(P, opts=None):
    opts = opts or MeasureOptions()
    verts, edges, area, diam = _prepare(P)
    tol = opts.offset_tolerance * diam
    kernel = _FoldKernel(verts, edges, diam)
    n = 2 * opts.angle_samples
    thetas = 2.0 * math.pi * np.arange(n) / n

    caps = []
    grid_offsets = []
    evaluations = 0
    for start in range(0, n, _ANGLE_BLOCK):
        block = thetas[start:start + _ANGLE_BLOCK]
        offsets, _, count = kernel.best_offsets(block, opts.fold_offset_samples, tol)
        evaluations += count
        caps.extend(kernel.cap_area(float(t), float(d)) for t, d in zip(block, offsets))
        grid_offsets.extend(offsets)

    best = max((caps[i], float(thetas[i]), float(grid_offsets[i])) for i in range(n))
    best_width = tol
    limited = False
    spacing = 2.0 * math.pi / n

    def cap_at(theta):
        offsets, width, count = kernel.best_offsets(np.array([theta]), opts.fold_offset_samples, tol)
        return kernel.cap_area(theta, float(offsets[0])), float(offsets[0]), width, count

    for i in _bracket_seeds(caps, opts.refine_brackets):
        lo, hi = float(thetas[i]) - spacing, float(thetas[i]) + spacing
        seen = {}

        def cap_value(theta):
            seen[theta] = cap_at(theta)
            return seen[theta][0]

        outer = golden_max(cap_value, lo, hi, opts.offset_tolerance, max_iter=opts.refine_rounds)
        evaluations += sum(s[3] for s in seen.values())
        value, d, width, _ = seen.get(outer.x) or cap_at(outer.x)
        candidate = (value, outer.x, d)
        if candidate > best:
            best = candidate
            best_width = max(width, outer.width * diam)
            limited = min(outer.x - lo, hi - outer.x) <= outer.width

    value, theta, d = best
    line = LineSpec.make(theta, d)
    region = _clip_raw(verts, math.cos(theta), math.sin(theta), d)
    logger.info('folding %.12g at theta=%.9f d=%.9f (%d evaluations)', 2 * value / area, theta, d, evaluations)
    return SymmetryReport(
        measure='folding',
        value=min(2.0 * value / area, 1.0 + 1e-12),
        overlap_area=value,
        body_area=area,
        evaluations=evaluations,
        achieved_tolerance=best_width,
        line=line,
        fold_side=1,
        overlap_region=tuple(region),
        resolution_limited=limited,
    )


MEASURES = {
    'axiality': ('Axiality', axiality),
    'central': ('Central symmetry', central_symmetry),
    'folding': ('Folding symmetry', folding),
}


def measure(name, P, opts=None):
    """Dispatch to the engine registered under `name`."""
    if name not in MEASURES:
        raise BadParam(f'unknown measure {name!r}; expected one of {sorted(MEASURES)}')
    label, engine = MEASURES[name]
    logger.info('Measuring %s of a %d-gon', label.lower(), len(P))
    return engine(P, opts)
