"""
Shape families and constructive procedures.
The thin quadrilateral family whose axiality tends to (1+√2)/3, closed-form
overlap maxima for two of its reflection cases, the sheared parallelogram
family with its closed-form folding value, rectangles inscribed in centrally
symmetric polygons, and the fold construction built on them.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

from symmetria.errors import AreaTooLarge, BadParam, NoSignChange, NotCentrallySymmetric, Singularity
from symmetria.geometry import (
    EMPTY, HalfPlane, LineSpec, Point, _reflect_point, _shoelace, centroid, clip, diameter,
    is_centrally_symmetric, normalize_polygon, polygon_area,
)
from symmetria.golden import golden_max
from symmetria.measures import SymmetryReport, best_offset_ratio, overlap_ratio_axial

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
PHI = (1.0 + math.sqrt(5.0)) / 2.0
QUAD_LIMIT = (1.0 + SQRT2) / 3.0

_SWEEP_SAMPLES = 4096
_SWEEP_TOLERANCE = 1e-10
_RECTANGLE_TOLERANCE = 1e-8


@dataclass(frozen=True)
class QuadFamilyParam:
    epsilon: float

    def __post_init__(self):
        if not (0.0 < self.epsilon <= 0.5):
            raise BadParam(f'epsilon must lie in (0, 0.5], got {self.epsilon}')


@dataclass(frozen=True)
class ParallelogramParam:
    d1: float
    h: float

    def __post_init__(self):
        if not (0.0 <= self.d1 < 1.0):
            raise BadParam(f'd1 must lie in [0, 1), got {self.d1}')
        if not (0.0 < self.h <= 1.0):
            raise BadParam(f'h must lie in (0, 1], got {self.h}')
        if self.d1 ** 2 + self.h ** 2 > 1.0 + 1e-12:
            raise BadParam('slanted side longer than the unit base')


@dataclass(frozen=True)
class RectangleInBody:
    corners: tuple
    area: float

    def to_dict(self):
        return {'corners': [[p.x, p.y] for p in self.corners], 'area': self.area}


def _as_quad(p):
    return p if isinstance(p, QuadFamilyParam) else QuadFamilyParam(float(p))


# ── quadrilateral family ──

def quad_family(p):
    eps = _as_quad(p).epsilon
    return normalize_polygon([(0.0, 0.0), (1.0, 0.0), (1.0, SQRT2 * eps / (1.0 + SQRT2)), (1.0 / SQRT2, eps)])


def quad_area(eps):
    return (2.0 - SQRT2) * eps


def caseA_max_angle(eps):
    return 0.5 * math.atan(SQRT2 * eps / (1.0 + SQRT2))


def _check_caseA(eps, alpha):
    eps = _as_quad(eps).epsilon
    if not (-1e-15 <= alpha <= caseA_max_angle(eps) + 1e-12):
        raise BadParam(f'alpha={alpha} outside the small-angle case [0, {caseA_max_angle(eps)}]')
    return eps


def caseA_ratio(eps, alpha):
    """Maximal overlap ratio over translates of a near-vertical mirror at angle alpha."""
    eps = _check_caseA(eps, alpha)
    k = SQRT2 * eps
    return (1.0 + SQRT2) / (k * math.sin(2 * alpha) + 2.0 * math.cos(2 * alpha) + 1.0)


def caseA_ratio_printed(eps, alpha):
    """The single-angle form of the same maximum; equal to caseA_ratio only at alpha = 0."""
    eps = _check_caseA(eps, alpha)
    k = SQRT2 * eps
    return (1.0 + SQRT2) / (k * math.sin(alpha) + 2.0 * math.cos(alpha) + 1.0)


def caseA_translate(eps, alpha):
    """x-intercept t of the best mirror at angle alpha."""
    eps = _check_caseA(eps, alpha)
    k = SQRT2 * eps
    a = 1.0 / (1.0 + k * math.tan(alpha))
    b = 1.0 / (1.0 + k * math.tan(2 * alpha))
    c = math.cos(2 * alpha)
    p, q = (1.0 + c) / c, 1.0 / c
    return b * p * q / (b * p * p - a)


def caseA_line(eps, alpha):
    return LineSpec.make(alpha, caseA_translate(eps, alpha) * math.cos(alpha))


def caseA_configuration_valid(eps, alpha, t):
    """True when P, Q, S, R bound the whole left half of the overlap for the mirror through (t, 0)."""
    eps = _as_quad(eps).epsilon
    k = SQRT2 * eps
    nx, ny = math.cos(alpha), math.sin(alpha)
    d = t * nx
    slack = 1e-12 * eps
    cx, cy = 1.0 / SQRT2, eps
    dx, dy = 1.0, (2.0 - SQRT2) * eps
    for x, y in (_reflect_point((cx, cy), nx, ny, d), _reflect_point((dx, dy), nx, ny, d)):
        # images of C and D stay above AC
        if y - k * x < -slack:
            return False
    qx = t / (1.0 + k * math.tan(alpha))
    rx = t - (1.0 - t) / math.cos(2 * alpha)
    return 0.0 <= rx <= t <= 1.0 and qx <= cx


def _bisect_validity(valid, lo, hi, iterations=60):
    """Boundary between valid(lo) and valid(hi), returned on the valid side."""
    good, bad = (lo, hi) if valid(lo) else (hi, lo)
    for _ in range(iterations):
        mid = 0.5 * (good + bad)
        if valid(mid):
            good = mid
        else:
            bad = mid
    return good


def caseA_valid_max_angle(eps):
    """Largest small angle whose best mirror still cuts the overlap as P, Q, S, R."""
    eps = _as_quad(eps).epsilon
    top = caseA_max_angle(eps)

    def valid(alpha):
        return caseA_configuration_valid(eps, alpha, caseA_translate(eps, alpha))

    if valid(top):
        return top
    return _bisect_validity(valid, 0.0, top)


def caseC_max_angle(eps):
    return 0.5 * math.atan(SQRT2 * eps)


def _check_caseC(eps, beta):
    eps = _as_quad(eps).epsilon
    if not (-1e-15 <= beta <= caseC_max_angle(eps) + 1e-12):
        raise BadParam(f'beta={beta} outside the middle-angle case [0, {caseC_max_angle(eps)}]')
    return eps


def caseC_quadrilateral(eps, beta, t):
    """Vertices P, Q, R, S of the overlap below a near-horizontal mirror y = x·tan β + t."""
    k = SQRT2 * eps
    tb, T = math.tan(beta), math.tan(2 * beta)
    if abs(k - tb) < 1e-15 or abs(k - T) < 1e-12 or abs(k + T) < 1e-15:
        raise Singularity(f'mirror parallel to a reflected edge at beta={beta}')
    px = t / (k - tb)
    qx = px * (k * k * T + 2.0 * k - T) / (k - T)
    rx = ((2.0 * eps - t) / math.cos(2 * beta) + k * t * T - t) / (k + T)
    sx = (2.0 * eps - t) / (tb + k)
    return (px, k * px), (qx, 0.0), (rx, 0.0), (sx, 2.0 * eps - k * sx)


def _caseC_area(eps, beta, t):
    return _shoelace(caseC_quadrilateral(eps, beta, t))


def _caseC_quadratic(eps, beta):
    """Coefficients (a, b, c) of the quadrilateral area a·t² + b·t + c (exact in t)."""
    f0 = _caseC_area(eps, beta, 0.0)
    f1 = _caseC_area(eps, beta, eps)
    f2 = _caseC_area(eps, beta, 2.0 * eps)
    a = (f2 - 2.0 * f1 + f0) / (2.0 * eps * eps)
    b = (f1 - f0) / eps - a * eps
    return a, b, f0


def caseC_translate(eps, beta):
    """y-intercept t of the best mirror at angle beta above horizontal."""
    eps = _check_caseC(eps, beta)
    a, b, _ = _caseC_quadratic(eps, beta)
    if a >= 0.0:
        raise Singularity(f'overlap area not concave in t at beta={beta}')
    return -b / (2.0 * a)


def caseC_m(eps, beta):
    """Maximal overlap ratio over translates of the near-horizontal mirror at angle beta."""
    eps = _check_caseC(eps, beta)
    a, b, c = _caseC_quadratic(eps, beta)
    if a >= 0.0:
        raise Singularity(f'overlap area not concave in t at beta={beta}')
    return 2.0 * (c - b * b / (4.0 * a)) / quad_area(eps)


def caseC_m_numeric(eps, beta, tol=1e-13):
    """Golden-section maximum of the same quadrilateral area over t ∈ [0, 2ε]."""
    eps = _check_caseC(eps, beta)
    res = golden_max(lambda t: _caseC_area(eps, beta, t), 0.0, 2.0 * eps, tol)
    return 2.0 * res.value / quad_area(eps)


def caseC_m_printed(eps, beta):
    """The trigonometric closed form as printed; it matches caseC_m in the limit beta → 0."""
    eps = _check_caseC(eps, beta)
    k = SQRT2 * eps
    cb, c3, c5 = math.cos(beta), math.cos(3 * beta), math.cos(5 * beta)
    sb, s3, s5 = math.sin(beta), math.sin(3 * beta), math.sin(5 * beta)
    h = (-(14 * k * k + 4 * k) * cb - 8 * k * k * c3 + (4 * k - 2 * k * k) * c5 + (2 * k - 4) * sb
         + (k ** 3 - 2 * k * k + 9 * k - 2) * s3 + (k ** 3 - 2 * k * k - k + 2) * s5)
    if abs(h) < 1e-12:
        raise Singularity(f'|h(beta)| = {abs(h):.3g} below 1e-12')
    return -4.0 * (1.0 + SQRT2) * k * ((k + 2) * cb + (k - 2) * c3 - 2 * sb) / h


def caseC_line(eps, beta):
    return LineSpec.make(math.pi / 2 + beta, caseC_translate(eps, beta) * math.cos(beta))


def caseC_configuration_valid(eps, beta, t):
    """True when P, Q, R, S bound the whole lower half of the overlap."""
    (px, _), (qx, _), (rx, _), (sx, _) = caseC_quadrilateral(eps, beta, t)
    nx, ny = -math.sin(beta), math.cos(beta)
    d = t * math.cos(beta)
    cx, cy = 1.0 / SQRT2, eps
    c_image_y = cy - 2.0 * (cx * nx + cy * ny - d) * ny
    return 0.0 <= px <= cx <= sx <= 1.0 and 0.0 <= qx <= rx <= 1.0 and c_image_y <= 0.0


# The far end of the middle-angle range makes the reflected AC parallel to AB.
_CASE_C_REACH = 0.95


def caseC_valid_angles(eps):
    """Interval [lo, hi] of middle angles whose best mirror cuts the overlap as P, Q, R, S."""
    eps = _as_quad(eps).epsilon
    hi = _CASE_C_REACH * caseC_max_angle(eps)

    def valid(beta):
        try:
            return caseC_configuration_valid(eps, beta, caseC_translate(eps, beta))
        except Singularity:
            return False

    if not valid(hi):
        raise Singularity(f'no middle angle up to {hi:.6g} keeps the quadrilateral overlap at eps={eps}')
    if valid(0.0):
        return 0.0, hi
    return _bisect_validity(valid, 0.0, hi), hi


# ── parallelogram family ──

def _as_parallelogram(p, h=None):
    if isinstance(p, ParallelogramParam):
        return p
    return ParallelogramParam(float(p), float(h))


def parallelogram(p, h=None):
    p = _as_parallelogram(p, h)
    return normalize_polygon([(0.0, 0.0), (1.0, 0.0), (1.0 + p.d1, p.h), (p.d1, p.h)])


def parallelogram_fold_candidates(p, h=None):
    """Best fold per case: line cutting the long side, fold onto the slanted side, straight fold."""
    p = _as_parallelogram(p, h)
    return (
        1.0 / (1.0 - p.d1 + math.sqrt(1.0 - p.h * p.h)),
        math.hypot(p.d1, p.h),
        1.0 - p.d1,
    )


def folding_parallelogram_closed_form(p, h=None):
    return max(parallelogram_fold_candidates(p, h))


# ── inscribed rectangles ──

class _Boundary:
    """Arc-length parametrization of a polygon centred at the origin."""

    def __init__(self, verts):
        self.verts = verts
        self.n = len(verts)
        self.starts = [0.0]
        for i in range(self.n):
            a, b = verts[i], verts[(i + 1) % self.n]
            self.starts.append(self.starts[-1] + math.hypot(b[0] - a[0], b[1] - a[1]))
        self.length = self.starts[-1]

    def locate(self, s):
        s %= self.length
        lo, hi = 0, self.n
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.starts[mid] <= s:
                lo = mid
            else:
                hi = mid
        return lo, s - self.starts[lo]

    def point(self, s):
        i, offset = self.locate(s)
        a, b = self.verts[i], self.verts[(i + 1) % self.n]
        f = offset / (self.starts[i + 1] - self.starts[i])
        return a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])

    def partner(self, s, r):
        """First q counterclockwise from p = B(s) with parallelogram area 2·p×q = r."""
        px, py = self.point(s)
        half = 0.5 * self.length
        u0, a0 = 0.0, 0.0
        i, offset = self.locate(s)
        u = 0.0
        while u < half:
            step = min(self.starts[i + 1] - self.starts[i] - offset, half - u)
            u1 = u + step
            qx, qy = self.point(s + u1)
            a1 = 2.0 * (px * qy - py * qx)
            if a1 >= r > a0 or (a1 >= r and u0 == 0.0 and a0 >= r):
                f = (r - a0) / (a1 - a0) if a1 != a0 else 1.0
                return self.point(s + u0 + f * (u1 - u0))
            u0, a0 = u1, a1
            u = u1
            i = (i + 1) % self.n
            offset = 0.0
        return None

    def skew(self, s, r):
        q = self.partner(s, r)
        if q is None:
            return None, None
        p = self.point(s)
        return math.hypot(*q) - math.hypot(*p), q


def _sweep_rectangles(boundary, c, r, diam):
    """Rectangles from every usable skew sign change, in sweep order."""
    half = 0.5 * boundary.length
    grid = [half * i / _SWEEP_SAMPLES for i in range(_SWEEP_SAMPLES + 1)]
    kappas = [boundary.skew(s, r)[0] for s in grid]

    for j in range(_SWEEP_SAMPLES):
        k0, k1 = kappas[j], kappas[j + 1]
        if k0 is None or k1 is None or (k0 > 0) == (k1 > 0) and k0 != 0.0:
            continue
        lo, hi = grid[j], grid[j + 1]
        while hi - lo > _SWEEP_TOLERANCE * boundary.length:
            mid = 0.5 * (lo + hi)
            km, _ = boundary.skew(mid, r)
            if km is None:
                break
            if (km > 0) == (k0 > 0):
                lo = mid
            else:
                hi = mid
        s = 0.5 * (lo + hi)
        kappa, q = boundary.skew(s, r)
        if kappa is None or abs(kappa) > _RECTANGLE_TOLERANCE * diam:
            logger.debug('skew jump near s=%.12g rejected (kappa=%.3g)', s, kappa or float('nan'))
            continue
        p = boundary.point(s)
        corners = tuple(Point(c.x + x, c.y + y) for x, y in (p, q, (-p[0], -p[1]), (-q[0], -q[1])))
        yield s, RectangleInBody(corners, _shoelace(corners))


def inscribed_rectangle(P, r):
    """Rectangle of area r with all four corners on the boundary of a centrally symmetric P.

    A rectangle with a side along ∂P is returned only when the sweep finds none
    whose four caps all have positive area.
    """
    if not is_centrally_symmetric(P):
        raise NotCentrallySymmetric('vertex set is not symmetric about the centroid')
    area = polygon_area(P)
    if r <= 0.0:
        raise BadParam(f'rectangle area must be positive, got {r}')
    if r > 0.5 * area * (1.0 + 1e-12):
        raise AreaTooLarge(f'r={r} exceeds half the polygon area {0.5 * area}')
    r = min(r, 0.5 * area)

    c = centroid(P)
    boundary = _Boundary([(v.x - c.x, v.y - c.y) for v in P.vertices])
    slack = _RECTANGLE_TOLERANCE * area
    fallback = None
    for s, rect in _sweep_rectangles(boundary, c, r, diameter(P)):
        caps = [polygon_area(cap) for cap in rectangle_caps(P, rect)]
        if abs(sum(caps) - (area - rect.area)) > slack:
            logger.debug('rectangle at s=%.12g rejected: caps sum to %.12g', s, sum(caps))
            continue
        if min(caps) > slack:
            logger.info('inscribed rectangle of area %.12g found at sweep parameter %.9f', rect.area, s)
            return rect
        if fallback is None:
            fallback = (s, rect)

    if fallback is not None:
        s, rect = fallback
        logger.info('inscribed rectangle of area %.12g at sweep parameter %.9f has a side on the boundary',
                    rect.area, s)
        return rect
    raise NoSignChange(f'no usable skew sign change over {_SWEEP_SAMPLES} sweep samples')


def rectangle_caps(P, rect):
    """The four pieces of P outside the rectangle sides, in side order (EMPTY when a side lies on ∂P)."""
    out = []
    corners = rect.corners
    for i in range(4):
        a, b = corners[i], corners[(i + 1) % 4]
        theta = math.atan2(a.x - b.x, b.y - a.y)  # outward normal of a CCW side
        line = LineSpec.through(a, theta)
        out.append(clip(P, HalfPlane(line, 1)))
    return out


def largest_cap_lower_bound(r):
    if not (0.0 < r <= 0.5):
        raise BadParam(f'area ratio must lie in (0, 1/2], got {r}')
    return (math.sqrt(1.0 - 2.0 * r) + 1.0 - r) / 4.0


def cs_fold_construction(P):
    """Fold a centrally symmetric polygon along a side of an inscribed 4/9-area rectangle or a parallel line."""
    area = polygon_area(P)
    c = centroid(P)
    s = 1.0 / math.sqrt(area)
    unit = normalize_polygon([((v.x - c.x) * s, (v.y - c.y) * s) for v in P.vertices])

    rect = inscribed_rectangle(unit, 4.0 / 9.0)
    caps = rectangle_caps(unit, rect)
    i = max(range(4), key=lambda j: (polygon_area(caps[j]), -j))
    cap = caps[i]
    a, b, nxt = rect.corners[i], rect.corners[(i + 1) % 4], rect.corners[(i + 2) % 4]
    depth = math.hypot(nxt.x - b.x, nxt.y - b.y)
    theta = math.atan2(a.x - b.x, b.y - a.y)
    ux, uy = math.cos(theta), math.sin(theta)
    base = ux * a.x + uy * a.y
    peak = max(ux * x + uy * y for x, y in cap.vertices) - base if cap is not EMPTY else 0.0

    if peak <= depth:
        shift = 0.0
    else:
        alpha = (peak / depth - 1.0) / 2.0
        shift = alpha * depth
    folded = clip(unit, HalfPlane(LineSpec.make(theta, base + shift), 1))
    folded_area = polygon_area(folded)
    logger.info('cap %d: peak %.6g, depth %.6g, fold shift %.6g, value %.12g',
                i, peak, depth, shift, 2.0 * folded_area)

    line = LineSpec.make(theta, (base + shift) / s + ux * c.x + uy * c.y)
    region = () if folded is EMPTY else tuple((c.x + x / s, c.y + y / s) for x, y in folded.vertices)
    return SymmetryReport(
        measure='folding',
        value=2.0 * folded_area,
        overlap_area=folded_area * area,
        body_area=area,
        evaluations=0,
        achieved_tolerance=_SWEEP_TOLERANCE,
        line=line,
        fold_side=1,
        overlap_region=region,
    )


# ── analytic overlap formulas against the engine ──

def _formula_rows(eps, samples):
    Q = quad_family(eps)
    a_top = caseA_valid_max_angle(eps)
    c_lo, c_hi = caseC_valid_angles(eps)
    span = max(samples - 1, 1)
    for i in range(samples):
        alpha = a_top * i / span
        translate = caseA_translate(eps, alpha)
        optimum, _ = best_offset_ratio(Q, alpha)
        yield {
            'case': 'small_angle', 'epsilon': eps, 'angle': alpha,
            'analytic': caseA_ratio(eps, alpha), 'printed': caseA_ratio_printed(eps, alpha),
            'shoelace_oracle': math.nan,
            'at_line': overlap_ratio_axial(Q, caseA_line(eps, alpha)),
            'optimal_translate': optimum,
            'valid': caseA_configuration_valid(eps, alpha, translate),
        }
    for i in range(samples):
        beta = c_lo + (c_hi - c_lo) * i / span
        try:
            printed = caseC_m_printed(eps, beta)
        except Singularity:
            printed = math.nan
        optimum, _ = best_offset_ratio(Q, math.pi / 2 + beta)
        yield {
            'case': 'middle_angle', 'epsilon': eps, 'angle': beta,
            'analytic': caseC_m(eps, beta), 'printed': printed,
            'shoelace_oracle': caseC_m_numeric(eps, beta),
            'at_line': overlap_ratio_axial(Q, caseC_line(eps, beta)),
            'optimal_translate': optimum,
            'valid': caseC_configuration_valid(eps, beta, caseC_translate(eps, beta)),
        }


def formula_check_table(epsilons=(0.01, 0.05), samples=20):
    """Analytic overlap maxima next to shoelace and engine values, sampled where each case holds."""
    if samples < 1:
        raise BadParam(f'samples must be positive, got {samples}')
    frame = pd.DataFrame([row for eps in epsilons for row in _formula_rows(eps, samples)])
    # fmax skips the NaN shoelace column of small-angle rows
    frame['max_difference'] = np.fmax.reduce([
        (frame['analytic'] - frame['shoelace_oracle']).abs(),
        (frame['analytic'] - frame['at_line']).abs(),
        (frame['analytic'] - frame['optimal_translate']).abs(),
    ])
    logger.info('formula check: %d rows, worst difference %.3g', len(frame), frame['max_difference'].max())
    return frame
