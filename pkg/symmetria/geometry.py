"""
Planar primitives for convex polygons.
Normalization (hull, dedupe, collinear removal), shoelace area, reflection,
halfplane clipping, convex intersection, containment and support projections.

Coordinates are plain floats. The underscore helpers work on raw vertex
lists of (x, y) tuples and are shared with the measure engines, which call
them in tight loops without building ConvexPolygon values.
"""
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

from symmetria.errors import DegenerateInput, NonFinite

logger = logging.getLogger(__name__)

_TWO_PI = 2.0 * math.pi
# Triple dropped when twice its triangle area is below this times diameter².
_COLLINEAR_REL = 2e-12
_DUPLICATE_REL = 1e-12


class Point(NamedTuple):
    x: float
    y: float


class LineSpec(NamedTuple):
    """The line {x : x·(cos θ, sin θ) = d}."""
    theta: float
    d: float

    @classmethod
    def make(cls, theta, d):
        return cls(math.fmod(math.fmod(theta, _TWO_PI) + _TWO_PI, _TWO_PI), float(d))

    @classmethod
    def through(cls, point, theta):
        """Line with normal angle theta passing through point."""
        return cls.make(theta, point[0] * math.cos(theta) + point[1] * math.sin(theta))

    @property
    def normal(self):
        return math.cos(self.theta), math.sin(self.theta)

    def to_dict(self):
        return {'theta': self.theta, 'd': self.d}


class HalfPlane(NamedTuple):
    """{x : keep_side·(x·n(θ) − d) ≥ 0}."""
    line: LineSpec
    keep_side: int = 1

    def coefficients(self):
        nx, ny = self.line.normal
        s = 1.0 if self.keep_side > 0 else -1.0
        return s * nx, s * ny, s * self.line.d


class Empty:
    """Result of a clip or intersection with zero area."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return 'EMPTY'

    def __bool__(self):
        return False


EMPTY = Empty()


@dataclass(frozen=True)
class ConvexPolygon:
    """Counterclockwise, strictly convex vertex cycle. Build with normalize_polygon."""
    vertices: tuple

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    @property
    def area(self):
        return _shoelace(self.vertices)

    def to_list(self):
        return [[v.x, v.y] for v in self.vertices]


# ── raw vertex-list helpers ──

def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _shoelace(verts):
    n = len(verts)
    if n < 3:
        return 0.0
    s = 0.0
    px, py = verts[-1]
    for x, y in verts:
        s += px * y - py * x
        px, py = x, y
    return 0.5 * s


def _edge_halfplanes(verts):
    """Unit inward normal (ex, ey) and offset h per edge: inside iff ex·x + ey·y ≥ h."""
    out = []
    n = len(verts)
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        dx, dy = bx - ax, by - ay
        length = math.hypot(dx, dy)
        ex, ey = -dy / length, dx / length
        out.append((ex, ey, ex * ax + ey * ay))
    return out


def _clip_raw(verts, a, b, c):
    """Sutherland–Hodgman step keeping a·x + b·y ≥ c."""
    out = []
    if not verts:
        return out
    px, py = verts[-1]
    fp = a * px + b * py - c
    for cx, cy in verts:
        fc = a * cx + b * cy - c
        if fc >= 0.0:
            if fp < 0.0 and fc > 0.0:
                t = fp / (fp - fc)
                out.append((px + t * (cx - px), py + t * (cy - py)))
            out.append((cx, cy))
        elif fp > 0.0:
            t = fp / (fp - fc)
            out.append((px + t * (cx - px), py + t * (cy - py)))
        px, py, fp = cx, cy, fc
    return out


def _clip_by_polygon(verts, halfplanes):
    poly = verts
    for ex, ey, h in halfplanes:
        poly = _clip_raw(poly, ex, ey, h)
        if len(poly) < 3:
            return []
    return poly


def _reflect_point(p, nx, ny, d):
    s = 2.0 * (p[0] * nx + p[1] * ny - d)
    return p[0] - s * nx, p[1] - s * ny


def _diameter_sq(verts):
    best = 0.0
    n = len(verts)
    for i in range(n):
        xi, yi = verts[i]
        for j in range(i + 1, n):
            dx, dy = verts[j][0] - xi, verts[j][1] - yi
            d2 = dx * dx + dy * dy
            if d2 > best:
                best = d2
    return best


def _hull(points, span):
    """Andrew's monotone chain; CCW from the lexicographically smallest point."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts
    tol = _COLLINEAR_REL * span * span
    lower = []
    for p in pts:
        while len(lower) > 1 and _cross(lower[-2], lower[-1], p) <= tol:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) > 1 and _cross(upper[-2], upper[-1], p) <= tol:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _polish(verts, span):
    """Drop near-duplicate and collinear vertices from a convex CCW cycle."""
    dup = _DUPLICATE_REL * span
    tol = _COLLINEAR_REL * span * span
    out = list(verts)
    changed = True
    while changed and len(out) >= 3:
        changed = False
        n = len(out)
        for i in range(n):
            prev, cur, nxt = out[i - 1], out[i], out[(i + 1) % n]
            if abs(cur[0] - prev[0]) <= dup and abs(cur[1] - prev[1]) <= dup \
                    or _cross(prev, cur, nxt) <= tol:
                del out[i]
                changed = True
                break
    return out


def _to_polygon(verts):
    """Wrap a raw CCW convex cycle, or return EMPTY when it has no area."""
    if len(verts) < 3:
        return EMPTY
    span = math.sqrt(_diameter_sq(verts))
    if span == 0.0:
        return EMPTY
    cleaned = _polish(verts, span)
    if len(cleaned) < 3 or _shoelace(cleaned) <= _COLLINEAR_REL * span * span:
        return EMPTY
    return ConvexPolygon(tuple(Point(x, y) for x, y in cleaned))


# ── public operations ──

def normalize_polygon(points):
    """Build the ConvexPolygon whose vertices are the extreme points of `points`."""
    pts = []
    for p in points:
        x, y = float(p[0]), float(p[1])
        if not (math.isfinite(x) and math.isfinite(y)):
            raise NonFinite(f'non-finite coordinate in {p!r}')
        pts.append((x, y))
    if len(pts) < 3:
        raise DegenerateInput(f'need at least 3 points, got {len(pts)}')

    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    span = math.hypot(max(xs) - min(xs), max(ys) - min(ys))
    if span == 0.0:
        raise DegenerateInput('all points coincide')

    hull = _polish(_hull(pts, span), span)
    if len(hull) < 3:
        raise DegenerateInput(f'hull has {len(hull)} extreme points')
    return ConvexPolygon(tuple(Point(x, y) for x, y in hull))


def polygon_area(P):
    if isinstance(P, Empty):
        return 0.0
    return _shoelace(P.vertices)


def reflect_polygon(P, L):
    nx, ny = L.normal
    image = [_reflect_point(v, nx, ny, L.d) for v in reversed(P.vertices)]
    return normalize_polygon(image)


def point_reflect(P, c):
    """Image of P under x ↦ 2c − x."""
    cx, cy = 2.0 * c[0], 2.0 * c[1]
    return normalize_polygon([(cx - x, cy - y) for x, y in P.vertices])


def clip(P, H):
    a, b, c = H.coefficients()
    return _to_polygon(_clip_raw(list(P.vertices), a, b, c))


def intersect(P, Q):
    return _to_polygon(_clip_by_polygon(list(P.vertices), _edge_halfplanes(Q.vertices)))


def contains(P, p, tol=1e-9):
    px, py = p[0], p[1]
    for ex, ey, h in _edge_halfplanes(P.vertices):
        if ex * px + ey * py - h < -tol:
            return False
    return True


def support_interval(P, theta):
    nx, ny = math.cos(theta), math.sin(theta)
    dots = [x * nx + y * ny for x, y in P.vertices]
    return min(dots), max(dots)


def centroid(P):
    verts = P.vertices
    a2 = cx = cy = 0.0
    px, py = verts[-1]
    for x, y in verts:
        w = px * y - py * x
        a2 += w
        cx += (px + x) * w
        cy += (py + y) * w
        px, py = x, y
    return Point(cx / (3.0 * a2), cy / (3.0 * a2))


def diameter(P):
    return math.sqrt(_diameter_sq(P.vertices))


def minimum_width(P):
    """Smallest distance between two parallel supporting lines (attained at an edge)."""
    best = math.inf
    for ex, ey, h in _edge_halfplanes(P.vertices):
        far = max(ex * x + ey * y for x, y in P.vertices) - h
        best = min(best, far)
    return best


def aspect_ratio(P):
    return diameter(P) / minimum_width(P)


def translate(P, dx, dy):
    return ConvexPolygon(tuple(Point(x + dx, y + dy) for x, y in P.vertices))


def rotate(P, angle, about=(0.0, 0.0)):
    c, s = math.cos(angle), math.sin(angle)
    ox, oy = about
    return normalize_polygon([
        (ox + c * (x - ox) - s * (y - oy), oy + s * (x - ox) + c * (y - oy))
        for x, y in P.vertices
    ])


def scale(P, factor, about=(0.0, 0.0)):
    ox, oy = about
    return normalize_polygon([(ox + factor * (x - ox), oy + factor * (y - oy)) for x, y in P.vertices])


def regular_polygon(n, radius=1.0, phase=math.pi / 2):
    if n < 3:
        raise DegenerateInput(f'regular polygon needs n >= 3, got {n}')
    return normalize_polygon([
        (radius * math.cos(phase + 2 * math.pi * i / n), radius * math.sin(phase + 2 * math.pi * i / n))
        for i in range(n)
    ])


def is_centrally_symmetric(P, tol=1e-8):
    """True when the vertex set maps onto itself under reflection through the centroid."""
    c = centroid(P)
    limit = tol * max(diameter(P), 1.0)
    verts = P.vertices
    for x, y in verts:
        mx, my = 2 * c.x - x, 2 * c.y - y
        if not any(abs(mx - u) <= limit and abs(my - v) <= limit for u, v in verts):
            return False
    return True
