"""
Seeded random polygon suites for property checks and the CLI demos.
"""
import math

import numpy as np

from symmetria.errors import DegenerateInput
from symmetria.geometry import HalfPlane, LineSpec, centroid, clip, normalize_polygon


def random_convex_polygon(rng, k):
    """Convex hull of k uniform points in the unit square (redrawn until it has area)."""
    while True:
        pts = rng.random((k, 2))
        try:
            return normalize_polygon(pts.tolist())
        except DegenerateInput:
            continue


def random_triangle(rng):
    return random_convex_polygon(rng, 3)


def random_centrally_symmetric(rng, m):
    """Hull of m random points and their reflections through the origin."""
    while True:
        pts = rng.uniform(-1.0, 1.0, (m, 2))
        try:
            return normalize_polygon(np.vstack([pts, -pts]).tolist())
        except DegenerateInput:
            continue


def polygon_suite(seed, count, k_min=3, k_max=12):
    rng = np.random.default_rng(seed)
    return [random_convex_polygon(rng, int(rng.integers(k_min, k_max + 1))) for _ in range(count)]


def centrally_symmetric_suite(seed, count, m_min=2, m_max=6):
    rng = np.random.default_rng(seed)
    return [random_centrally_symmetric(rng, int(rng.integers(m_min, m_max + 1))) for _ in range(count)]


def nested_pair(rng, k=8):
    """(P, Q) with Q ⊆ P: Q is P cut by a random line through a point near the centroid."""
    P = random_convex_polygon(rng, k)
    c = centroid(P)
    theta = rng.uniform(0.0, 2.0 * math.pi)
    shift = rng.uniform(-0.05, 0.05)
    line = LineSpec.through((c.x, c.y), theta)
    return P, clip(P, HalfPlane(LineSpec.make(line.theta, line.d + shift), 1))


def random_line(rng, P):
    c = centroid(P)
    theta = rng.uniform(0.0, math.pi)
    return LineSpec.through((c.x + rng.normal(0.0, 0.1), c.y + rng.normal(0.0, 0.1)), theta)
