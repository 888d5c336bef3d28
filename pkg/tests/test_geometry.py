import math

import pytest
from hypothesis import given, settings
from shapely.geometry import Polygon as ShapelyPolygon

from symmetria.errors import DegenerateInput, NonFinite
from symmetria.geometry import (
    EMPTY, HalfPlane, LineSpec, Point, aspect_ratio, centroid, clip, contains, diameter, intersect,
    is_centrally_symmetric, minimum_width, normalize_polygon, point_reflect, polygon_area, reflect_polygon,
    regular_polygon, rotate, scale, support_interval, translate,
)

from conftest import convex_polygons


def _shapely(P):
    return ShapelyPolygon([(v.x, v.y) for v in P.vertices])


class TestNormalize:
    def test_square_is_counterclockwise_from_lowest_point(self, square):
        assert square.vertices == (Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1))
        assert polygon_area(square) == pytest.approx(1.0)

    def test_reorders_clockwise_input(self):
        P = normalize_polygon([(0, 0), (0, 1), (1, 1), (1, 0)])
        assert polygon_area(P) == pytest.approx(1.0)

    def test_drops_duplicates_collinear_and_interior_points(self):
        P = normalize_polygon([(0, 0), (1, 0), (1, 0), (2, 0), (2, 2), (0, 2), (1, 1)])
        assert len(P) == 4
        assert polygon_area(P) == pytest.approx(4.0)

    @pytest.mark.parametrize('points', [
        [(0, 0), (1, 1)],
        [(0, 0), (1, 1), (2, 2)],
        [(3, 3), (3, 3), (3, 3)],
    ])
    def test_degenerate(self, points):
        with pytest.raises(DegenerateInput):
            normalize_polygon(points)

    def test_non_finite(self):
        with pytest.raises(NonFinite):
            normalize_polygon([(0, 0), (1, 0), (math.nan, 1)])
        with pytest.raises(DegenerateInput):
            normalize_polygon([(0, 0), (1, 0), (math.inf, 1)])

    @given(convex_polygons)
    @settings(max_examples=60, deadline=None)
    def test_idempotent(self, P):
        assert normalize_polygon([(v.x, v.y) for v in P.vertices]) == P


class TestReflectAndClip:
    def test_reflection_is_an_involution(self, rng):
        from symmetria.samples import random_convex_polygon, random_line
        for _ in range(20):
            P = random_convex_polygon(rng, 9)
            L = random_line(rng, P)
            back = reflect_polygon(reflect_polygon(P, L), L)
            assert polygon_area(back) == pytest.approx(polygon_area(P), rel=1e-12)
            for a, b in zip(sorted(back.vertices), sorted(P.vertices)):
                assert a.x == pytest.approx(b.x, abs=1e-9) and a.y == pytest.approx(b.y, abs=1e-9)

    def test_reflection_keeps_orientation(self, triangle):
        image = reflect_polygon(triangle, LineSpec.make(0.0, 2.0))
        assert polygon_area(image) == pytest.approx(0.5)
        assert min(v.x for v in image.vertices) == pytest.approx(3.0)

    def test_clip_square_in_half(self, square):
        half = clip(square, HalfPlane(LineSpec.make(0.0, 0.5), 1))
        assert polygon_area(half) == pytest.approx(0.5)
        other = clip(square, HalfPlane(LineSpec.make(0.0, 0.5), -1))
        assert polygon_area(other) == pytest.approx(0.5)

    def test_clip_outside_is_empty(self, square):
        assert clip(square, HalfPlane(LineSpec.make(0.0, 2.0), 1)) is EMPTY
        assert polygon_area(EMPTY) == 0.0

    def test_clip_is_idempotent(self, hexagon):
        H = HalfPlane(LineSpec.make(0.3, 0.2), 1)
        once = clip(hexagon, H)
        assert polygon_area(clip(once, H)) == pytest.approx(polygon_area(once), rel=1e-12)
        assert polygon_area(once) <= polygon_area(hexagon)

    def test_disjoint_intersection_is_empty(self, square):
        assert intersect(square, translate(square, 3.0, 0.0)) is EMPTY

    @given(convex_polygons, convex_polygons)
    @settings(max_examples=60, deadline=None)
    def test_intersection_matches_shapely(self, P, Q):
        expected = _shapely(P).intersection(_shapely(Q)).area
        scale_ = max(polygon_area(P), polygon_area(Q))
        assert polygon_area(intersect(P, Q)) == pytest.approx(expected, abs=1e-9 * scale_)
        assert polygon_area(intersect(Q, P)) == pytest.approx(expected, abs=1e-9 * scale_)


class TestMeasurements:
    def test_contains(self, square):
        assert contains(square, (0.5, 0.5))
        assert contains(square, (1.0, 0.5))
        assert not contains(square, (1.01, 0.5))

    def test_support_interval(self, square):
        lo, hi = support_interval(square, math.pi / 4)
        assert lo == pytest.approx(0.0)
        assert hi == pytest.approx(math.sqrt(2.0))

    def test_centroid(self, triangle):
        c = centroid(triangle)
        assert c.x == pytest.approx(1 / 3) and c.y == pytest.approx(1 / 3)

    def test_diameter_width_aspect(self, square):
        assert diameter(square) == pytest.approx(math.sqrt(2.0))
        assert minimum_width(square) == pytest.approx(1.0)
        assert aspect_ratio(square) == pytest.approx(math.sqrt(2.0))

    def test_regular_polygon_area(self):
        P = regular_polygon(6)
        assert len(P) == 6
        assert polygon_area(P) == pytest.approx(1.5 * math.sqrt(3.0))

    def test_central_symmetry_detection(self, square, triangle):
        assert is_centrally_symmetric(square)
        assert is_centrally_symmetric(regular_polygon(8))
        assert not is_centrally_symmetric(triangle)
        assert not is_centrally_symmetric(regular_polygon(5))

    def test_point_reflection(self, triangle):
        image = point_reflect(triangle, (0.0, 0.0))
        assert polygon_area(image) == pytest.approx(0.5)
        assert Point(-1.0, 0.0) in image.vertices

    def test_similarity_transforms(self, triangle):
        assert polygon_area(rotate(triangle, 1.1, (0.3, 0.4))) == pytest.approx(0.5)
        assert polygon_area(scale(triangle, 3.0)) == pytest.approx(4.5)
        assert polygon_area(translate(triangle, -2.0, 5.0)) == pytest.approx(0.5)


def test_line_spec_normalizes_angle():
    L = LineSpec.make(-math.pi / 2, 1.0)
    assert L.theta == pytest.approx(1.5 * math.pi)
    assert LineSpec.through((2.0, 3.0), 0.0).d == pytest.approx(2.0)
