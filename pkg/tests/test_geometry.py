import math

import numpy as np
import pytest

from hilbertvor.errors import (
    CoincidentLines,
    CoincidentPoints,
    DegenerateQuad,
    DegenerateTriangle,
    InvalidPolygon,
    NotCollinear,
)
from hilbertvor.geometry import (
    ConvexPolygon,
    Point,
    ProjectiveMap,
    clip_polygon_halfplane,
    cross_ratio,
    line_intersection,
    line_through,
    make_line,
    map_quad_to_unit_square,
    map_triangle_to_unit_simplex,
    orient,
    point_line_distance,
    polygon_area,
)

from conftest import random_convex_polygon, random_interior_point


class TestOrient:
    def test_ccw(self):
        assert orient((0, 0), (1, 0), (0, 1)) == 1

    def test_collinear(self):
        assert orient((0, 0), (1, 0), (2, 0)) == 0

    def test_cw(self):
        assert orient((0, 0), (0, 1), (1, 0)) == -1


class TestLines:
    def test_axes_intersection_is_origin(self):
        x_axis = make_line(0, 1, 0)  # y = 0
        y_axis = make_line(1, 0, 0)  # x = 0
        h = line_intersection(x_axis, y_axis)
        assert abs(h.x / h.w) < 1e-15 and abs(h.y / h.w) < 1e-15

    def test_parallel_verticals_meet_at_infinity(self):
        l0 = make_line(1, 0, 0)  # x = 0
        l1 = make_line(1, 0, -1)  # x = 1
        h = line_intersection(l0, l1)
        assert h.w == 0.0
        # direction (0, +-1)
        assert abs(h.x) < 1e-15 and abs(h.y) > 0

    def test_crossing_lines(self):
        # hand-solved 2x2 system: x+y=1, x=y  ->  (0.5, 0.5)
        l0 = make_line(1, 1, -1)
        l1 = make_line(1, -1, 0)
        h = line_intersection(l0, l1)
        assert abs(h.x / h.w - 0.5) < 1e-12 and abs(h.y / h.w - 0.5) < 1e-12

    def test_coincident_rejected(self):
        l0 = line_through((0, 0), (1, 1))
        l1 = line_through((2, 2), (3, 3))
        with pytest.raises(CoincidentLines):
            line_intersection(l0, l1)

    def test_point_line_distance(self):
        assert point_line_distance(make_line(0, 1, 0), (3, 2)) == pytest.approx(2.0)
        assert point_line_distance(make_line(1, 1, -1), (0, 0)) == pytest.approx(1 / math.sqrt(2))
        assert point_line_distance(make_line(1, 0, 0), (0, 5)) == 0.0

    def test_canonical_normalization(self):
        line = make_line(-2, 0, 3)
        assert line.u == pytest.approx(1.0) and line.l == pytest.approx(-1.5)
        a = line_through((0, 0), (1, 1))
        b = line_through((5, 5), (-2, -2))
        assert a == pytest.approx(b, abs=1e-12)


class TestCrossRatio:
    def test_equally_spaced(self):
        assert cross_ratio((0, 0), (1, 0), (2, 0), (3, 0)) == pytest.approx(4 / 3)

    def test_swapped_last_pair(self):
        assert cross_ratio((0, 0), (1, 0), (3, 0), (2, 0)) == pytest.approx(3 / 4)

    def test_matches_signed_formula_on_slanted_line(self):
        # points at parameters 0, 1, 3, 4 along a slanted line; each distance
        # factor is a product of two signed lengths, so the value matches the
        # parameter-space formula regardless of line orientation.
        base, d = np.array([0.2, 1.0]), np.array([0.6, 0.8])
        ts = [0.0, 1.0, 3.0, 4.0]
        pts = [Point(*(base + t * d)) for t in ts]
        expected = ((ts[2] - ts[0]) * (ts[3] - ts[1])) / ((ts[2] - ts[1]) * (ts[3] - ts[0]))
        assert cross_ratio(*pts) == pytest.approx(expected, rel=1e-12)
        assert cross_ratio(*[Point(*(base - t * d)) for t in ts]) == pytest.approx(expected, rel=1e-12)

    def test_projective_invariance(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            ts = np.sort(rng.uniform(-1, 1, size=4))
            if np.min(np.diff(ts)) < 1e-3:
                continue
            d = rng.normal(size=2)
            d /= np.hypot(*d)
            base = rng.uniform(-0.5, 0.5, size=2)
            pts = [Point(*(base + t * d)) for t in ts]
            ref = cross_ratio(*pts)
            m = np.eye(3) + 0.15 * rng.normal(size=(3, 3))
            if abs(np.linalg.det(m)) < 1e-3:
                continue
            t_map = ProjectiveMap(m)
            try:
                images = [t_map.apply(p) for p in pts]
            except Exception:
                continue
            assert cross_ratio(*images) == pytest.approx(ref, rel=1e-9, abs=1e-9)

    def test_not_collinear(self):
        with pytest.raises(NotCollinear):
            cross_ratio((0, 0), (1, 0), (1, 1), (2, 0))

    def test_coincident(self):
        with pytest.raises(CoincidentPoints):
            cross_ratio((0, 0), (0, 0), (1, 0), (2, 0))


class TestClip:
    SQUARE = [Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)]

    def test_half(self):
        out = clip_polygon_halfplane(self.SQUARE, make_line(1, 0, -0.5), -1)
        assert polygon_area(out) == pytest.approx(0.5)
        assert max(p.x for p in out) == pytest.approx(0.5)

    def test_no_op(self):
        out = clip_polygon_halfplane(self.SQUARE, make_line(1, 0, -2), -1)
        assert polygon_area(out) == pytest.approx(1.0)

    def test_empty(self):
        assert clip_polygon_halfplane(self.SQUARE, make_line(1, 0, 1), -1) == []

    def test_contained_and_convex(self):
        rng = np.random.default_rng(3)
        for _ in range(40):
            poly = random_convex_polygon(rng, max_m=9)
            p = random_interior_point(rng, poly)
            q = random_interior_point(rng, poly)
            if math.hypot(p.x - q.x, p.y - q.y) < 1e-3:
                continue
            line = line_through(p, q)
            for side in (1, -1):
                out = clip_polygon_halfplane(list(poly.vertices), line, side)
                if not out:
                    continue
                assert 0 < polygon_area(out) <= abs(poly.area) + 1e-12
                for i in range(len(out)):
                    assert orient(out[i], out[(i + 1) % len(out)], out[(i + 2) % len(out)]) >= 0
                    assert poly.boundary_distance(out[i]) >= -1e-9


class TestQuadMap:
    def test_identity(self):
        t = map_quad_to_unit_square((0, 0), (0, 1), (1, 1), (1, 0))
        assert np.allclose(t.matrix, np.eye(3), atol=1e-12)

    def test_pure_scaling(self):
        t = map_quad_to_unit_square((0, 0), (0, 2), (2, 2), (2, 0))
        for src, dst in [((0, 0), (0, 0)), ((2, 2), (1, 1)), ((1, 1), (0.5, 0.5))]:
            img = t.apply(src)
            assert img.x == pytest.approx(dst[0], abs=1e-12)
            assert img.y == pytest.approx(dst[1], abs=1e-12)

    def test_random_quads(self):
        rng = np.random.default_rng(11)
        targets = [(0, 0), (0, 1), (1, 1), (1, 0)]
        for _ in range(50):
            quad = _random_convex_quad(rng)
            t = map_quad_to_unit_square(*quad)
            for src, dst in zip(quad, targets):
                img = t.apply(src)
                assert math.hypot(img.x - dst[0], img.y - dst[1]) <= 1e-9
            inv = t.inverse()
            for src in quad:
                back = inv.apply(t.apply(src))
                assert math.hypot(back.x - src.x, back.y - src.y) <= 1e-9

    def test_degenerate(self):
        with pytest.raises(DegenerateQuad):
            map_quad_to_unit_square((0, 0), (1, 0), (2, 0), (1, 1))


class TestTriangleMap:
    def test_identity(self):
        t = map_triangle_to_unit_simplex((1, 0), (0, 1), (0, 0))
        assert np.allclose(t.matrix, np.eye(3), atol=1e-12)

    def test_scaling(self):
        t = map_triangle_to_unit_simplex((2, 0), (0, 2), (0, 0))
        img = t.apply((1, 1))
        assert img.x == pytest.approx(0.5) and img.y == pytest.approx(0.5)

    def test_random_triangles(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            tri = rng.uniform(-2, 2, size=(3, 2))
            if abs(orient(tri[0], tri[1], tri[2])) == 0:
                continue
            t = map_triangle_to_unit_simplex(*tri)
            for src, dst in zip(tri, [(1, 0), (0, 1), (0, 0)]):
                img = t.apply(src)
                assert math.hypot(img.x - dst[0], img.y - dst[1]) <= 1e-9

    def test_degenerate(self):
        with pytest.raises(DegenerateTriangle):
            map_triangle_to_unit_simplex((0, 0), (1, 1), (2, 2))


class TestProjectiveMap:
    def test_identity_apply(self):
        p = ProjectiveMap.identity().apply((0.3, 0.7))
        assert p == Point(0.3, 0.7)

    def test_line_transform_under_scaling(self):
        half = ProjectiveMap(np.diag([0.5, 0.5, 1.0]))
        line = make_line(1, 0, -1)  # x = 1
        img = half.apply_line(line)
        # image of {x=1} under halving is {x = 0.5}
        assert img.u == pytest.approx(1.0) and img.l == pytest.approx(-0.5)

    def test_image_at_infinity_rejected(self):
        from hilbertvor.errors import ImageAtInfinity

        # (1,0) lies on the vanishing line w = 1 - x of this map
        t = ProjectiveMap(np.array([[1.0, 0, 0], [0, 1.0, 0], [-1.0, 0, 1.0]]))
        with pytest.raises(ImageAtInfinity):
            t.apply((1.0, 0.0))

    def test_invert_round_trip(self):
        rng = np.random.default_rng(5)
        m = np.eye(3) + 0.2 * rng.normal(size=(3, 3))
        t = ProjectiveMap(m)
        inv = t.inverse()
        for _ in range(100):
            p = Point(*rng.uniform(-1, 1, size=2))
            try:
                q = inv.apply(t.apply(p))
            except Exception:
                continue
            assert math.hypot(q.x - p.x, q.y - p.y) <= 1e-9


class TestConvexPolygon:
    def test_all_turns_ccw(self):
        rng = np.random.default_rng(2)
        for _ in range(25):
            poly = random_convex_polygon(rng)
            m = poly.m
            for i in range(m):
                assert orient(poly.vertices[i], poly.vertices[(i + 1) % m], poly.vertices[(i + 2) % m]) == 1

    def test_rejects_clockwise(self):
        with pytest.raises(InvalidPolygon):
            ConvexPolygon([(0, 0), (0, 1), (1, 1), (1, 0)])

    def test_rejects_nonconvex(self):
        with pytest.raises(InvalidPolygon):
            ConvexPolygon([(0, 0), (2, 0), (1, 0.1), (1, 2)])

    def test_rejects_repeated_vertex(self):
        with pytest.raises(InvalidPolygon):
            ConvexPolygon([(0, 0), (1, 0), (1, 0), (0, 1)])

    def test_rejects_too_few(self):
        with pytest.raises(InvalidPolygon):
            ConvexPolygon([(0, 0), (1, 0)])

    def test_rejects_nonfinite(self):
        with pytest.raises(InvalidPolygon):
            ConvexPolygon([(0, 0), (1, 0), (float("nan"), 1)])


def _random_convex_quad(rng):
    # corners in the canonical target order: CCW starting lower-left, listed
    # p1 (-> (0,0)), p2 (-> (0,1)), p3 (-> (1,1)), p4 (-> (1,0))
    while True:
        angles = np.sort(rng.uniform(0, 2 * math.pi, size=4))
        if np.min(np.diff(angles)) < 0.3:
            continue
        radii = rng.uniform(0.5, 1.5, size=4)
        pts = [Point(r * math.cos(a), r * math.sin(a)) for r, a in zip(radii, angles)]
        if all(orient(pts[i], pts[(i + 1) % 4], pts[(i + 2) % 4]) == 1 for i in range(4)):
            return pts
