import math

import numpy as np
import pytest

from hilbertvor.bisector import (
    ConicType,
    bisector_conic,
    bisector_residuals,
    classify_conic,
    conic_type_separating_line,
    degenerate_factor,
    four_edge_conic,
    four_edge_discriminant,
    simplex_conic,
    general_bisector_conic,
    three_edge_conic_type,
    trace_bisector,
    two_edge_conic,
)
from hilbertvor.errors import DegeneratePair, NotDegenerate, SiteOutsideFrame
from hilbertvor.geometry import Point, line_eval, make_line, point_line_distance
from hilbertvor.metric import hilbert_distance, sector_decomposition
from hilbertvor.tolerances import EPS_STITCH

from conftest import random_convex_polygon, random_interior_point

# Table rows: s, t, expected k, expected discriminant, expected tag
REFERENCE_CASES = [
    ((0.2, 0.2), (0.45, 0.4), 1.0, -3.0, ConicType.ELLIPSE),
    ((0.2, 0.2), (0.25, 0.4), 4.2, 0.84, ConicType.HYPERBOLA),
    ((0.1, 0.15), (0.5, 0.3), 2.0, -4.0, ConicType.ELLIPSE),
    ((0.1, 0.1), (0.2, 0.7), 4.0, 0.0, ConicType.PARABOLA),
]


class TestSimplexFrame:
    @pytest.mark.parametrize("s,t,k,disc,tag", REFERENCE_CASES)
    def test_table_rows(self, s, t, k, disc, tag):
        conic = simplex_conic(s, t)
        assert conic.k == pytest.approx(k, abs=1e-9)
        cls = classify_conic(conic)
        assert cls.discriminant == pytest.approx(disc, abs=1e-9)
        assert cls.tag is tag

    def test_canonical_coefficients(self):
        rng = np.random.default_rng(61)
        for _ in range(100):
            s = _random_simplex_point(rng)
            t = _random_simplex_point(rng)
            conic = simplex_conic(s, t)
            k = conic.k
            expected = (1.0, 2.0 - k, 1.0, -2.0, -2.0, 1.0)
            for got, want in zip(conic.as_tuple(), expected):
                assert abs(got - want) <= 1e-12
            # closed form for the sector constant
            want_k = (s[0] + s[1] - 1) * (t[0] + t[1] - 1) / (t[0] * s[1])
            assert k == pytest.approx(want_k, rel=1e-12)

    def test_rejects_outside_frame(self):
        with pytest.raises(SiteOutsideFrame):
            simplex_conic((0.7, 0.7), (0.1, 0.1))


class TestTwoEdgeFrame:
    def test_canonical_coefficients(self):
        conic = two_edge_conic((1.0, 2.0), (2.0, 1.0))
        assert conic.k == pytest.approx(1.0)
        assert conic.as_tuple() == pytest.approx((-1.0, 0.0, 1.0, 0.0, 0.0, 0.0), abs=1e-15)

    def test_factor_lines_k1(self):
        conic = two_edge_conic((1.0, 2.0), (2.0, 1.0))
        lines = degenerate_factor(conic)
        assert len(lines) == 2
        # y = x and y = -x
        slopes = sorted(-ln.u / ln.v for ln in lines)
        assert slopes == pytest.approx([-1.0, 1.0])
        for ln in lines:
            assert abs(ln.l) <= 1e-12  # through the vanishing point (origin)

    def test_retained_root_is_mirror_line(self):
        # with s=(1,2), t=(2,1), k=1 and the sector in the first quadrant,
        # only y = +sqrt(k) x crosses it
        conic = two_edge_conic((1.0, 2.0), (2.0, 1.0))
        lines = [ln for ln in degenerate_factor(conic) if line_eval(ln, (1.0, 1.0)) == pytest.approx(0.0, abs=1e-12)]
        assert len(lines) == 1

    def test_sqrt_k_slope(self):
        rng = np.random.default_rng(67)
        for _ in range(50):
            s = Point(rng.uniform(0.2, 3), rng.uniform(0.2, 3))
            t = Point(rng.uniform(0.2, 3), rng.uniform(0.2, 3))
            conic = two_edge_conic(s, t)
            k = (s.y / t.x) * (t.y / s.x)
            assert conic.k == pytest.approx(k, rel=1e-12)
            lines = degenerate_factor(conic)
            slopes = sorted(-ln.u / ln.v for ln in lines)
            assert slopes == pytest.approx([-math.sqrt(k), math.sqrt(k)], rel=1e-9)


class TestFourEdgeFrame:
    def test_discriminant_matches_closed_form(self):
        rng = np.random.default_rng(71)
        for _ in range(500):
            s = Point(rng.uniform(0.01, 0.99), rng.uniform(0.01, 0.99))
            t = Point(rng.uniform(0.01, 0.99), rng.uniform(0.01, 0.99))
            conic = four_edge_conic(s, t)
            disc = four_edge_discriminant(s, t)
            assert disc == pytest.approx((1.0 - conic.k) ** 2, abs=1e-9)
            assert disc >= -1e-9

    def test_k1_is_parabola(self):
        # k = 1 iff t_y = s_x in this frame
        s = Point(0.3, 0.4)
        t = Point(0.6, 0.3)
        conic = four_edge_conic(s, t)
        assert conic.k == pytest.approx(1.0, abs=1e-12)
        assert four_edge_discriminant(s, t) == pytest.approx(0.0, abs=1e-12)


class TestThreeEdgeType:
    @pytest.mark.parametrize("s,t,_k,_d,tag", REFERENCE_CASES)
    def test_table_rows(self, s, t, _k, _d, tag):
        assert three_edge_conic_type(s, t).tag is tag

    def test_agrees_with_general_classification(self):
        rng = np.random.default_rng(73)
        for _ in range(300):
            s = _random_simplex_point(rng)
            t = _random_simplex_point(rng)
            assert three_edge_conic_type(s, t).tag is classify_conic(simplex_conic(s, t)).tag


class TestSeparatingLine:
    def test_fixed_site_example(self):
        line = conic_type_separating_line((0.1, 0.1))
        # 1.2 tx + 0.8 ty - 0.8 = 0, up to normalization
        ref = make_line(1.2, 0.8, -0.8)
        assert abs(abs(line.u) - abs(ref.u)) <= 1e-12
        assert line.u * ref.v == pytest.approx(line.v * ref.u, abs=1e-12)
        assert line.u * ref.l == pytest.approx(line.l * ref.u, abs=1e-12)
        assert abs(line_eval(line, (0.2, 0.7))) <= 1e-12

    def test_sides_classify(self):
        line = conic_type_separating_line((0.2, 0.2))
        assert three_edge_conic_type((0.2, 0.2), (0.45, 0.4)).tag is ConicType.ELLIPSE
        assert three_edge_conic_type((0.2, 0.2), (0.25, 0.4)).tag is ConicType.HYPERBOLA
        # the two reference sites are on opposite sides of the line
        assert line_eval(line, (0.45, 0.4)) * line_eval(line, (0.25, 0.4)) < 0

    def test_points_on_line_are_parabolas(self):
        rng = np.random.default_rng(79)
        s = (0.15, 0.22)
        line = conic_type_separating_line(s)
        hits = 0
        for _ in range(200):
            # parametrize the line and pick points inside the simplex
            x = rng.uniform(0.01, 0.99)
            if abs(line.v) < 1e-12:
                continue
            y = -(line.u * x + line.l) / line.v
            if not (y > 0.01 and x + y < 0.99):
                continue
            assert three_edge_conic_type(s, (x, y)).tag is ConicType.PARABOLA
            hits += 1
        assert hits > 20


class TestDegenerateFactoring:
    def test_not_degenerate_raises(self):
        with pytest.raises(NotDegenerate):
            degenerate_factor(simplex_conic((0.2, 0.2), (0.45, 0.4)))

    @pytest.mark.parametrize("shared_in_front", [True, False])
    def test_shared_edge_line_through_vanishing_point(self, shared_in_front):
        # canonical frames: shared edge x+y-1=0, non-shared edges y=0 and x=0
        # meeting at the origin (their vanishing point)
        rng = np.random.default_rng(83)
        shared = (1.0, 1.0, -1.0)
        y_axis = (0.0, 1.0, 0.0)
        x_axis = (1.0, 0.0, 0.0)
        for _ in range(200):
            s = _random_simplex_point(rng)
            t = _random_simplex_point(rng)
            if shared_in_front:
                conic = general_bisector_conic(y_axis, shared, x_axis, shared, s, t)
            else:
                conic = general_bisector_conic(shared, y_axis, shared, x_axis, s, t)
            assert classify_conic(conic).tag is ConicType.DEGENERATE_LINEAR
            lines = degenerate_factor(conic)
            shared_line = make_line(*shared)
            bisector_lines = [
                ln for ln in lines if abs(abs(ln.u * shared_line.v) - abs(ln.v * shared_line.u)) > 1e-9 or abs(ln.l - shared_line.l) > 1e-6
            ]
            assert len(bisector_lines) >= 1
            for ln in bisector_lines:
                assert point_line_distance(ln, (0.0, 0.0)) <= 1e-8


class TestSectorConstantPositivity:
    def test_k_positive_for_interior_sites(self):
        # interior-positive edge lines make every factor of k a positive
        # distance ratio, for all sectors of the pair
        rng = np.random.default_rng(151)
        for _ in range(5):
            poly = random_convex_polygon(rng, max_m=9)
            s = random_interior_point(rng, poly)
            t = random_interior_point(rng, poly)
            if math.hypot(s.x - t.x, s.y - t.y) < 1e-3:
                continue
            for sec in sector_decomposition(poly, s, t):
                assert bisector_conic(sec).k > 0.0


class TestCoefficientSymmetry:
    def test_swap_scales_coefficients(self):
        rng = np.random.default_rng(89)
        poly = random_convex_polygon(rng, max_m=8)
        s = random_interior_point(rng, poly)
        t = random_interior_point(rng, poly)
        sectors = sector_decomposition(poly, s, t)
        for sec in sectors[:10]:
            a, b, c, d = sec.lines
            c1 = general_bisector_conic(a, b, c, d, s, t)
            c2 = general_bisector_conic(b, a, d, c, s, t)
            v1 = np.array(c1.as_tuple())
            v2 = np.array(c2.as_tuple())
            # cross products A1*F2 = A2*F1 etc: proportional up to scale
            outer = np.outer(v1, v2)
            assert np.allclose(outer, outer.T, atol=1e-9 * max(1.0, np.abs(outer).max()))


class TestTrace:
    def test_mirror_square_pair(self, unit_square):
        curve = trace_bisector(unit_square, (0.25, 0.5), (0.75, 0.5))
        pts = curve.sample_points()
        assert all(abs(p.x - 0.5) <= 1e-9 for p in pts)
        ends = sorted((round(p.x, 9), round(p.y, 9)) for p in curve.endpoints)
        assert ends == [(0.5, 0.0), (0.5, 1.0)]

    def test_diagonal_swap_symmetry(self, unit_square):
        curve = trace_bisector(unit_square, (0.3, 0.3), (0.7, 0.7))
        pts = curve.sample_points()
        # configuration is symmetric under (x,y) -> (y,x) with sites swapped
        for p in pts[:: max(1, len(pts) // 25)]:
            mirrored = Point(p.y, p.x)
            assert min(math.hypot(q.x - mirrored.x, q.y - mirrored.y) for q in pts) <= 2e-3
        ends = sorted((round(p.x, 9), round(p.y, 9)) for p in curve.endpoints)
        assert ends == [(0.0, 1.0), (1.0, 0.0)]

    def test_equidistance_random_pairs(self):
        rng = np.random.default_rng(97)
        done = 0
        while done < 20:
            poly = random_convex_polygon(rng, max_m=10)
            s = random_interior_point(rng, poly)
            t = random_interior_point(rng, poly)
            if math.hypot(s.x - t.x, s.y - t.y) < 1e-3:
                continue
            try:
                curve = trace_bisector(poly, s, t)
            except DegeneratePair:
                continue
            res = bisector_residuals(poly, s, t, curve)
            assert len(res) >= 10
            assert res.max() <= 1e-6
            done += 1

    def test_pieces_stitch_continuously(self, unit_square):
        curve = trace_bisector(unit_square, (0.31, 0.42), (0.64, 0.57))
        for p1, p2 in zip(curve.pieces, curve.pieces[1:]):
            gap = math.hypot(
                p1.polyline[-1].x - p2.polyline[0].x, p1.polyline[-1].y - p2.polyline[0].y
            )
            assert gap <= EPS_STITCH

    def test_degenerate_pair_raises(self, unit_square):
        with pytest.raises(DegeneratePair):
            trace_bisector(unit_square, (0.5, 0.3), (0.5, 0.7))


class TestBruteForceOracle:
    def test_conic_vanishes_at_bisection_roots(self):
        """Independent oracle: 1-D bisection of H(s,.) - H(t,.) along random
        segments; the containing sector's bisector conic must vanish there."""
        rng = np.random.default_rng(101)
        poly = random_convex_polygon(rng, max_m=8)
        s = random_interior_point(rng, poly)
        t = random_interior_point(rng, poly)

        def g(p):
            return hilbert_distance(poly, s, p) - hilbert_distance(poly, t, p)

        sectors = sector_decomposition(poly, s, t)
        found = 0
        for _ in range(300):
            if found >= 40:
                break
            a = random_interior_point(rng, poly)
            b = random_interior_point(rng, poly)
            ga, gb = g(a), g(b)
            if ga * gb >= 0:
                continue
            lo, hi = (a, b) if ga < 0 else (b, a)
            for _ in range(80):
                mid = Point((lo.x + hi.x) / 2, (lo.y + hi.y) / 2)
                if g(mid) < 0:
                    lo = mid
                else:
                    hi = mid
            root = Point((lo.x + hi.x) / 2, (lo.y + hi.y) / 2)
            sector = _containing_sector(sectors, root)
            if sector is None:
                continue
            conic = bisector_conic(sector)
            scale = max(abs(v) for v in conic.as_tuple())
            assert abs(conic.evaluate(root)) <= 1e-6 * scale
            found += 1
        assert found >= 20


def _containing_sector(sectors, p, tol=1e-9):
    for sec in sectors:
        inside = True
        n = len(sec.region)
        for i in range(n):
            a, b = sec.region[i], sec.region[(i + 1) % n]
            if (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) < tol:
                inside = False
                break
        if inside:
            return sec
    return None


def _random_simplex_point(rng):
    while True:
        x, y = rng.uniform(0.02, 0.96, size=2)
        if x + y < 0.98:
            return Point(x, y)
