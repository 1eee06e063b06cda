from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from fillcurve.geometry import (
    AffineMap,
    DegenerateError,
    OrientedTriangle,
    Point2,
    Segment,
    diameter_sq,
    orientation,
    point,
    point_in_triangle,
    polyline_proper_intersections,
    segments_properly_intersect,
    signed_area,
    triple_signed_area,
)

coords = st.fractions(min_value=-4, max_value=4, max_denominator=24)


@st.composite
def triangles(draw):
    pts = [Point2(draw(coords), draw(coords)) for _ in range(3)]
    assume(orientation(*[p.as_pair() for p in pts]) != 0)
    return OrientedTriangle(*pts)


def seg(x1, y1, x2, y2):
    return Segment(point(x1, y1), point(x2, y2))


class TestSignedArea:
    def test_base2_height1(self):
        assert signed_area(OrientedTriangle(point(0, 0), point(2, 0), point(1, 1))) == 1

    def test_hand_determinant(self):
        tri = OrientedTriangle(point(0, 0), point(1, 1), point(F(3, 4), 0))
        assert signed_area(tri) == F(-3, 8)

    def test_collinear_triple_is_zero(self):
        assert triple_signed_area(point(0, 0), point(1, 0), point(2, 0)) == 0

    def test_collinear_triangle_rejected(self):
        with pytest.raises(DegenerateError):
            OrientedTriangle(point(0, 0), point(1, 0), point(2, 0))

    @given(triangles())
    @settings(deadline=None)
    def test_cyclic_invariance_and_swap(self, tri):
        cycled = OrientedTriangle(tri.exit, tri.apex, tri.entry)
        swapped = OrientedTriangle(tri.exit, tri.entry, tri.apex)
        assert signed_area(cycled) == signed_area(tri)
        assert signed_area(swapped) == -signed_area(tri)

    @given(triangles(), st.fractions(min_value=F(1, 8), max_value=4, max_denominator=16),
           coords, coords)
    @settings(deadline=None)
    def test_translate_scale_multiplies_area_by_factor_squared(self, tri, s, dx, dy):
        m = AffineMap.translate_scale(s, Point2(dx, dy))
        image = OrientedTriangle(*(m.apply(v) for v in tri.vertices))
        assert signed_area(image) == s * s * signed_area(tri)


class TestDiameterSq:
    def test_examples(self):
        assert diameter_sq(OrientedTriangle(point(0, 0), point(2, 0), point(1, 1))) == 4
        assert diameter_sq(OrientedTriangle(point(0, 0), point(1, 0), point(0, 1))) == 2
        # sides are 2, 9/16 and 17/16
        tri = OrientedTriangle(point(0, 0), point(1, 1), point(F(3, 4), 0))
        assert diameter_sq(tri) == 2


class TestProperIntersection:
    def test_crossing_diagonals(self):
        assert segments_properly_intersect(seg(0, 0, 1, 1), seg(0, 1, 1, 0))

    def test_consecutive_shared_endpoint_allowed(self):
        assert not segments_properly_intersect(seg(0, 0, 1, 0), seg(1, 0, 2, 0))

    def test_parallel_disjoint(self):
        assert not segments_properly_intersect(seg(0, 0, 1, 0), seg(0, 1, 1, 1))

    def test_collinear_overlap(self):
        assert segments_properly_intersect(seg(0, 0, 2, 0), seg(1, 0, 3, 0))

    def test_shared_endpoint_with_collinear_backtrack(self):
        assert segments_properly_intersect(seg(0, 0, 2, 0), seg(2, 0, 1, 0))

    def test_endpoint_in_interior(self):
        assert segments_properly_intersect(seg(0, 0, 2, 0), seg(1, 0, 1, 1))

    def test_identical_segments(self):
        assert segments_properly_intersect(seg(0, 0, 1, 1), seg(1, 1, 0, 0))

    def test_touching_at_non_endpoint_vertex(self):
        # apex of one touches the interior of the other
        assert segments_properly_intersect(seg(0, 0, 2, 0), seg(1, 1, 1, 0))

    @given(st.tuples(*[st.integers(-4, 4) for _ in range(8)]))
    @settings(deadline=None)
    def test_symmetry(self, xs):
        x1, y1, x2, y2, x3, y3, x4, y4 = xs
        assume((x1, y1) != (x2, y2) and (x3, y3) != (x4, y4))
        s1 = seg(x1, y1, x2, y2)
        s2 = seg(x3, y3, x4, y4)
        assert segments_properly_intersect(s1, s2) == segments_properly_intersect(s2, s1)


class TestPointInTriangle:
    def test_closed_containment(self):
        tri = OrientedTriangle(point(0, 0), point(2, 0), point(1, 1))
        assert point_in_triangle(point(1, F(1, 2)), tri)
        assert point_in_triangle(point(0, 0), tri)          # vertex
        assert point_in_triangle(point(1, 0), tri)          # edge
        assert not point_in_triangle(point(1, 2), tri)
        assert not point_in_triangle(point(-1, 0), tri)

    def test_orientation_independent(self):
        cw = OrientedTriangle(point(0, 0), point(1, 1), point(2, 0))
        assert point_in_triangle(point(1, F(1, 2)), cw)


class TestPolylineScan:
    def test_figure_eight_detected(self):
        pts = [point(0, 0), point(2, 2), point(2, 0), point(0, 2)]
        assert polyline_proper_intersections(pts) == [(0, 2)]

    def test_simple_chain_clean(self):
        pts = [point(0, 0), point(1, 0), point(1, 1), point(0, 1)]
        assert polyline_proper_intersections(pts) == []

    def test_limit_stops_early(self):
        pts = [point(0, 0), point(2, 2), point(2, 0), point(0, 2), point(0, 3),
               point(3, 0)]
        assert len(polyline_proper_intersections(pts, limit=1)) == 1


class TestAffineMap:
    def test_apply(self):
        m = AffineMap.translate_scale(F(1, 2), point(1, 1))
        assert m.apply(point(2, 4)) == point(2, 3)

    def test_singular_rejected(self):
        with pytest.raises(DegenerateError):
            AffineMap(F(1), F(0), F(2), F(0), F(0), F(0))

    def test_determinant(self):
        assert AffineMap.translate_scale(F(3), point(0, 0)).determinant == 9


class TestPrimitives:
    def test_degenerate_segment_rejected(self):
        with pytest.raises(DegenerateError):
            Segment(point(1, 1), point(1, 1))

    def test_duplicate_triangle_vertices_rejected(self):
        with pytest.raises(DegenerateError):
            OrientedTriangle(point(0, 0), point(0, 0), point(1, 1))
