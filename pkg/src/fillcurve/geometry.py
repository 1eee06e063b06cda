"""Exact planar primitives for the curve constructions.

Points, segments, oriented triangles and affine maps over arbitrary-precision
rationals, plus the orientation predicates that the nesting and injectivity
checks rely on.  There is no floating point and no epsilon anywhere: every
predicate decision is an exact sign test, and lengths are kept squared so
that all quantities stay rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence


class DegenerateError(ValueError):
    """A primitive would be geometrically degenerate (zero area/length)."""


@dataclass(frozen=True)
class Point2:
    x: Fraction
    y: Fraction

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def scaled(self, factor: Fraction) -> "Point2":
        return Point2(self.x * factor, self.y * factor)

    def as_pair(self) -> tuple[Fraction, Fraction]:
        return (self.x, self.y)


def point(x, y) -> Point2:
    """Build a Point2, coercing ints/strings through Fraction."""
    return Point2(Fraction(x), Fraction(y))


@dataclass(frozen=True)
class Segment:
    p: Point2
    q: Point2

    def __post_init__(self):
        if self.p == self.q:
            raise DegenerateError(f"zero-length segment at {self.p}")


@dataclass(frozen=True)
class OrientedTriangle:
    """Triangle with chain roles: the curve enters at `entry`, leaves at
    `exit`, and `apex` is the remaining vertex (the one the next removal
    pivots on)."""

    entry: Point2
    exit: Point2
    apex: Point2

    def __post_init__(self):
        if len({self.entry, self.exit, self.apex}) != 3:
            raise DegenerateError("triangle vertices must be pairwise distinct")
        if orientation(self.entry.as_pair(), self.exit.as_pair(), self.apex.as_pair()) == 0:
            raise DegenerateError("collinear triangle")

    @property
    def vertices(self) -> tuple[Point2, Point2, Point2]:
        return (self.entry, self.exit, self.apex)


def triple_signed_area(a: Point2, b: Point2, c: Point2) -> Fraction:
    """Signed area of an arbitrary point triple; zero when collinear."""
    return orientation(a.as_pair(), b.as_pair(), c.as_pair()) / 2


def signed_area(tri: OrientedTriangle) -> Fraction:
    """Half the determinant of (exit-entry, apex-entry); sign gives the
    orientation, absolute value the Euclidean area."""
    return triple_signed_area(tri.entry, tri.exit, tri.apex)


def dist_sq(a: Point2, b: Point2) -> Fraction:
    dx = a.x - b.x
    dy = a.y - b.y
    return dx * dx + dy * dy


def diameter_sq(tri: OrientedTriangle) -> Fraction:
    """Largest squared side length (squared to stay rational)."""
    return max(
        dist_sq(tri.entry, tri.exit),
        dist_sq(tri.exit, tri.apex),
        dist_sq(tri.apex, tri.entry),
    )


@dataclass(frozen=True)
class AffineMap:
    """Invertible affine map p -> L p + t with L = [[a, b], [c, d]]."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    tx: Fraction
    ty: Fraction

    def __post_init__(self):
        if self.determinant == 0:
            raise DegenerateError("affine map must be invertible")

    @property
    def determinant(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    @classmethod
    def translate_scale(cls, factor: Fraction, offset: Point2) -> "AffineMap":
        """Pure scaling by `factor` followed by translation to `offset`."""
        f = Fraction(factor)
        return cls(f, Fraction(0), Fraction(0), f, offset.x, offset.y)

    def apply(self, p: Point2) -> Point2:
        return Point2(self.a * p.x + self.b * p.y + self.tx,
                      self.c * p.x + self.d * p.y + self.ty)


# --- orientation predicates -------------------------------------------------
#
# These operate on plain (x, y) pairs so the same code runs on Fractions and
# on integer-scaled coordinates.

def orientation(pa, pb, pc):
    """Twice the signed area of triangle (pa, pb, pc).

    > 0: pc lies left of pa->pb (counter-clockwise)
    = 0: collinear
    < 0: right turn (clockwise)
    """
    return (pb[0] - pa[0]) * (pc[1] - pa[1]) - (pb[1] - pa[1]) * (pc[0] - pa[0])


def _within_span(pa, pb, pc) -> bool:
    # pc assumed collinear with pa-pb; is it inside the closed bounding box?
    return (min(pa[0], pb[0]) <= pc[0] <= max(pa[0], pb[0])
            and min(pa[1], pb[1]) <= pc[1] <= max(pa[1], pb[1]))


def _closed_segments_intersect(p1, q1, p2, q2) -> bool:
    o1 = orientation(p1, q1, p2)
    o2 = orientation(p1, q1, q2)
    o3 = orientation(p2, q2, p1)
    o4 = orientation(p2, q2, q1)
    if o1 == 0 and _within_span(p1, q1, p2):
        return True
    if o2 == 0 and _within_span(p1, q1, q2):
        return True
    if o3 == 0 and _within_span(p2, q2, p1):
        return True
    if o4 == 0 and _within_span(p2, q2, q1):
        return True
    return (o1 > 0) != (o2 > 0) and (o1 < 0) != (o2 < 0) \
        and (o3 > 0) != (o4 > 0) and (o3 < 0) != (o4 < 0)


def _proper_intersection(p1, q1, p2, q2) -> bool:
    """True iff the closed segments share a point other than a single
    common endpoint.  Exact; symmetric in the two segments."""
    shared = [e for e in (p1, q1) if e == p2 or e == q2]
    if len(shared) >= 2:
        # identical (possibly reversed) segments overlap along their length
        return True
    if len(shared) == 1:
        e = shared[0]
        u = q1 if p1 == e else p1
        v = q2 if p2 == e else p2
        if orientation(e, u, v) != 0:
            return False  # non-collinear: the lines only meet at e
        # collinear: overlap beyond e iff the free endpoints leave e on the
        # same side
        dot = (u[0] - e[0]) * (v[0] - e[0]) + (u[1] - e[1]) * (v[1] - e[1])
        return dot > 0
    return _closed_segments_intersect(p1, q1, p2, q2)


def segments_properly_intersect(s1: Segment, s2: Segment) -> bool:
    """Exact predicate: do the closed segments share a point that is not a
    single shared endpoint (as consecutive polyline pieces do)?"""
    return _proper_intersection(s1.p.as_pair(), s1.q.as_pair(),
                                s2.p.as_pair(), s2.q.as_pair())


def point_in_triangle(p: Point2, tri: OrientedTriangle) -> bool:
    """Closed containment test via three exact orientation signs."""
    pp = p.as_pair()
    a, b, c = tri.entry.as_pair(), tri.exit.as_pair(), tri.apex.as_pair()
    s = 1 if orientation(a, b, c) > 0 else -1
    for u, v in ((a, b), (b, c), (c, a)):
        if s * orientation(u, v, pp) < 0:
            return False
    return True


def _integer_coords(points: Sequence[Point2]) -> list[tuple[int, int]]:
    # Clearing denominators once makes the O(n^2) predicate sweep pure
    # integer arithmetic.
    denoms = set()
    for p in points:
        denoms.add(p.x.denominator)
        denoms.add(p.y.denominator)
    scale = reduce(math.lcm, denoms, 1)
    return [(p.x.numerator * (scale // p.x.denominator),
             p.y.numerator * (scale // p.y.denominator)) for p in points]


def polyline_proper_intersections(points: Sequence[Point2],
                                  limit: int | None = None) -> list[tuple[int, int]]:
    """Brute-force scan of all segment pairs of the polyline through
    `points`; returns the (i, j) index pairs that properly intersect.

    An empty result certifies the polyline is injective.  Coordinates are
    scaled to integers up front; a bounding-box filter rejects far-apart
    pairs before the exact predicate runs.
    """
    pts = _integer_coords(points)
    n = len(pts) - 1
    segs = []
    for i in range(n):
        p, q = pts[i], pts[i + 1]
        segs.append((p, q,
                     min(p[0], q[0]), max(p[0], q[0]),
                     min(p[1], q[1]), max(p[1], q[1])))
    bad: list[tuple[int, int]] = []
    for i in range(n):
        p1, q1, xlo, xhi, ylo, yhi = segs[i]
        for j in range(i + 1, n):
            p2, q2, xlo2, xhi2, ylo2, yhi2 = segs[j]
            if xlo2 > xhi or xhi2 < xlo or ylo2 > yhi or yhi2 < ylo:
                continue
            if _proper_intersection(p1, q1, p2, q2):
                bad.append((i, j))
                if limit is not None and len(bad) >= limit:
                    return bad
    return bad
