"""Triangle-chain construction of a homogeneous area-filling curve.

Level n is an ordered chain of 2^n triangles joining the root's entry
vertex to its exit vertex.  Each refinement removes from every triangle a
middle triangle whose apex sits at the triangle's own apex and whose base
is centred on the entry-exit side, leaving two children of equal area; the
removal fraction at level k is the schedule ratio r_k, so all 2^n level-n
triangles have area p_n / 2^n exactly.

Addresses are bit strings: the triangle addressed eps_1..eps_n covers the
curve's parameter interval [0.eps_1..eps_n, 0.eps_1..eps_n + 2^-n], which
makes the entry vertex of that triangle the exact curve point at the
dyadic parameter 0.eps_1..eps_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import (
    DegenerateError,
    OrientedTriangle,
    Point2,
    diameter_sq,
    point,
    signed_area,
)
from .rational import parse_rational, rational_str
from .schedules import KnoppSchedule, ScheduleError, knopp_schedule

#: Area-1 root triangle with rational coordinates; any area-1 triangle works.
DEFAULT_ROOT = OrientedTriangle(point(0, 0), point(2, 0), point(1, 1))


@dataclass(frozen=True)
class AddressedTriangle:
    shape: OrientedTriangle
    address: str  # bits, length == chain depth
    area: Fraction  # |signed_area(shape)|, cached at construction


@dataclass(frozen=True)
class ChainLevel:
    """The ordered 2^depth triangles of one construction level."""

    depth: int
    triangles: tuple[AddressedTriangle, ...]
    schedule: KnoppSchedule
    root: OrientedTriangle

    def total_area(self) -> Fraction:
        return sum((t.area for t in self.triangles), Fraction(0))

    def max_diameter_sq(self) -> Fraction:
        return max(diameter_sq(t.shape) for t in self.triangles)

    def triangle_at(self, address: str) -> AddressedTriangle:
        if len(address) != self.depth or (address and set(address) - {"0", "1"}):
            raise ValueError(f"bad address {address!r} for depth {self.depth}")
        return self.triangles[int(address, 2)] if address else self.triangles[0]

    def dyadic_vertex(self, j: int) -> Point2:
        """Exact curve point at parameter j / 2^depth."""
        if not 0 <= j <= len(self.triangles):
            raise ValueError(f"dyadic index {j} outside [0, 2^{self.depth}]")
        if j == len(self.triangles):
            return self.triangles[-1].shape.exit
        return self.triangles[j].shape.entry

    def dyadic_polyline(self) -> list[Point2]:
        """The 2^depth + 1 exact curve points at parameters j / 2^depth."""
        pts = [t.shape.entry for t in self.triangles]
        pts.append(self.triangles[-1].shape.exit)
        return pts


def subdivide(tri: AddressedTriangle, r: Fraction) -> tuple[AddressedTriangle, AddressedTriangle]:
    """Split a triangle into its two children, removing the middle triangle
    with apex at the parent apex and base centred on the entry-exit side.

    With parent (P=entry, Q=exit, R=apex) the base endpoints are
    D = P + ((1-r)/2)(Q-P) and E = P + ((1+r)/2)(Q-P); the children are
    (P, R, D) and (R, Q, E), each of area ((1-r)/2) times the parent's.
    """
    r = Fraction(r)
    if not 0 < r < 1:
        raise ScheduleError(f"removal ratio must lie in ]0,1[, got {r}")
    shape = tri.shape
    p, q, apex = shape.entry, shape.exit, shape.apex
    span = q - p
    d = p + span.scaled((1 - r) / 2)
    e = p + span.scaled((1 + r) / 2)
    child_area = tri.area * (1 - r) / 2
    try:
        left = OrientedTriangle(p, apex, d)
        right = OrientedTriangle(apex, q, e)
    except DegenerateError as exc:
        raise DegenerateError(f"degenerate subdivision of {tri.address!r}") from exc
    return (
        AddressedTriangle(left, tri.address + "0", child_area),
        AddressedTriangle(right, tri.address + "1", child_area),
    )


def build_levels(schedule: KnoppSchedule, depth: int,
                 root: OrientedTriangle = DEFAULT_ROOT) -> list[ChainLevel]:
    """All chain levels 0..depth for the given schedule and root triangle."""
    if depth > schedule.horizon:
        raise ScheduleError(f"depth {depth} exceeds schedule horizon {schedule.horizon}")
    if depth < 0:
        raise ValueError("depth must be non-negative")
    root_area = abs(signed_area(root))
    if root_area != 1:
        raise ValueError(f"root triangle must have area 1, got {root_area}")
    level = [AddressedTriangle(root, "", Fraction(1))]
    levels = [ChainLevel(0, tuple(level), schedule, root)]
    for n in range(1, depth + 1):
        r = schedule.ratio(n)
        nxt = []
        for tri in level:
            nxt.extend(subdivide(tri, r))
        level = nxt
        levels.append(ChainLevel(n, tuple(level), schedule, root))
    return levels


def build_chain(schedule: KnoppSchedule, depth: int,
                root: OrientedTriangle = DEFAULT_ROOT) -> ChainLevel:
    return build_levels(schedule, depth, root)[depth]


def parameter_bits(t: Fraction, depth: int) -> list[int]:
    """First `depth` binary digits of t in [0,1]; t=1 maps to all ones so
    that the containing cell is the last one."""
    if not 0 <= t <= 1:
        raise ValueError(f"parameter {t} outside [0,1]")
    if t == 1:
        return [1] * depth
    bits = []
    x = t
    for _ in range(depth):
        x *= 2
        b = 1 if x >= 1 else 0
        bits.append(b)
        x -= b
    return bits


def dyadic_vertex(chain: ChainLevel, j: int) -> Point2:
    return chain.dyadic_vertex(j)


def evaluate(chain: ChainLevel, t: Fraction) -> tuple[Point2, Fraction]:
    """Evaluate the curve at parameter t against the given chain level.

    Dyadic parameters resolvable at this depth give the exact vertex with
    error radius 0.  Any other parameter returns the entry vertex of the
    depth-level triangle containing the curve point, together with that
    triangle's squared diameter as a certified squared error radius.
    """
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise ValueError(f"parameter {t} outside [0,1]")
    scaled = t * (1 << chain.depth)
    if scaled.denominator == 1:
        return chain.dyadic_vertex(scaled.numerator), Fraction(0)
    bits = parameter_bits(t, chain.depth)
    tri = chain.triangles[int("".join(map(str, bits)), 2) if bits else 0]
    return tri.shape.entry, diameter_sq(tri.shape)


def arc_area(schedule: KnoppSchedule, n: int, j: int,
             horizon: int) -> tuple[Fraction, Fraction]:
    """Exact area of the horizon-level triangles inside the depth-n triangle
    addressed by index j, together with its limit value.

    The 2^(horizon-n) descendants of the triangle carry total area
    p_horizon / 2^n; the limit as the horizon grows is beta / 2^n, and the
    residual (p_horizon - beta) / 2^n is exact.
    """
    if n < 0 or not 0 <= j < (1 << n):
        raise ValueError(f"dyadic interval index {j} invalid at depth {n}")
    if horizon < n:
        raise ValueError(f"horizon {horizon} must be at least the depth {n}")
    value = schedule.partial_product(horizon) / (1 << n)
    limit = schedule.beta / (1 << n)
    return value, limit


# --- JSON surface -----------------------------------------------------------

def chain_to_json_dict(chain: ChainLevel) -> dict:
    def pt(p: Point2) -> list[str]:
        return [rational_str(p.x), rational_str(p.y)]

    return {
        "depth": chain.depth,
        "beta": rational_str(chain.schedule.beta),
        "triangles": [
            {
                "address": tri.address,
                "entry": pt(tri.shape.entry),
                "exit": pt(tri.shape.exit),
                "apex": pt(tri.shape.apex),
                "area": rational_str(tri.area),
            }
            for tri in chain.triangles
        ],
    }


def chain_from_json_dict(data: dict, schedule: KnoppSchedule | None = None,
                         root: OrientedTriangle = DEFAULT_ROOT) -> ChainLevel:
    """Rebuild a chain level from its JSON dump.

    The dump does not embed the full schedule; unless one is supplied, the
    default rule for the recorded beta is assumed.
    """
    depth = int(data["depth"])
    beta = parse_rational(data["beta"])
    if schedule is None:
        schedule = knopp_schedule(beta, max(depth, 1))
    elif schedule.beta != beta:
        raise ScheduleError("schedule beta does not match the dump")

    def pt(v) -> Point2:
        return Point2(parse_rational(v[0]), parse_rational(v[1]))

    triangles = tuple(
        AddressedTriangle(
            OrientedTriangle(pt(t["entry"]), pt(t["exit"]), pt(t["apex"])),
            t["address"],
            parse_rational(t["area"]),
        )
        for t in data["triangles"]
    )
    if len(triangles) != 1 << depth:
        raise ValueError("triangle count does not match depth")
    return ChainLevel(depth, triangles, schedule, root)


class KnoppCurve:
    """Evaluator facade over a built chain: exact dyadic points, certified
    radii elsewhere, and interval evaluation for reparametrization."""

    def __init__(self, schedule: KnoppSchedule, depth: int,
                 root: OrientedTriangle = DEFAULT_ROOT):
        self.schedule = schedule
        self.depth = depth
        self.levels = build_levels(schedule, depth, root)
        self.chain = self.levels[depth]

    def eval(self, t: Fraction) -> tuple[Point2, Fraction]:
        return evaluate(self.chain, t)

    def eval_interval(self, lo: Fraction, hi: Fraction) -> tuple[Point2, Fraction]:
        """Point plus squared radius covering every curve value with
        parameter in [lo, hi]: the deepest chain triangle whose dyadic
        interval contains [lo, hi]."""
        if lo > hi:
            raise ValueError("empty parameter interval")
        blo = parameter_bits(Fraction(lo), self.depth)
        bhi = parameter_bits(Fraction(hi), self.depth)
        shared = []
        for a, b in zip(blo, bhi):
            if a != b:
                break
            shared.append(a)
        level = self.levels[len(shared)]
        tri = level.triangles[int("".join(map(str, shared)), 2)] if shared else level.triangles[0]
        return tri.shape.entry, diameter_sq(tri.shape)
