"""Reparametrization of positive area-filling curves via arc-area profiles.

For a curve whose every sub-arc has positive area, the normalized arc-area
function t -> area(curve([0, t])) / total is an increasing homeomorphism of
[0, 1]; composing the curve with its inverse yields a homogeneous
parametrization (arc area == total * parameter length, exactly, on every
breakpoint-aligned interval).

Profiles are exact breakpoint tables, optionally with a point evaluator
returning certified enclosures between breakpoints.  Inversion never rounds:
between breakpoints it bisects down to a caller-supplied denominator bound
and returns an exact interval.
"""

from __future__ import annotations

import bisect
import csv
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .geometry import Point2
from .knopp import arc_area
from .lance_thomas import ParamMap, area_profile
from .rational import decimal_str, rational_str
from .schedules import KnoppSchedule, LanceThomasSchedule


class NotPositiveCurveError(ValueError):
    """The profile has a flat stretch, so the curve has a zero-area arc and
    the reparametrization operator does not apply."""


@dataclass(frozen=True)
class Enclosure:
    """Exact rational interval certified to contain a value that depends on
    the construction's infinite tail."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty enclosure")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, value: Fraction) -> bool:
        return self.lo <= value <= self.hi


#: Point evaluator contract: exact lower/upper bounds for the arc area at t.
MassEvaluator = Callable[[Fraction], tuple[Fraction, Fraction]]


@dataclass(frozen=True)
class AreaProfile:
    """Monotone breakpoint table t_i -> arc area over [0, t_i], exact."""

    parameters: tuple[Fraction, ...]
    masses: tuple[Fraction, ...]
    total: Fraction
    point_evaluator: MassEvaluator | None = field(default=None, compare=False,
                                                  repr=False)

    def __post_init__(self):
        ts, fs = self.parameters, self.masses
        if len(ts) != len(fs) or len(ts) < 2:
            raise ValueError("profile needs matching parameter/mass tables")
        if ts[0] != 0 or ts[-1] != 1 or fs[0] != 0 or fs[-1] != self.total:
            raise ValueError("profile must run from (0, 0) to (1, total)")
        if any(a >= b for a, b in zip(ts, ts[1:])):
            raise ValueError("breakpoint parameters must strictly increase")
        if any(a > b for a, b in zip(fs, fs[1:])):
            raise ValueError("masses must be non-decreasing")
        if self.total <= 0:
            raise ValueError("total mass must be positive")

    @property
    def strictly_increasing(self) -> bool:
        return all(a < b for a, b in zip(self.masses, self.masses[1:]))

    def breakpoints(self):
        return zip(self.parameters, self.masses)

    def mass_at(self, t: Fraction) -> Fraction | Enclosure:
        """Arc area over [0, t]: exact at breakpoints, enclosure between."""
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise ValueError(f"parameter {t} outside [0,1]")
        idx = bisect.bisect_left(self.parameters, t)
        if idx < len(self.parameters) and self.parameters[idx] == t:
            return self.masses[idx]
        lo, hi = self.masses[idx - 1], self.masses[idx]
        if self.point_evaluator is not None:
            elo, ehi = self.point_evaluator(t)
            lo, hi = max(lo, elo), min(hi, ehi)
        if lo == hi:
            return lo
        return Enclosure(lo, hi)


def _require_positive(profile: AreaProfile):
    if not profile.strictly_increasing:
        raise NotPositiveCurveError(
            "profile is not strictly increasing: some arc has zero area")


def area_fraction(profile: AreaProfile, t: Fraction) -> Fraction | Enclosure:
    """Normalized arc area over [0, t] (the reparametrizing homeomorphism
    evaluated forward).  Exact at breakpoints, enclosure otherwise."""
    _require_positive(profile)
    mass = profile.mass_at(t)
    if isinstance(mass, Enclosure):
        return Enclosure(mass.lo / profile.total, mass.hi / profile.total)
    return mass / profile.total


def parameter_for_fraction(profile: AreaProfile, s: Fraction,
                           max_denominator: int = 2**32) -> Fraction | Enclosure:
    """Invert the normalized profile: the parameter t whose arc share is s.

    Exact when total*s is a breakpoint mass; otherwise bisects the
    bracketing breakpoint gap with the profile's point evaluator (when
    present) until the midpoint denominator would exceed `max_denominator`,
    and returns the remaining exact interval.
    """
    _require_positive(profile)
    s = Fraction(s)
    if not 0 <= s <= 1:
        raise ValueError(f"area fraction {s} outside [0,1]")
    target = profile.total * s
    idx = bisect.bisect_left(profile.masses, target)
    if profile.masses[idx] == target:
        return profile.parameters[idx]
    lo_t, hi_t = profile.parameters[idx - 1], profile.parameters[idx]
    if profile.point_evaluator is not None:
        while True:
            mid = (lo_t + hi_t) / 2
            if mid.denominator > max_denominator:
                break
            elo, ehi = profile.point_evaluator(mid)
            if elo == ehi == target:
                return mid
            if ehi <= target:
                lo_t = mid
            elif elo >= target:
                hi_t = mid
            else:
                break  # the enclosure straddles the target; cannot decide
    return Enclosure(lo_t, hi_t)


def knopp_profile(schedule: KnoppSchedule, depth: int) -> AreaProfile:
    """Profile of the homogeneous triangle-chain curve at dyadic breakpoints
    j / 2^depth.  Arc area over [0, j/2^n] is beta * j/2^n exactly (sum of
    the j leading dyadic arc limits), so the profile is linear."""
    beta = schedule.beta
    count = 1 << depth
    _, per_interval = arc_area(schedule, depth, 0, depth)
    params = tuple(Fraction(j, count) for j in range(count + 1))
    masses = tuple(per_interval * j for j in range(count + 1))
    return AreaProfile(params, masses, beta,
                       point_evaluator=lambda t: (beta * t, beta * t))


def lt_profile(schedule: LanceThomasSchedule, pmap: ParamMap) -> AreaProfile:
    """Strictly increasing profile of the corner-square curve at generation
    breakpoints.

    Joints carry zero mass, so of each flat stretch only its left end (the
    closing endpoint of a diagonal interval) is kept as a breakpoint; the
    table then runs through the 4^n interval ends with masses k * beta/4^n.
    """
    stage = pmap.cantor_stage()
    per_cell = schedule.beta / len(stage.intervals)
    params = [Fraction(0)]
    masses = [Fraction(0)]
    for k, (t0, t1, _) in enumerate(stage.intervals, start=1):
        params.append(t1)
        masses.append(per_cell * k)
    def enclose(t: Fraction) -> tuple[Fraction, Fraction]:
        return area_profile(pmap, t)
    return AreaProfile(tuple(params), tuple(masses), schedule.beta,
                       point_evaluator=enclose)


def square_pullback_profile(beta: Fraction, depth: int) -> AreaProfile:
    """Profile of the homogeneous curve precomposed with t -> t^2: the arc
    area over [0, t] becomes beta * t^2, sampled at dyadic breakpoints."""
    beta = Fraction(beta)
    params = tuple(Fraction(j, 1 << depth) for j in range((1 << depth) + 1))
    masses = tuple(beta * t * t for t in params)
    return AreaProfile(params, masses, beta,
                       point_evaluator=lambda t: (beta * t * t, beta * t * t))


class SquaredParameter:
    """Curve adapter t -> base(t^2) (the standard non-homogeneous example)."""

    def __init__(self, base):
        self.base = base

    def eval(self, t: Fraction) -> tuple[Point2, Fraction]:
        t = Fraction(t)
        return self.base.eval(t * t)

    def eval_interval(self, lo: Fraction, hi: Fraction) -> tuple[Point2, Fraction]:
        lo, hi = Fraction(lo), Fraction(hi)
        return self.base.eval_interval(lo * lo, hi * hi)


class ReparametrizedCurve:
    """Composition of a curve with the inverse of its normalized profile.

    At mapped breakpoints s_i = mass_i / total the value is the underlying
    curve at t_i, exactly; elsewhere the parameter is narrowed to an exact
    interval and the underlying curve is evaluated over it, returning a
    point with a certified squared radius.
    """

    def __init__(self, curve, profile: AreaProfile,
                 max_denominator: int = 2**32):
        _require_positive(profile)
        self.curve = curve
        self.base_profile = profile
        self.max_denominator = max_denominator
        total = profile.total
        self.profile = AreaProfile(
            tuple(m / total for m in profile.masses),
            profile.masses,
            total,
            point_evaluator=lambda s: (total * s, total * s),
        )

    def parameter(self, s: Fraction) -> Fraction | Enclosure:
        return parameter_for_fraction(self.base_profile, s, self.max_denominator)

    def eval(self, s: Fraction) -> tuple[Point2, Fraction]:
        t = self.parameter(s)
        if isinstance(t, Enclosure):
            return self.curve.eval_interval(t.lo, t.hi)
        return self.curve.eval(t)


def reparametrize(curve, profile: AreaProfile,
                  max_denominator: int = 2**32) -> ReparametrizedCurve:
    """Homogenize a positive curve: the result's profile satisfies
    mass(s) == total * s exactly at every mapped breakpoint."""
    return ReparametrizedCurve(curve, profile, max_denominator)


def square_pullback_split(schedule: KnoppSchedule,
                          horizon: int) -> tuple[Fraction, Fraction]:
    """Arc areas of the two parameter halves of the t^2-pulled-back
    homogeneous curve, at the given accounting horizon.

    The first half [0, 1/2] pulls back to [0, 1/4], so its horizon-m area
    is p_m / 4 (limit beta/4) while the second half carries p_m - p_m/4
    (limit 3 beta/4): mass splits 1:3 instead of 1:1, so the pullback is
    not homogeneous.
    """
    if horizon < 2:
        raise ValueError("horizon must be at least 2")
    left, _ = arc_area(schedule, 2, 0, horizon)
    right = schedule.partial_product(horizon) - left
    return left, right


def write_profile_csv(profile: AreaProfile, fileobj,
                      decimal: bool = False) -> None:
    """Rows t, mass as num/den pairs; optional extra decimal columns."""
    writer = csv.writer(fileobj, lineterminator="\n")
    header = ["t", "area"]
    if decimal:
        header += ["t_decimal", "area_decimal"]
    writer.writerow(header)
    for t, m in profile.breakpoints():
        row = [rational_str(t), rational_str(m)]
        if decimal:
            row += [decimal_str(t), decimal_str(m)]
        writer.writerow(row)
