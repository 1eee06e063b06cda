"""Corner-square chain construction (Lance-Thomas family).

Generation 1 places four squares of side a_1/2 at the corners of the unit
square and threads a polygonal line through them: the traversed diagonal of
each square runs bottom-left to top-right, the squares are visited in the
order LL, UL, LR, UR, and three straight joints connect consecutive squares.
The parameter interval [0,1] splits into seven pieces whose lengths equal
the areas of the rectangles the seven segments cross:

    (a/2)^2, (a/2)(1-a), (a/2)^2, (1-a), (a/2)^2, (a/2)(1-a), (a/2)^2

Refining replaces every square (and its parameter interval) by a scaled
translate of the same pattern built with the next coefficient; joints never
change again.  The diagonal intervals form the even-indexed stages of a
symmetric Cantor set whose measure equals the area of the square chain,
generation by generation.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction

from .geometry import AffineMap, Point2, point
from .rational import parse_rational, rational_str
from .schedules import LanceThomasSchedule, ScheduleError, lance_thomas_schedule

DIAGONAL = "diagonal"
JOINT = "joint"

#: Sub-square visiting order encoded by address digit: 0=lower-left,
#: 1=upper-left, 2=lower-right, 3=upper-right.
DIGIT_ORDER = "0123"


@dataclass(frozen=True)
class Piece:
    """One linear piece of the parametrization: a cell diagonal or a joint."""

    kind: str
    t0: Fraction
    t1: Fraction
    start: Point2
    end: Point2
    address: str | None = None  # base-4 digits for diagonals, None for joints

    @property
    def length(self) -> Fraction:
        return self.t1 - self.t0

    def point_at(self, t: Fraction) -> Point2:
        frac = (t - self.t0) / (self.t1 - self.t0)
        return self.start + (self.end - self.start).scaled(frac)


@dataclass(frozen=True)
class SquareCell:
    lower_left: Point2
    side: Fraction
    entry: Point2  # lower-left corner: the traversed diagonal starts here
    exit: Point2   # upper-right corner
    address: str


@dataclass(frozen=True)
class CantorStage:
    """Parameter-domain view of one generation: the diagonal intervals (the
    even-stage Cantor intervals) and the persistent joint intervals."""

    generation: int
    intervals: tuple[tuple[Fraction, Fraction, str], ...]
    joints: tuple[tuple[Fraction, Fraction], ...]

    def measure(self) -> Fraction:
        return sum((t1 - t0 for t0, t1, _ in self.intervals), Fraction(0))


@dataclass(frozen=True)
class ParamMap:
    """Piecewise-linear parametrization of one generation's polygonal line."""

    generation: int
    pieces: tuple[Piece, ...]
    schedule: LanceThomasSchedule

    def __post_init__(self):
        # parameter intervals must tile [0,1]; geometric integrity is the
        # verification harness's job, so corrupt geometry stays constructible
        if not self.pieces or self.generation < 1:
            raise ValueError("a map needs pieces and a positive generation")
        if self.pieces[0].t0 != 0 or self.pieces[-1].t1 != 1:
            raise ValueError("parameter range must be exactly [0,1]")
        for prev, nxt in zip(self.pieces, self.pieces[1:]):
            if prev.t1 != nxt.t0:
                raise ValueError(f"parameter gap at t={prev.t1}")
        if any(p.t1 <= p.t0 for p in self.pieces):
            raise ValueError("empty parameter interval")

    @property
    def segment_count(self) -> int:
        return len(self.pieces)

    def breakpoints(self) -> list[tuple[Fraction, Point2]]:
        pts = [(p.t0, p.start) for p in self.pieces]
        pts.append((self.pieces[-1].t1, self.pieces[-1].end))
        return pts

    def polyline(self) -> list[Point2]:
        return [p for _, p in self.breakpoints()]

    def piece_containing(self, t: Fraction) -> Piece:
        if not 0 <= t <= 1:
            raise ValueError(f"parameter {t} outside [0,1]")
        starts = [p.t0 for p in self.pieces]
        idx = bisect.bisect_right(starts, t) - 1
        return self.pieces[max(idx, 0)]

    def point_at(self, t: Fraction) -> Point2:
        return self.piece_containing(Fraction(t)).point_at(Fraction(t))

    def cells(self) -> list[SquareCell]:
        out = []
        for p in self.pieces:
            if p.kind == DIAGONAL:
                out.append(SquareCell(p.start, p.end.x - p.start.x,
                                      p.start, p.end, p.address))
        return out

    def cantor_stage(self) -> CantorStage:
        return CantorStage(
            self.generation,
            tuple((p.t0, p.t1, p.address) for p in self.pieces if p.kind == DIAGONAL),
            tuple((p.t0, p.t1) for p in self.pieces if p.kind == JOINT),
        )


def _pattern(a: Fraction):
    """The seven-piece unit pattern for coefficient a: relative parameter
    lengths plus start/end points in the unit square."""
    h = a / 2
    diag = h * h
    side_joint = h * (1 - a)
    centre = 1 - a
    return (
        (diag, point(0, 0), Point2(h, h), DIAGONAL, "0"),
        (side_joint, Point2(h, h), Point2(Fraction(0), 1 - h), JOINT, None),
        (diag, Point2(Fraction(0), 1 - h), Point2(h, Fraction(1)), DIAGONAL, "1"),
        (centre, Point2(h, Fraction(1)), Point2(1 - h, Fraction(0)), JOINT, None),
        (diag, Point2(1 - h, Fraction(0)), Point2(Fraction(1), h), DIAGONAL, "2"),
        (side_joint, Point2(Fraction(1), h), Point2(1 - h, 1 - h), JOINT, None),
        (diag, Point2(1 - h, 1 - h), point(1, 1), DIAGONAL, "3"),
    )


def _expand(t0: Fraction, length: Fraction, placement: AffineMap,
            address: str, a: Fraction) -> list[Piece]:
    pieces = []
    cursor = t0
    for rel_len, u0, u1, kind, digit in _pattern(a):
        t_next = cursor + length * rel_len
        pieces.append(Piece(kind, cursor, t_next,
                            placement.apply(u0), placement.apply(u1),
                            address + digit if kind == DIAGONAL else None))
        cursor = t_next
    assert cursor == t0 + length  # the seven lengths telescope exactly
    return pieces


def first_generation(schedule: LanceThomasSchedule) -> ParamMap:
    """Seven-piece map threading the four corner squares of side a_1/2."""
    if schedule.horizon < 1:
        raise ScheduleError("schedule horizon must be at least 1")
    identity = AffineMap.translate_scale(Fraction(1), point(0, 0))
    pieces = _expand(Fraction(0), Fraction(1), identity, "", schedule.coefficient(1))
    return ParamMap(1, tuple(pieces), schedule)


def refine(pmap: ParamMap, schedule: LanceThomasSchedule,
           to_generation: int) -> ParamMap:
    """Refine to the requested generation: every cell diagonal is replaced
    by the translate+scale image of the base pattern with the next
    coefficient; joints are carried over untouched."""
    if to_generation > schedule.horizon:
        raise ScheduleError(
            f"generation {to_generation} exceeds schedule horizon {schedule.horizon}")
    if to_generation < pmap.generation:
        raise ValueError("cannot refine to a coarser generation")
    current = pmap
    for gen in range(pmap.generation + 1, to_generation + 1):
        a = schedule.coefficient(gen)
        pieces: list[Piece] = []
        for pc in current.pieces:
            if pc.kind == JOINT:
                pieces.append(pc)
            else:
                side = pc.end.x - pc.start.x
                placement = AffineMap.translate_scale(side, pc.start)
                pieces.extend(_expand(pc.t0, pc.length, placement, pc.address, a))
        current = ParamMap(gen, tuple(pieces), schedule)
    return current


def build_map(schedule: LanceThomasSchedule, generation: int) -> ParamMap:
    return refine(first_generation(schedule), schedule, generation)


def evaluate(pmap: ParamMap, t: Fraction) -> tuple[Point2, Fraction]:
    """Evaluate the generation map at t exactly, with a certified squared
    error radius against the limit curve.

    Joints and breakpoints are final (radius 0); inside a cell diagonal the
    limit curve stays within the cell, giving the uniform squared bound
    2 * side^2 with side = (a_1/2)...(a_n/2).
    """
    t = Fraction(t)
    piece = pmap.piece_containing(t)
    value = piece.point_at(t)
    if piece.kind == JOINT or t == piece.t0 or t == piece.t1:
        return value, Fraction(0)
    side = pmap.schedule.side(pmap.generation)
    return value, 2 * side * side


def chain_area(schedule: LanceThomasSchedule, n: int) -> Fraction:
    """Total area of the 4^n generation-n squares: (a_1 ... a_n)^2 = q_n^2."""
    side = schedule.side(n)
    return (4**n) * side * side


def cantor_factor(schedule: LanceThomasSchedule, n: int) -> list[tuple[Fraction, Fraction]]:
    """Stage n of the one-dimensional symmetric Cantor set whose square is
    the essential image: 2^n intervals of length (a_1/2)...(a_n/2)."""
    intervals = [(Fraction(0), Fraction(1))]
    for k in range(1, n + 1):
        h = schedule.coefficient(k) / 2
        nxt = []
        for x0, x1 in intervals:
            span = x1 - x0
            nxt.append((x0, x0 + span * h))
            nxt.append((x1 - span * h, x1))
        intervals = nxt
    return intervals


def essential_image_stage(schedule: LanceThomasSchedule, n: int,
                          pmap: ParamMap | None = None,
                          ) -> tuple[list[SquareCell], list[tuple[Fraction, Fraction]]]:
    """Generation-n square union together with the 1-D Cantor stage K_n,
    asserting the product structure: the 4^n cells are exactly the pairwise
    products of the 2^n factor intervals."""
    if n < 1:
        raise ValueError("generation must be at least 1")
    if pmap is None:
        pmap = build_map(schedule, n)
    elif pmap.generation != n:
        raise ValueError("map generation does not match the requested stage")
    cells = pmap.cells()
    factor = cantor_factor(schedule, n)
    spans = {(c.lower_left.x, c.lower_left.x + c.side,
              c.lower_left.y, c.lower_left.y + c.side) for c in cells}
    expected = {(x0, x1, y0, y1) for x0, x1 in factor for y0, y1 in factor}
    if spans != expected:
        raise AssertionError("cell union is not the Cantor-factor product")
    return cells, factor


def area_profile(pmap: ParamMap, t: Fraction) -> tuple[Fraction, Fraction]:
    """Exact enclosure of the limit curve's arc area over [0, t].

    Each generation-n diagonal interval carries limit mass beta / 4^n; the
    lower bound counts the intervals completed by t, the upper bound adds
    one interval share when t sits strictly inside one.  At interval
    endpoints and inside joints the bracket collapses to the exact value.
    """
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise ValueError(f"parameter {t} outside [0,1]")
    stage = pmap.cantor_stage()
    per_cell = pmap.schedule.beta / len(stage.intervals)
    ends = [iv[1] for iv in stage.intervals]
    done = bisect.bisect_right(ends, t)
    lower = per_cell * done
    if done < len(stage.intervals):
        t0, t1, _ = stage.intervals[done]
        if t0 < t < t1:
            return lower, lower + per_cell
    return lower, lower


# --- JSON surface -----------------------------------------------------------

def map_to_json_dict(pmap: ParamMap) -> dict:
    def pt(p: Point2) -> list[str]:
        return [rational_str(p.x), rational_str(p.y)]

    cells = []
    joints = []
    cantor = []
    for piece in pmap.pieces:
        if piece.kind == DIAGONAL:
            side = piece.end.x - piece.start.x
            cells.append({
                "address": piece.address,
                "t0": rational_str(piece.t0),
                "t1": rational_str(piece.t1),
                "lower_left": pt(piece.start),
                "side": rational_str(side),
                "entry": pt(piece.start),
                "exit": pt(piece.end),
            })
            cantor.append({
                "t0": rational_str(piece.t0),
                "t1": rational_str(piece.t1),
                "address": piece.address,
            })
        else:
            joints.append({
                "t0": rational_str(piece.t0),
                "t1": rational_str(piece.t1),
                "start": pt(piece.start),
                "end": pt(piece.end),
            })
    return {
        "generation": pmap.generation,
        "alpha": rational_str(pmap.schedule.alpha),
        "beta": rational_str(pmap.schedule.beta),
        "cells": cells,
        "joints": joints,
        "cantor_intervals": cantor,
    }


def map_from_json_dict(data: dict,
                       schedule: LanceThomasSchedule | None = None) -> ParamMap:
    generation = int(data["generation"])
    alpha = parse_rational(data["alpha"])
    if schedule is None:
        schedule = lance_thomas_schedule(alpha, max(generation, 1))
    elif schedule.alpha != alpha:
        raise ScheduleError("schedule alpha does not match the dump")

    def pt(v) -> Point2:
        return Point2(parse_rational(v[0]), parse_rational(v[1]))

    pieces = []
    for c in data["cells"]:
        pieces.append(Piece(DIAGONAL, parse_rational(c["t0"]), parse_rational(c["t1"]),
                            pt(c["entry"]), pt(c["exit"]), c["address"]))
    for j in data["joints"]:
        pieces.append(Piece(JOINT, parse_rational(j["t0"]), parse_rational(j["t1"]),
                            pt(j["start"]), pt(j["end"])))
    pieces.sort(key=lambda p: p.t0)
    return ParamMap(generation, tuple(pieces), schedule)


class LanceThomasCurve:
    """Evaluator facade over a built map, including certified interval
    evaluation for reparametrization."""

    def __init__(self, schedule: LanceThomasSchedule, generation: int):
        self.schedule = schedule
        self.map = build_map(schedule, generation)

    def eval(self, t: Fraction) -> tuple[Point2, Fraction]:
        return evaluate(self.map, t)

    def eval_interval(self, lo: Fraction, hi: Fraction) -> tuple[Point2, Fraction]:
        """Point plus squared radius covering every limit-curve value with
        parameter in [lo, hi]: the bounding box of all pieces the interval
        touches (a cell contains all its refinements; a joint is final)."""
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("empty parameter interval")
        starts = [p.t0 for p in self.map.pieces]
        i0 = max(bisect.bisect_right(starts, lo) - 1, 0)
        i1 = max(bisect.bisect_right(starts, hi) - 1, 0)
        xs: list[Fraction] = []
        ys: list[Fraction] = []
        for piece in self.map.pieces[i0:i1 + 1]:
            for p in (piece.start, piece.end):
                xs.append(p.x)
                ys.append(p.y)
        radius_sq = (max(xs) - min(xs)) ** 2 + (max(ys) - min(ys)) ** 2
        return self.map.point_at(lo), radius_sq
