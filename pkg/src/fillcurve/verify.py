"""Exact invariant harness for built chains and maps.

Every check is an exact rational identity; the diameter-decay check is an
exact comparison over a finite window that the report declares.  Checks are
registered in module-level tables so that the CLI `verify` subcommand and
the test suite run exactly the same list.  Failures carry a reproducible
witness (address, index or parameter).
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import knopp, lance_thomas
from .geometry import (
    dist_sq,
    point_in_triangle,
    polyline_proper_intersections,
    signed_area,
)
from .rational import rational_str
from .schedules import LanceThomasSchedule, ScheduleError, first_small_index

#: Squared version of the three-level diameter shrink factor 3/4.
DECAY_FACTOR_SQ = Fraction(9, 16)
#: Ratio threshold past which the three-level shrink argument applies.
DECAY_RATIO_BOUND = Fraction(1, 8)
#: Window length (in start levels) over which decay is asserted per run.
DECAY_WINDOW = 6
#: Depth/generation caps for the quadratic injectivity sweeps.
KNOPP_INJECTIVITY_DEPTH = 8
LT_INJECTIVITY_GENERATION = 4


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    witness: str | None
    elapsed_s: float


@dataclass(frozen=True)
class CheckReport:
    family: str
    params: dict
    checks: tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "all_passed": self.all_passed,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "detail": c.detail,
                    "witness": c.witness,
                    "elapsed_s": round(c.elapsed_s, 6),
                }
                for c in self.checks
            ],
        }


def thread_cap() -> int:
    """Parallel fan-out cap from FILLCURVE_THREADS (default: sequential)."""
    raw = os.environ.get("FILLCURVE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run_checks(family: str, params: dict, registry, ctx) -> CheckReport:
    def timed(entry):
        name, fn = entry
        start = time.perf_counter()
        passed, detail, witness = fn(ctx)
        return CheckResult(name, passed, detail, witness,
                           time.perf_counter() - start)

    workers = thread_cap()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(timed, registry))
    else:
        results = [timed(entry) for entry in registry]
    results.sort(key=lambda c: c.name)
    return CheckReport(family, params, tuple(results))


# --- triangle-chain checks ---------------------------------------------------

class _KnoppContext:
    def __init__(self, chain: knopp.ChainLevel):
        self.chain = chain
        self.schedule = chain.schedule
        # Honest ancestry rebuilt from the schedule; the supplied chain is
        # what gets examined.
        self.levels = knopp.build_levels(self.schedule, chain.depth, chain.root)

    def level(self, n: int) -> knopp.ChainLevel:
        if n == self.chain.depth:
            return self.chain
        return self.levels[n]


def _knopp_connectivity(ctx) -> tuple[bool, str, str | None]:
    tris = ctx.chain.triangles
    for i in range(len(tris) - 1):
        if tris[i].shape.exit != tris[i + 1].shape.entry:
            return False, "chain link broken", f"between indices {i} and {i + 1}"
    return True, f"{len(tris)} triangles linked entry-to-exit", None


def _knopp_area_per_triangle(ctx) -> tuple[bool, str, str | None]:
    n = ctx.chain.depth
    expected = ctx.schedule.partial_product(n) / (1 << n)
    for tri in ctx.chain.triangles:
        if tri.area != expected or abs(signed_area(tri.shape)) != expected:
            return False, f"area differs from p_n/2^n = {rational_str(expected)}", \
                f"address {tri.address or '(root)'}"
    return True, f"every triangle has area {rational_str(expected)}", None


def _knopp_area_total(ctx) -> tuple[bool, str, str | None]:
    n = ctx.chain.depth
    expected = ctx.schedule.partial_product(n)
    telescoped = Fraction(1)
    for k in range(1, n + 1):
        telescoped *= 1 - ctx.schedule.ratio(k)
    total = ctx.chain.total_area()
    if total != expected or telescoped != expected:
        return False, "total chain area is off", \
            f"total {rational_str(total)} vs p_n {rational_str(expected)}"
    return True, f"total area equals p_n = {rational_str(expected)}", None


def _knopp_nesting(ctx) -> tuple[bool, str, str | None]:
    for level_index in range(1, ctx.chain.depth + 1):
        parents = ctx.level(level_index - 1)
        for tri in ctx.level(level_index).triangles:
            parent = parents.triangle_at(tri.address[:-1])
            for vertex in tri.shape.vertices:
                if not point_in_triangle(vertex, parent.shape):
                    return False, "child triangle escapes its parent", \
                        f"address {tri.address}"
    return True, f"all levels 1..{ctx.chain.depth} nested in their parents", None


def _knopp_injectivity(ctx) -> tuple[bool, str, str | None]:
    depth = min(ctx.chain.depth, KNOPP_INJECTIVITY_DEPTH)
    polyline = ctx.level(depth).dyadic_polyline()
    bad = polyline_proper_intersections(polyline, limit=1)
    if bad:
        return False, f"dyadic polyline at depth {depth} self-intersects", \
            f"segment pair {bad[0]}"
    return True, f"no proper intersections among {len(polyline) - 1} segments " \
                 f"(depth {depth})", None


def _knopp_diameter_decay(ctx) -> tuple[bool, str, str | None]:
    depth = ctx.chain.depth
    try:
        n0 = first_small_index(ctx.schedule, DECAY_RATIO_BOUND)
    except ScheduleError:
        # ratios never drop below the bound within this horizon: nothing to
        # assert yet
        return True, f"window empty (no ratio below {DECAY_RATIO_BOUND} " \
                     f"within horizon {ctx.schedule.horizon})", None
    last_start = min(n0 + DECAY_WINDOW, depth - 3)
    if last_start < n0:
        return True, f"window empty (depth {depth} < n0+3 = {n0 + 3})", None
    for n in range(n0, last_start + 1):
        coarse = ctx.level(n).max_diameter_sq()
        fine = ctx.level(n + 3).max_diameter_sq()
        if fine > DECAY_FACTOR_SQ * coarse:
            return False, "squared diameter not reduced by 9/16 over 3 levels", \
                f"start level {n}"
    return True, f"decay verified for start levels {n0}..{last_start}", None


KNOPP_CHECKS = (
    ("area_per_triangle", _knopp_area_per_triangle),
    ("area_total", _knopp_area_total),
    ("connectivity", _knopp_connectivity),
    ("diameter_decay", _knopp_diameter_decay),
    ("injectivity", _knopp_injectivity),
    ("nesting", _knopp_nesting),
)


def check_knopp(chain: knopp.ChainLevel) -> CheckReport:
    ctx = _KnoppContext(chain)
    params = {"beta": rational_str(chain.schedule.beta), "depth": chain.depth}
    return _run_checks("knopp", params, KNOPP_CHECKS, ctx)


# --- corner-square checks ----------------------------------------------------

class _LTContext:
    def __init__(self, pmap: lance_thomas.ParamMap,
                 schedule: LanceThomasSchedule):
        self.pmap = pmap
        self.schedule = schedule
        self.maps = [lance_thomas.build_map(schedule, g)
                     for g in range(1, pmap.generation)]
        self.maps.append(pmap)

    def generation_map(self, g: int) -> lance_thomas.ParamMap:
        return self.maps[g - 1]


def _lt_rectangle_rule(ctx) -> tuple[bool, str, str | None]:
    # Every piece's parameter length equals the area of the axis-aligned
    # rectangle whose diagonal it traverses; diagonals are square.
    for i, piece in enumerate(ctx.pmap.pieces):
        dx = piece.end.x - piece.start.x
        dy = piece.end.y - piece.start.y
        if piece.length != abs(dx * dy):
            return False, "piece length differs from crossed-rectangle area", \
                f"piece {i} at t0={rational_str(piece.t0)}"
        if piece.kind == lance_thomas.DIAGONAL and abs(dx) != abs(dy):
            return False, "cell diagonal is not square", f"piece {i}"
    total = sum((p.length for p in ctx.pmap.pieces), Fraction(0))
    if total != 1:
        return False, "piece lengths do not cover [0,1]", rational_str(total)
    return True, "length == crossed-rectangle area for all pieces; sum is 1", None


def _lt_seven_sum(ctx) -> tuple[bool, str, str | None]:
    for g in range(1, ctx.pmap.generation):
        parent = ctx.generation_map(g)
        child = ctx.generation_map(g + 1)
        child_start = {p.t0: p for p in child.pieces}
        for piece in parent.pieces:
            if piece.kind != lance_thomas.DIAGONAL:
                continue
            cursor = piece.t0
            covered = Fraction(0)
            count = 0
            while covered < piece.length:
                sub = child_start.get(cursor)
                if sub is None:
                    return False, "refinement does not tile the parent interval", \
                        f"generation {g} cell {piece.address} at t={rational_str(cursor)}"
                covered += sub.length
                cursor = sub.t1
                count += 1
            if covered != piece.length or count != 7:
                return False, "seven-piece sum does not reproduce the parent length", \
                    f"generation {g} cell {piece.address}"
    return True, "every refined cell splits into 7 pieces of exact total length", None


def _lt_measures(ctx) -> tuple[bool, str, str | None]:
    n = ctx.pmap.generation
    expected = ctx.schedule.partial_product(n) ** 2
    cantor = ctx.pmap.cantor_stage().measure()
    squares = lance_thomas.chain_area(ctx.schedule, n)
    if cantor != expected or squares != expected:
        return False, "Cantor measure / square-chain area mismatch", \
            f"lambda1={rational_str(cantor)} lambda2={rational_str(squares)} " \
            f"q_n^2={rational_str(expected)}"
    return True, f"lambda1(C_2n) == lambda2(A_n) == {rational_str(expected)}", None


def _lt_joint_stability(ctx) -> tuple[bool, str, str | None]:
    for g in range(1, ctx.pmap.generation):
        coarse = ctx.generation_map(g)
        fine = ctx.generation_map(g + 1)
        fine_joints = {(p.t0, p.t1, p.start, p.end)
                       for p in fine.pieces if p.kind == lance_thomas.JOINT}
        for i, piece in enumerate(coarse.pieces):
            if piece.kind != lance_thomas.JOINT:
                continue
            if (piece.t0, piece.t1, piece.start, piece.end) not in fine_joints:
                return False, "joint moved between generations", \
                    f"generation {g} joint {i} at t0={rational_str(piece.t0)}"
    return True, "joints identical across all generations", None


def _lt_segment_count(ctx) -> tuple[bool, str, str | None]:
    n = ctx.pmap.generation
    expected = 2 * 4**n - 1
    if ctx.pmap.segment_count != expected:
        return False, f"expected {expected} segments", str(ctx.pmap.segment_count)
    return True, f"{expected} segments at generation {n}", None


def _lt_injectivity(ctx) -> tuple[bool, str, str | None]:
    g = min(ctx.pmap.generation, LT_INJECTIVITY_GENERATION)
    polyline = ctx.generation_map(g).polyline()
    bad = polyline_proper_intersections(polyline, limit=1)
    if bad:
        return False, f"polyline at generation {g} self-intersects", \
            f"segment pair {bad[0]}"
    return True, f"no proper intersections among {len(polyline) - 1} segments " \
                 f"(generation {g})", None


def _lt_cauchy_bound(ctx) -> tuple[bool, str, str | None]:
    for g in range(1, ctx.pmap.generation):
        coarse = ctx.generation_map(g)
        fine = ctx.generation_map(g + 1)
        side = ctx.schedule.side(g)
        bound = 2 * side * side
        for t, fine_point in fine.breakpoints():
            gap = dist_sq(fine_point, coarse.point_at(t))
            if gap > bound:
                return False, "displacement exceeds the uniform bound", \
                    f"generations {g}->{g + 1} at t={rational_str(t)}"
    return True, "breakpoint displacement within 2*side^2 at every refinement", None


def _lt_product_structure(ctx) -> tuple[bool, str, str | None]:
    try:
        lance_thomas.essential_image_stage(ctx.schedule, ctx.pmap.generation,
                                           pmap=ctx.pmap)
    except AssertionError as exc:
        return False, "essential image is not the Cantor-factor product", str(exc)
    return True, "cell union equals K_n x K_n", None


LT_CHECKS = (
    ("cauchy_bound", _lt_cauchy_bound),
    ("injectivity", _lt_injectivity),
    ("joint_stability", _lt_joint_stability),
    ("measures", _lt_measures),
    ("product_structure", _lt_product_structure),
    ("rectangle_rule", _lt_rectangle_rule),
    ("segment_count", _lt_segment_count),
    ("seven_sum", _lt_seven_sum),
)


def check_lance_thomas(pmap: lance_thomas.ParamMap,
                       schedule: LanceThomasSchedule) -> CheckReport:
    ctx = _LTContext(pmap, schedule)
    params = {"alpha": rational_str(schedule.alpha),
              "generation": pmap.generation}
    return _run_checks("lance-thomas", params, LT_CHECKS, ctx)
