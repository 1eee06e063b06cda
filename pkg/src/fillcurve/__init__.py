"""Exact-arithmetic area-filling (Osgood) curves.

Two constructions with a shared exact-rational core: a homogeneous
triangle-chain curve (Knopp family) and a corner-square chain curve
(Lance-Thomas family), plus the arc-area reparametrization that makes any
positive area-filling curve homogeneous, an exact verification harness,
and deterministic SVG rendering.
"""

from .geometry import (
    AffineMap,
    DegenerateError,
    OrientedTriangle,
    Point2,
    Segment,
    diameter_sq,
    point,
    point_in_triangle,
    polyline_proper_intersections,
    segments_properly_intersect,
    signed_area,
)
from .knopp import (
    DEFAULT_ROOT,
    AddressedTriangle,
    ChainLevel,
    KnoppCurve,
    arc_area,
    build_chain,
    build_levels,
    subdivide,
)
from .lance_thomas import (
    CantorStage,
    LanceThomasCurve,
    ParamMap,
    SquareCell,
    area_profile,
    build_map,
    chain_area,
    essential_image_stage,
    first_generation,
    refine,
)
from .reparam import (
    AreaProfile,
    Enclosure,
    NotPositiveCurveError,
    ReparametrizedCurve,
    area_fraction,
    knopp_profile,
    lt_profile,
    parameter_for_fraction,
    reparametrize,
    square_pullback_split,
)
from .schedules import (
    KnoppSchedule,
    LanceThomasSchedule,
    ScheduleError,
    first_small_index,
    from_coefficients,
    from_ratios,
    knopp_schedule,
    lance_thomas_schedule,
)
from .svg import render_knopp, render_lt
from .verify import CheckReport, check_knopp, check_lance_thomas

__version__ = "0.1.0"
