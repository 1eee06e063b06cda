"""Command-line surface: build / eval / measure / arc / verify / reparam /
render over both constructions, with JSON, CSV and SVG outputs.

All numeric inputs are exact num/den strings; outputs render rationals the
same way.  Exit codes: 0 success, 1 failed verification checks, 2 usage or
parameter errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import knopp, lance_thomas, reparam, svg, verify
from .rational import parse_rational, rational_str
from .schedules import (
    KnoppSchedule,
    LanceThomasSchedule,
    ScheduleError,
    knopp_schedule,
    lance_thomas_schedule,
)


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _knopp_schedule(args, horizon: int) -> KnoppSchedule:
    if args.beta is None:
        raise UsageError("--beta NUM/DEN is required for --family knopp")
    return knopp_schedule(args.beta, horizon)


def _lt_schedule(args, horizon: int) -> LanceThomasSchedule:
    if args.alpha is None:
        raise UsageError("--alpha NUM/DEN is required for --family lt")
    return lance_thomas_schedule(args.alpha, max(horizon, 1))


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_build(args) -> int:
    if args.family == "knopp":
        schedule = _knopp_schedule(args, args.depth)
        chain = knopp.build_chain(schedule, args.depth)
        payload = knopp.chain_to_json_dict(chain)
    else:
        schedule = _lt_schedule(args, args.depth)
        payload = lance_thomas.map_to_json_dict(
            lance_thomas.build_map(schedule, args.depth))
    _write_text(args.out, json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_eval(args) -> int:
    if args.t is None:
        raise UsageError("--t NUM/DEN is required")
    if args.family == "knopp":
        schedule = _knopp_schedule(args, args.depth)
        chain = knopp.build_chain(schedule, args.depth)
        value, radius_sq = knopp.evaluate(chain, args.t)
    else:
        schedule = _lt_schedule(args, args.depth)
        pmap = lance_thomas.build_map(schedule, args.depth)
        value, radius_sq = lance_thomas.evaluate(pmap, args.t)
    _emit_json({
        "family": args.family,
        "t": rational_str(args.t),
        "depth": args.depth,
        "point": [rational_str(value.x), rational_str(value.y)],
        "error_radius_sq": rational_str(radius_sq),
    })
    return 0


def _measure_rows(args) -> tuple[Fraction, list[dict]]:
    rows = []
    if args.family == "knopp":
        schedule = _knopp_schedule(args, args.depth)
        target = schedule.beta
        for n in range(args.depth + 1):
            p_n = schedule.partial_product(n)
            rows.append({"n": n, "value": rational_str(p_n),
                         "residual": rational_str(p_n - target)})
    else:
        schedule = _lt_schedule(args, args.depth)
        target = schedule.beta
        for n in range(args.depth + 1):
            area = lance_thomas.chain_area(schedule, n)
            rows.append({"n": n, "value": rational_str(area),
                         "residual": rational_str(area - target)})
    return target, rows


def _cmd_measure(args) -> int:
    target, rows = _measure_rows(args)
    if args.csv:
        sys.stdout.write("n,value,residual\n")
        for row in rows:
            sys.stdout.write(f"{row['n']},{row['value']},{row['residual']}\n")
    else:
        _emit_json({"family": args.family, "target_area": rational_str(target),
                    "rows": rows})
    return 0


def _cmd_arc(args) -> int:
    if args.family != "knopp":
        raise UsageError("arc areas over dyadic intervals apply to --family knopp")
    schedule = _knopp_schedule(args, args.horizon)
    value, limit = knopp.arc_area(schedule, args.n, args.j, args.horizon)
    _emit_json({
        "family": args.family,
        "n": args.n,
        "j": args.j,
        "horizon": args.horizon,
        "value": rational_str(value),
        "limit": rational_str(limit),
        "residual": rational_str(value - limit),
    })
    return 0


def _cmd_verify(args) -> int:
    if args.family == "knopp":
        schedule = _knopp_schedule(args, args.depth)
        report = verify.check_knopp(knopp.build_chain(schedule, args.depth))
    else:
        schedule = _lt_schedule(args, args.depth)
        report = verify.check_lance_thomas(
            lance_thomas.build_map(schedule, args.depth), schedule)
    payload = report.to_json_dict()
    _emit_json(payload)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return 0 if report.all_passed else 1


def _cmd_reparam(args) -> int:
    actions = [args.demo_square, args.profile_csv is not None, args.apply]
    if sum(bool(a) for a in actions) != 1:
        raise UsageError("choose exactly one of --demo-square, --profile-csv, --apply")

    if args.demo_square:
        if args.family != "knopp":
            raise UsageError("--demo-square uses the homogeneous triangle chain "
                             "(--family knopp)")
        schedule = _knopp_schedule(args, args.horizon)
        rows = []
        for m in range(2, args.horizon + 1):
            left, right = reparam.square_pullback_split(schedule, m)
            rows.append({"horizon": m, "left": rational_str(left),
                         "right": rational_str(right)})
        _emit_json({
            "family": args.family,
            "beta": rational_str(schedule.beta),
            "left_limit": rational_str(schedule.beta / 4),
            "right_limit": rational_str(3 * schedule.beta / 4),
            "rows": rows,
        })
        return 0

    profile = _profile_for(args)
    if args.profile_csv is not None:
        if args.profile_csv == "-":
            reparam.write_profile_csv(profile, sys.stdout, decimal=args.decimal)
        else:
            with open(args.profile_csv, "w", encoding="utf-8", newline="") as fh:
                reparam.write_profile_csv(profile, fh, decimal=args.decimal)
            _emit_json({"written": args.profile_csv,
                        "breakpoints": len(profile.parameters)})
        return 0

    # --apply: run the homogenizing operator and report the mapped table
    curve = _curve_for(args)
    homogenized = reparam.reparametrize(curve, profile)
    rows = []
    exact = True
    for s, mass in homogenized.profile.breakpoints():
        expected = profile.total * s
        exact = exact and mass == expected
        rows.append({"s": rational_str(s), "area": rational_str(mass),
                     "target": rational_str(expected)})
    _emit_json({
        "family": args.family,
        "total_area": rational_str(profile.total),
        "homogeneous_at_breakpoints": exact,
        "rows": rows,
    })
    return 0


def _profile_for(args):
    if args.depth is None:
        raise UsageError("--depth N is required for profile operations")
    if args.family == "knopp":
        schedule = _knopp_schedule(args, args.depth)
        return reparam.knopp_profile(schedule, args.depth)
    schedule = _lt_schedule(args, args.depth)
    pmap = lance_thomas.build_map(schedule, args.depth)
    return reparam.lt_profile(schedule, pmap)


def _curve_for(args):
    if args.family == "knopp":
        return knopp.KnoppCurve(_knopp_schedule(args, args.depth), args.depth)
    return lance_thomas.LanceThomasCurve(_lt_schedule(args, args.depth),
                                         args.depth)


def _cmd_render(args) -> int:
    if args.family == "knopp":
        schedule = _knopp_schedule(args, args.depth)
        chain = knopp.build_chain(schedule, args.depth)
        document = svg.render_knopp(
            chain,
            fill=args.fill,
            fill_alt=args.fill_alt,
            stroke=args.stroke,
            stroke_width=args.stroke_width,
            show_polyline=args.show_polyline,
            polyline_stroke=args.polyline_stroke,
        )
    else:
        if args.depth < 1:
            raise UsageError("--depth must be at least 1 for --family lt")
        schedule = _lt_schedule(args, args.depth)
        pmap = lance_thomas.build_map(schedule, args.depth)
        document = svg.render_lt(
            pmap,
            cell_fill=args.cell_fill,
            cell_stroke=args.stroke,
            stroke_width=args.stroke_width,
            polyline_stroke=args.polyline_stroke,
        )
    _write_text(args.out, document)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fillcurve",
        description="Exact construction, evaluation, verification and "
                    "rendering of area-filling curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_family(p, depth_help="construction depth / generation"):
        p.add_argument("--family", choices=("knopp", "lt"), required=True)
        p.add_argument("--beta", type=_rational, default=None,
                       help="target area for the triangle chain (num/den)")
        p.add_argument("--alpha", type=_rational, default=None,
                       help="side coefficient base for the square chain "
                            "(num/den; target area is alpha^2)")
        p.add_argument("--depth", type=int, default=None, help=depth_help)
        return p

    p = add_family(sub.add_parser("build", help="build a chain/map and dump JSON"))
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=_cmd_build, need_depth=True)

    p = add_family(sub.add_parser("eval", help="evaluate the curve at t"))
    p.add_argument("--t", type=_rational, default=None, help="parameter (num/den)")
    p.set_defaults(func=_cmd_eval, need_depth=True)

    p = add_family(sub.add_parser("measure", help="area table per level"))
    p.add_argument("--csv", action="store_true", help="CSV instead of JSON")
    p.set_defaults(func=_cmd_measure, need_depth=True)

    p = add_family(sub.add_parser("arc", help="exact dyadic arc area"),
                   depth_help=argparse.SUPPRESS)
    p.add_argument("--n", type=int, required=True, help="dyadic depth of the interval")
    p.add_argument("--j", type=int, required=True, help="interval index, 0-based")
    p.add_argument("--horizon", type=int, required=True,
                   help="accounting level m >= n")
    p.set_defaults(func=_cmd_arc, need_depth=False)

    p = add_family(sub.add_parser("verify", help="run the exact invariant checks"))
    p.add_argument("--report", default=None, help="also write the JSON report here")
    p.set_defaults(func=_cmd_verify, need_depth=True)

    p = add_family(sub.add_parser(
        "reparam", help="area profiles, homogenization, t^2 counterexample"))
    p.add_argument("--demo-square", action="store_true",
                   help="left/right arc masses of the t^2 pullback per horizon")
    p.add_argument("--horizon", type=int, default=10,
                   help="largest accounting level for --demo-square")
    p.add_argument("--profile-csv", default=None, metavar="FILE",
                   help="write the arc-area profile as CSV ('-' for stdout)")
    p.add_argument("--decimal", action="store_true",
                   help="add decimal columns to the profile CSV")
    p.add_argument("--apply", action="store_true",
                   help="apply the homogenizing reparametrization and report "
                        "the mapped breakpoint table")
    p.set_defaults(func=_cmd_reparam, need_depth=False)

    p = add_family(sub.add_parser("render", help="emit an SVG figure"))
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--fill", default="#9ecae1")
    p.add_argument("--fill-alt", default="#4292c6",
                   help="alternate triangle fill (knopp)")
    p.add_argument("--cell-fill", default="#c6dbef", help="square fill (lt)")
    p.add_argument("--stroke", default="#1c2541")
    p.add_argument("--stroke-width", default="0.004")
    p.add_argument("--polyline-stroke", default="#b3003c")
    p.add_argument("--show-polyline", action="store_true",
                   help="draw the dyadic-vertex polyline (knopp)")
    p.set_defaults(func=_cmd_render, need_depth=True)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "need_depth", False) and args.depth is None:
            raise UsageError("--depth N is required")
        if getattr(args, "depth", None) is not None and args.depth < 0:
            raise UsageError("--depth must be non-negative")
        return args.func(args)
    except UsageError as exc:
        print(f"fillcurve: error: {exc}", file=sys.stderr)
        return 2
    except (ScheduleError, ValueError) as exc:
        print(f"fillcurve: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
