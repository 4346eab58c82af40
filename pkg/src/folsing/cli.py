"""Command-line driver.

Exit codes: 0 success, 1 invalid input, 2 a cross-check failed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Dict, List, Sequence

from gmpy2 import mpq

from . import blowup as bl
from .chow import BlowupGeometry, baum_bott_E, baum_bott_Pt
from .deformation import DeformationError, verify_family_properties
from .foliation import FoliationError, ProjectiveCurve, ProjectiveFoliation, isolated_milnor_by_chart
from .formulas import (
    CurveData,
    baum_bott_total,
    blowup_count,
    curve_contribution,
    exceptional_count,
    isolated_count,
    plausibility_warnings,
    total_isolated_count,
)
from .groebner import DimensionError
from .parser import PolySyntaxError
from .poly import MultiPoly
from .specfile import SpecError, SpecFile, digest_bytes, load_spec

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MISMATCH = 2

DEFAULT_GRID = {"n": (3, 5), "k": (1, 5), "ell": (0, 3), "d": (1, 4), "g": (0, 3)}


class InputError(ValueError):
    pass


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        if x == int(x):
            return int(x)
        raise TypeError("floats are not serialized")
    if isinstance(x, type(mpq(0))):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, MultiPoly):
        return str(x)
    return str(x)


def make_report(command: str, digest: str, results: Dict[str, Any], warnings: Sequence[str] = ()) -> Dict[str, Any]:
    return {"command": command, "input_digest": digest, "results": results, "warnings": list(warnings)}


def render_json(report: Dict[str, Any]) -> str:
    return json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"


def _render_text(value: Any, indent: int, out: List[str]) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                _render_text(v, indent + 1, out)
            else:
                out.append(f"{pad}{k}: {_scalar_text(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}-")
                _render_text(v, indent + 1, out)
            else:
                out.append(f"{pad}- {_scalar_text(v)}")
    else:
        out.append(pad + _scalar_text(value))


def _scalar_text(v: Any) -> str:
    if v == [] or v == {} or v == "" or v is None:
        return "(none)"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def render_text(report: Dict[str, Any]) -> str:
    out: List[str] = []
    _render_text(_jsonable(report), 0, out)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _need(spec: SpecFile, what: str):
    if what == "foliation" and spec.foliation is None:
        raise InputError("spec file has no 'components'")
    if what == "curve" and spec.curve is None:
        raise InputError("spec file has no 'curve' block")
    if what == "deformation" and spec.deformation is None:
        raise InputError("spec file has no 'deformation' block")


def _profile_dict(prof: bl.MultiplicityProfile, C: bl.AxisCurve) -> Dict[str, Any]:
    labels = C.normal + (C.axis,)
    return {
        "raw_orders": {v: m for v, m in zip(labels, prof.raw_orders)},
        "sorted_normal": [C.normal[i] for i in prof.sort_permutation],
        "sorted_orders": list(prof.sorted_orders),
        "case": prof.case,
        "special": prof.is_special,
        "dicritical": prof.is_dicritical,
        "ell": prof.ell,
        "m_C": prof.m_C,
    }


def cmd_analyze(spec: SpecFile) -> Dict[str, Any]:
    _need(spec, "foliation")
    _need(spec, "curve")
    F, C = spec.foliation, spec.curve
    prof = bl.multiplicity_profile(F, C)
    res = _profile_dict(prof, C)
    res["residuals"] = {v: str(r) for v, r in bl.residuals(F, C).items()}
    res["blowup_variables"] = {f"u{i}": v for i, v in enumerate(C.normal + (C.axis,), start=1)}
    return make_report("analyze", spec.digest, res)


def cmd_blowup(spec: SpecFile, chart: int) -> Dict[str, Any]:
    _need(spec, "foliation")
    _need(spec, "curve")
    F, C = spec.foliation, spec.curve
    if not 1 <= chart <= C.n - 1:
        raise InputError(f"--chart must be in 1..{C.n - 1}")
    total = bl.total_transform(F, C, chart)
    strict = bl.strict_transform(F, C, chart)
    names = total.ring.names
    res = {
        "chart": chart,
        "exceptional_variable": total.exceptional_var(),
        "blowup_variables": {f"u{i}": v for i, v in enumerate(C.normal + (C.axis,), start=1)},
        "total_transform": {v: str(c) for v, c in zip(names, total.components)},
        "strict_transform": {v: str(c) for v, c in zip(names, strict.components)},
        "divided_power": strict.divided_power,
        "case": bl.classify(F, C),
    }
    return make_report("blowup", spec.digest, res)


def _projective_line(spec: SpecFile, pf: ProjectiveFoliation) -> ProjectiveCurve:
    vanish = [spec.ring.index(v) + 1 for v in spec.curve.normal]
    return ProjectiveCurve.coordinate_line(pf.hring, vanish)


def cmd_count(spec: SpecFile) -> Dict[str, Any]:
    _need(spec, "foliation")
    _need(spec, "curve")
    F = spec.foliation
    pf = ProjectiveFoliation.from_chart0(F)
    line = _projective_line(spec, pf)
    warnings: List[str] = []
    res: Dict[str, Any] = {
        "homogeneous_field": {v: str(c) for v, c in zip(pf.hring.names, pf.homogeneous)},
        "curve": [str(g) for g in line.generators],
    }
    try:
        E = bl.sing_on_E_projective(pf, line)
        res["sing_on_E_total"] = E.total
        res["sing_on_E_charts"] = [
            {"projective_chart": c, "blowup_chart": cnt.chart, "colength": cnt.colength, "new": cnt.new}
            for c, cnt in E.charts
        ]
        res["profile"] = _profile_dict(E.profile, spec.curve) if E.profile else None
    except bl.NotSpecialError as err:
        res["sing_on_E_total"] = None
        warnings.append(str(err))
    charts = isolated_milnor_by_chart(pf, [line])
    res["total_isolated_milnor"] = sum(c.new for c in charts)
    res["isolated_charts"] = [{"chart": c.chart, "colength": c.colength, "new": c.new} for c in charts]
    return make_report("count", spec.digest, res, warnings)


def _formula_values(n: int, k: int, curves: Sequence[CurveData]) -> Dict[str, Any]:
    out: Dict[str, Any] = {"n": n, "k": k, "baum_bott_total": baum_bott_total(n, k)}
    per = []
    for c in curves:
        per.append({
            "d": c.d, "g": c.g, "ell": c.ell, "branches": list(c.branches),
            "thmA": exceptional_count(n, k, c.ell, c.d, c.g),
            "thmB": blowup_count(n, k, c.ell, c.d, c.g),
            "corollary_isolated": isolated_count(n, k, c.ell, c.d, c.g),
            "nu": curve_contribution(n, k, c),
        })
    out["curves"] = per
    if len(curves) == 1:
        for key in ("thmA", "thmB", "corollary_isolated", "nu"):
            out[key] = per[0][key]
    out["theorem1_total"] = total_isolated_count(n, k, curves, warn=False)
    return out


def cmd_formulas(n: int, k: int, curves: Sequence[CurveData], digest: str) -> Dict[str, Any]:
    if n < 3 or k < 0:
        raise InputError("need n >= 3 and k >= 0")
    return make_report("formulas", digest, _formula_values(n, k, curves), plausibility_warnings(n, k, curves))


def grid_points(ranges: Dict[str, tuple]):
    for n in range(ranges["n"][0], ranges["n"][1] + 1):
        for k in range(ranges["k"][0], ranges["k"][1] + 1):
            for ell in range(ranges["ell"][0], ranges["ell"][1] + 1):
                for d in range(ranges["d"][0], ranges["d"][1] + 1):
                    for g in range(ranges["g"][0], ranges["g"][1] + 1):
                        yield n, k, ell, d, g


def chow_cross_check(ranges: Dict[str, tuple] = DEFAULT_GRID) -> Dict[str, Any]:
    points = 0
    mismatches = []
    for n, k, ell, d, g in grid_points(ranges):
        points += 1
        geom = BlowupGeometry(n=n, d=d, g=g, k=k, ell=ell)
        a, ia = exceptional_count(n, k, ell, d, g), baum_bott_E(geom)
        b, ib = blowup_count(n, k, ell, d, g), baum_bott_Pt(geom)
        c = isolated_count(n, k, ell, d, g)
        if a != ia or b != ib or c != b - a:
            mismatches.append({"n": n, "k": k, "ell": ell, "d": d, "g": g,
                               "thmA": a, "baum_bott_E": ia, "thmB": b, "baum_bott_Pt": ib,
                               "corollary_isolated": c})
    return {"grid": {key: list(v) for key, v in ranges.items()}, "points": points,
            "mismatches": len(mismatches), "mismatch_table": mismatches}


def cmd_chow_verify(ranges: Dict[str, tuple], digest: str) -> Dict[str, Any]:
    if ranges["n"][0] < 3 or ranges["d"][0] < 1 or ranges["g"][0] < 0 or ranges["k"][0] < 0 or ranges["ell"][0] < 0:
        raise InputError("grid ranges need n >= 3, d >= 1 and k, ell, g >= 0")
    return make_report("chow-verify", digest, chow_cross_check(ranges))


def cmd_deform(spec: SpecFile) -> Dict[str, Any]:
    _need(spec, "deformation")
    dspec = spec.deformation
    rep = verify_family_properties(dspec.model, dspec.data, dspec.samples)
    res = {
        "checks": [{"name": c.name, "t": c.t, "passed": c.passed, "detail": c.detail} for c in rep.checks],
        "model_axis_orders": list(rep.axis_orders),
        "all_passed": rep.ok,
    }
    return make_report("deform", spec.digest, res)


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------


def _range(text: str) -> tuple:
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            lo_i, hi_i = int(lo), int(hi)
        else:
            lo_i = hi_i = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI or a single integer, got {text!r}") from None
    if hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return (lo_i, hi_i)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=None, help="accepted and ignored; nothing is random")

    parser = argparse.ArgumentParser(prog="folsing", description="Singularities of foliations special along curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (("analyze", "multiplicity profile and case of the declared curve"),
                           ("count", "singularity counts on E and off the curve"),
                           ("deform", "identities of the one-parameter family")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--input", required=True)

    p = sub.add_parser("blowup", parents=[common], help="total and strict transforms in one blowup chart")
    p.add_argument("--input", required=True)
    p.add_argument("--chart", type=int, required=True)

    p = sub.add_parser("formulas", parents=[common], help="closed-form counts")
    p.add_argument("--input")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--branches", type=int, nargs="*", default=[])

    p = sub.add_parser("chow-verify", parents=[common], help="closed forms against intersection numbers")
    for key in DEFAULT_GRID:
        lo, hi = DEFAULT_GRID[key]
        p.add_argument(f"--{key}-range", type=_range, default=(lo, hi), metavar="LO:HI")
    return parser


def _args_digest(args: argparse.Namespace) -> str:
    data = {k: v for k, v in vars(args).items() if k not in ("output", "seed")}
    return digest_bytes(json.dumps(_jsonable(data), sort_keys=True).encode())


def run(args: argparse.Namespace) -> Dict[str, Any]:
    if args.command == "formulas":
        if args.input:
            spec = load_spec(args.input)
            n, k, curves = spec.n, spec.k, spec.curves
            digest = spec.digest
        else:
            missing = [f"--{x}" for x in ("n", "k") if getattr(args, x) is None]
            if missing:
                raise InputError(f"formulas needs {' and '.join(missing)} or --input")
            n, k = args.n, args.k
            curves = []
            vals = [args.ell, args.d, args.g]
            if any(v is not None for v in vals):
                if any(v is None for v in vals):
                    raise InputError("curve data needs all of --ell, --d and --g")
                curves = [CurveData(d=args.d, g=args.g, ell=args.ell, branches=tuple(args.branches))]
            digest = _args_digest(args)
        return cmd_formulas(n, k, curves, digest)
    if args.command == "chow-verify":
        ranges = {key: getattr(args, f"{key}_range") for key in DEFAULT_GRID}
        return cmd_chow_verify(ranges, _args_digest(args))
    spec = load_spec(args.input)
    if args.command == "analyze":
        return cmd_analyze(spec)
    if args.command == "blowup":
        return cmd_blowup(spec, args.chart)
    if args.command == "count":
        return cmd_count(spec)
    if args.command == "deform":
        return cmd_deform(spec)
    raise InputError(f"unknown command {args.command}")


def exit_status(report: Dict[str, Any]) -> int:
    res = report["results"]
    if report["command"] == "chow-verify" and res["mismatches"]:
        return EXIT_MISMATCH
    if report["command"] == "deform" and not res["all_passed"]:
        return EXIT_MISMATCH
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; 2 is reserved for mismatches here
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        report = run(args)
    except (SpecError, InputError, FoliationError, DeformationError, PolySyntaxError,
            DimensionError, bl.NotSpecialError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID
    text = render_json(report) if args.output == "json" else render_text(report)
    sys.stdout.write(text)
    return exit_status(report)


if __name__ == "__main__":
    sys.exit(main())
