"""Command-line front end: catalog listing, invariants, verification, extremum.

stdout carries the report (human-readable or JSON with a versioned schema
field); stderr carries diagnostics.  Exit codes: 0 success, 1 counterexample
or unclassified error, 2 out-of-domain, 3 rank drop, 4 hypothesis violated,
5 branch undetermined, 6 proviso violated.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import catalog as _catalog
from . import verify as _verify
from .errors import CasoratiError, EXIT_COUNTEREXAMPLE, EXIT_OK, exit_code_for
from .extremum import ExtremumProblem, solve_closed_form, solve_oracle
from .measures import delta_casorati, diagnose_equality
from .rmaps import (
    gauss_map_scalars,
    gauss_submersion_horizontal,
    gauss_submersion_vertical,
    oneill_A,
    oneill_T,
    second_fundamental_form,
)

SCHEMA = "casorati-report/1"


def _parse_point(text: str) -> np.ndarray:
    try:
        return np.array([float(x) for x in text.split(",")], dtype=float)
    except ValueError:
        raise CasoratiError(f"cannot parse point {text!r}: expected comma-separated floats")


def _resolve_entry(args) -> _catalog.CatalogEntry:
    if getattr(args, "geometry_file", None):
        return _catalog.load_geometry_file(args.geometry_file)
    if not getattr(args, "geometry", None):
        raise CasoratiError("no geometry given: use --geometry or --geometry-file")
    return _catalog.get(args.geometry)


def _emit(report: dict, args, text: str) -> None:
    if args.json:
        payload = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        payload = text if text.endswith("\n") else text + "\n"
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


# --------------------------------------------------------------------------
# catalog
# --------------------------------------------------------------------------

def cmd_catalog(args) -> int:
    entries = _catalog.list_entries()
    if args.tag:
        entries = [e for e in entries if args.tag in e.hypothesis_tags]
    rows = [e.summary() for e in entries]
    report = {"schema": SCHEMA, "command": "catalog", "entries": rows}
    lines = []
    for row in rows:
        tags = ", ".join(row["tags"]) or "(computation only)"
        lines.append(
            f"{row['id']:28s} {row['kind']:22s} rank {row['rank']}  "
            f"{row['source_dim']}d -> {row['target_dim']}d  [{tags}]"
        )
    _emit(report, args, "\n".join(lines) if lines else "no matching entries")
    return EXIT_OK


# --------------------------------------------------------------------------
# invariants
# --------------------------------------------------------------------------

def _casorati_block(coeffs, seed: int) -> dict:
    out = {
        "role": coeffs.role,
        "r": coeffs.r,
        "normal_count": coeffs.normal_count,
        "norm_squared": coeffs.norm_squared(),
        "C": coeffs.norm_squared() / coeffs.r if coeffs.r else 0.0,
    }
    if coeffs.r >= 3:
        rep = delta_casorati(coeffs, seed=seed, certify=True)
        out.update(rep.to_json())
        out["equality_shape"] = diagnose_equality(coeffs).to_json()
    else:
        out["note"] = "delta invariants need r >= 3"
    return out


def _structure_block(entry, frame, side_point) -> dict:
    spec = entry.space_form_spec(side_point)
    klass = _verify.classify_invariance(frame, spec.structure)
    block = {
        "invariance": klass.label,
        "pnorm2": klass.pnorm2,
        "leakage_defect": klass.leakage_defect,
        "retention_defect": klass.retention_defect,
    }
    if spec.structure.kind == "almost-contact":
        pos = _verify.xi_position(spec.structure.xi, frame)
        block["xi"] = {"position": pos.position, "defect": pos.projection_defect}
    return block


def cmd_invariants(args) -> int:
    entry = _resolve_entry(args)
    p = _parse_point(args.point) if args.point else entry.base_point
    mp = entry.instantiate(p)
    report = {
        "schema": SCHEMA,
        "command": "invariants",
        "geometry": entry.id,
        "point": [float(x) for x in p],
        "kind": entry.kind,
        "dims": {
            "source": mp.m1,
            "target": mp.m2,
            "rank": mp.rank,
            "vertical": mp.m1 - mp.rank,
        },
        "frames": {
            "vertical": mp.vertical_frame.vectors.tolist(),
            "horizontal": mp.horizontal_frame.vectors.tolist(),
            "range": mp.range_frame.vectors.tolist(),
        },
        "coefficients": {},
        "scalar_curvatures": {},
    }

    if entry.kind == _catalog.KIND_MAP:
        b = second_fundamental_form(mp)
        report["coefficients"]["B"] = _casorati_block(b, args.seed)
        pair = gauss_map_scalars(mp, b)
        report["scalar_curvatures"]["map"] = pair.to_json()
    else:
        t = oneill_T(mp)
        a = oneill_A(mp)
        report["coefficients"]["T"] = _casorati_block(t, args.seed)
        report["coefficients"]["A"] = _casorati_block(a, args.seed)
        report["scalar_curvatures"]["vertical"] = gauss_submersion_vertical(mp, t=t).to_json()
        report["scalar_curvatures"]["horizontal"] = gauss_submersion_horizontal(mp, a=a).to_json()

    if entry.family is not None and entry.structure_fn is not None:
        side_point = p if entry.spaceform_side == "source" else entry.smooth_map(p)
        subspaces = (
            {"range": mp.range_frame}
            if entry.kind == _catalog.KIND_MAP
            else {"vertical": mp.vertical_frame, "horizontal": mp.horizontal_frame}
        )
        report["structure"] = {
            name: _structure_block(entry, frame, side_point)
            for name, frame in subspaces.items()
            if frame.count
        }
        report["family"] = entry.family.to_json()
    if entry.reference_values:
        report["reference_values"] = dict(entry.reference_values)

    lines = [f"{entry.id} at {report['point']}"]
    for role, block in report["coefficients"].items():
        if "delta_C" in block:
            lines.append(
                f"  {role}: C = {block['C']:.6g}, delta_C = {block['delta_C']:.6g}, "
                f"delta_hat_C = {block['delta_hat_C']:.6g}"
            )
        else:
            lines.append(f"  {role}: C = {block['C']:.6g} ({block['note']})")
    for name, pair in report["scalar_curvatures"].items():
        lines.append(
            f"  {name}: 2scal = {pair['left_2scal']:.6g} vs reference {pair['right_2scal']:.6g}"
        )
    for name, block in report.get("structure", {}).items():
        xi = block.get("xi")
        suffix = f", xi {xi['position']}" if xi else ""
        lines.append(f"  {name}: {block['invariance']}, |P|^2 = {block['pnorm2']:.6g}{suffix}")
    _emit(report, args, "\n".join(lines))
    return EXIT_OK


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------

def _verify_synthetic(args, theorems) -> int:
    summaries = [_verify.verify_synthetic(t, args.trials, seed=args.seed) for t in theorems]
    failures = sum(s["failures"] for s in summaries)
    report = {
        "schema": SCHEMA,
        "command": "verify",
        "mode": "synthetic",
        "trials": args.trials,
        "seed": args.seed,
        "summaries": summaries,
        "total_failures": failures,
    }
    lines = [
        f"{s['theorem']:24s} trials {s['trials']:>7d}  failures {s['failures']:>3d}  "
        f"min residual {s['min_residual']:+.3e}  equality hits {s['equality_hits']}"
        for s in summaries
    ]
    lines.append("PASS: no counterexamples" if failures == 0 else "FAIL: counterexample found")
    _emit(report, args, "\n".join(lines))
    return EXIT_OK if failures == 0 else EXIT_COUNTEREXAMPLE


def _verify_geometry(args, theorems, entry) -> int:
    points = None
    if args.point:
        points = [_parse_point(args.point)]
    elif args.samples:
        points = args.samples
    tolerance = args.tolerance if args.tolerance is not None else _verify.RESIDUAL_TOL
    reports = []
    for theorem in theorems:
        reports.extend(
            _verify.verify_geometry(
                theorem, entry, points=points, seed=args.seed, tolerance=tolerance
            )
        )
    failing = [r for r in reports if not r.holds]
    report = {
        "schema": SCHEMA,
        "command": "verify",
        "mode": "geometry",
        "geometry": entry.id,
        "reports": [r.to_json() for r in reports],
        "total_failures": len(failing),
    }
    if failing:
        report["counterexample"] = failing[0].to_json()
    lines = [
        f"{r.theorem:24s} {r.variant:9s} lhs {r.lhs:+.6f}  rhs {r.rhs:+.6f}  "
        f"residual {r.residual:+.3e}  {'holds' if r.holds else 'FAILS'}"
        for r in reports
    ]
    lines.append("PASS: all inequalities hold" if not failing else "FAIL: inequality violated")
    _emit(report, args, "\n".join(lines))
    return EXIT_OK if not failing else EXIT_COUNTEREXAMPLE


def cmd_verify(args) -> int:
    if args.geometry == "synthetic" and not args.geometry_file:
        theorems = list(_verify.THEOREM_IDS) if args.theorem == "all" else [args.theorem]
        for t in theorems:
            _verify.theorem_info(t)
        return _verify_synthetic(args, theorems)
    entry = _resolve_entry(args)
    if args.theorem == "all":
        theorems = [t for t in _verify.THEOREM_IDS if t in entry.hypothesis_tags]
        if not theorems:
            raise CasoratiError(
                f"geometry {entry.id!r} declares no theorem hypotheses; "
                "pass an explicit --theorem"
            )
    else:
        _verify.theorem_info(args.theorem)
        theorems = [args.theorem]
    return _verify_geometry(args, theorems, entry)


# --------------------------------------------------------------------------
# extremum
# --------------------------------------------------------------------------

def cmd_extremum(args) -> int:
    prob = ExtremumProblem.from_lambda1(args.r, args.lambda1, args.k)
    z_cf, f_cf = solve_closed_form(prob)
    z_or, f_or = solve_oracle(prob)
    agreement = float(np.abs(z_cf - z_or).max())
    agrees = agreement <= 1e-8 * (1.0 + abs(prob.k))
    report = {
        "schema": SCHEMA,
        "command": "extremum",
        "r": prob.r,
        "lambda1": prob.lambda1,
        "lambda2": prob.lambda2,
        "k": prob.k,
        "minimizer": [float(z) for z in z_cf],
        "f_min": float(f_cf),
        "oracle": {"minimizer": [float(z) for z in z_or], "f_min": float(f_or)},
        "agreement": agreement,
        "agrees": bool(agrees),
    }
    text = (
        f"lambda2 = {prob.lambda2:.12g} (from the proviso)\n"
        f"minimizer = {np.round(z_cf, 12).tolist()}\n"
        f"f_min = {f_cf:.3e}\n"
        f"oracle agreement = {agreement:.3e} ({'ok' if agrees else 'MISMATCH'})"
    )
    _emit(report, args, text)
    return EXIT_OK if agrees else EXIT_COUNTEREXAMPLE


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casorati",
        description="Casorati curvature bounds for Riemannian maps and submersions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", help="emit a JSON report on stdout")
        p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
        p.add_argument("--tolerance", type=float, default=None, help="residual tolerance override")
        p.add_argument("--samples", type=int, default=None, help="number of sample points")
        p.add_argument("--output", default=None, help="write the report to a file instead of stdout")

    p_cat = sub.add_parser("catalog", help="list built-in geometries")
    p_cat.add_argument("--tag", default=None, help="only entries declaring this theorem tag")
    add_common(p_cat)
    p_cat.set_defaults(func=cmd_catalog)

    p_inv = sub.add_parser("invariants", help="compute invariants of a geometry at a point")
    p_inv.add_argument("--geometry", default=None, help="catalog id")
    p_inv.add_argument("--geometry-file", default=None, help="JSON geometry description")
    p_inv.add_argument("--point", default=None, help="comma-separated source coordinates")
    add_common(p_inv)
    p_inv.set_defaults(func=cmd_invariants)

    p_ver = sub.add_parser("verify", help="verify inequalities on a geometry or synthetic data")
    p_ver.add_argument("--theorem", required=True, help="registry id or 'all'")
    p_ver.add_argument(
        "--geometry", default="synthetic", help="catalog id or 'synthetic' (default)"
    )
    p_ver.add_argument("--geometry-file", default=None, help="JSON geometry description")
    p_ver.add_argument("--trials", type=int, default=1000, help="synthetic trials per theorem")
    p_ver.add_argument("--point", default=None, help="comma-separated source coordinates")
    add_common(p_ver)
    p_ver.set_defaults(func=cmd_verify)

    p_ext = sub.add_parser("extremum", help="solve the constrained quadratic minimum")
    p_ext.add_argument("--r", type=int, required=True, help="number of variables (>= 3)")
    p_ext.add_argument("--lambda1", type=float, required=True, help="leading coefficient")
    p_ext.add_argument("--k", type=float, required=True, help="constraint value")
    add_common(p_ext)
    p_ext.set_defaults(func=cmd_extremum)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CasoratiError as err:
        print(f"error: {err}", file=sys.stderr)
        return exit_code_for(err)


if __name__ == "__main__":
    sys.exit(main())
