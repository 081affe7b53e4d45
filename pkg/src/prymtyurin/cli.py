"""Command-line front end.

Exit codes: 0 valid, 1 a check failed, 2 bad input, 3 resource or engine error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .constructions import (
    Family,
    FamilyError,
    FamilySpec,
    closed_form_expectation,
    family_presentation,
    reproduce_paper_table,
)
from .permgrp import DEFAULT_ENUMERATION_BOUND, CycleParseError, GroupTooLarge, StructureError
from .prym import (
    DEFAULT_MATRIX_BOUND,
    DegenerateCorrespondence,
    EngineError,
    IndexTooLarge,
    InvalidInput,
    NonIntegralExponent,
    coefficient_list,
    correspondence_coefficients,
    hecke_matrix,
    projector_identity_check,
    run_presentation,
)
from .reptheory import NotACharacter
from .scenario import ScenarioError, emit_scenario, family_document, load_scenario

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_ENGINE = 0, 1, 2, 3


class _InputError(Exception):
    pass


def _stringify(value):
    """Integers become decimal strings, recursively."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _stringify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_stringify(v) for v in value]
    return value


def _envelope(command: str, body: dict, started: float) -> dict:
    doc = {"engine": {"name": "prymtyurin", "version": __version__}, "command": command}
    doc.update(body)
    doc["timing"] = {"seconds": f"{time.perf_counter() - started:.6f}"}
    return doc


def _emit(args, doc: dict, text: str) -> None:
    rendered = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rendered)
    if args.json:
        sys.stdout.write(rendered)
    else:
        sys.stdout.write(text)


def _load(args):
    try:
        return load_scenario(args.scenario, args.enumeration_bound)
    except OSError as exc:
        raise _InputError(f"cannot read {args.scenario}: {exc.strerror}") from exc


def _report_text(report) -> str:
    lines = [f"verdict: {report.verdict}"]
    for key in ("group_order", "index", "b", "q", "dim_prym", "genus_x", "genus_z", "criterion_residual"):
        value = report.group_order if key == "group_order" else getattr(report, key)
        lines.append(f"  {key:<19}{'-' if value is None else value}")
    if report.correspondence is not None:
        lines.append("  double cosets (rep, size, b_i):")
        dec = report.correspondence.decomposition
        for rep, size, coeff in zip(dec.reps, dec.sizes, report.correspondence.coefficients):
            lines.append(f"    {str(rep):<24}{size:>8}{coeff:>10}")
    lines.append("  checks:")
    for name, check in report.checks.items():
        detail = f"  {check.detail}" if check.detail else ""
        lines.append(f"    {check.status:<8}{name}{detail}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_check(args) -> int:
    started = time.perf_counter()
    scenario = _load(args)
    report = run_presentation(scenario.input, matrix_bound=args.matrix_bound)
    body = report.to_dict()
    body["scenario"] = _stringify(scenario.document)
    _emit(args, _envelope("check", body, started), _report_text(report))
    return EXIT_OK if report.valid else EXIT_FAIL


def _parse_family(text: str) -> Family:
    try:
        return Family(text)
    except ValueError:
        raise _InputError(f"unknown family {text!r} (expected sym, alt-dt or alt-3c)") from None


def _family_spec(args) -> FamilySpec:
    try:
        genera = tuple(int(g) for g in args.genera.split(","))
    except ValueError:
        raise _InputError(f"--genera must be comma-separated integers, got {args.genera!r}") from None
    mixed = None
    family = _parse_family(args.family)
    if args.mixed:
        mixed = tuple(_parse_family(f.strip()) for f in args.mixed.split(","))
        family = mixed[0]
    try:
        return FamilySpec(family, args.n, genera, mixed)
    except FamilyError as exc:
        raise _InputError(str(exc)) from exc


def cmd_product(args) -> int:
    started = time.perf_counter()
    spec = _family_spec(args)
    document = family_document(spec)
    if args.emit_scenario:
        with open(args.emit_scenario, "w", encoding="utf-8") as fh:
            fh.write(emit_scenario(document))
    inp = family_presentation(spec, args.enumeration_bound)
    report = run_presentation(inp, matrix_bound=args.matrix_bound)
    exp = closed_form_expectation(spec)

    rows = [
        ("q", report.q, exp.q),
        ("b", report.b, exp.b),
        ("dim_prym", report.dim_prym, exp.dim_prym),
        ("genus_x", report.genus_x, exp.genus_x),
        ("genus_z", report.genus_z, exp.genus_z),
        ("criterion_residual", report.criterion_residual, 0),
    ]
    comparison = []
    for name, computed, expected in rows:
        if expected is None:
            continue
        comparison.append({"quantity": name, "computed": computed, "expected": expected,
                           "status": "match" if computed == expected else "mismatch"})
    for which, value in exp.published_dim_j.items():
        comparison.append({"quantity": f"published_dim_j_{which}", "computed": report.genus_x, "expected": value,
                           "status": "match" if value == report.genus_x else "flagged"})
    all_match = all(c["status"] != "mismatch" for c in comparison)

    body = report.to_dict()
    body["family"] = {
        "family": spec.family.value,
        "n": spec.n,
        "genera": list(spec.genera),
        "mixed": None if spec.mixed is None else [f.value for f in spec.mixed],
        "branch_counts": list(spec.branch_counts()),
    }
    body["scenario"] = document
    body["comparison"] = comparison
    body["flags"] = list(exp.flags)
    body = _stringify(body)

    fams = "x".join(f.value for f in spec.factor_families())
    lines = [f"family {fams}, n = {spec.n}, genera = {list(spec.genera)}, s = {list(spec.branch_counts())}"]
    lines.append(f"{'quantity':<26}{'computed':>12}{'expected':>12}  status")
    for c in comparison:
        lines.append(f"{c['quantity']:<26}{str(c['computed']):>12}{str(c['expected']):>12}  {c['status']}")
    for flag in exp.flags:
        lines.append(f"flag: {flag}")
    text = "\n".join(lines) + "\n" + _report_text(report)
    _emit(args, _envelope("product", body, started), text)
    return EXIT_OK if report.valid and all_match else EXIT_FAIL


def cmd_paper_table(args) -> int:
    started = time.perf_counter()
    rows = reproduce_paper_table(args.filter)
    counts = {"pass": 0, "fail": 0, "flagged": 0}
    for r in rows:
        counts[r.verdict] += 1
    body = {
        "rows": [
            {"claim": r.claim, "computed": _stringify(r.computed), "expected": _stringify(r.expected), "verdict": r.verdict}
            for r in rows
        ],
        "summary": _stringify(counts),
    }
    lines = [f"{r.verdict:<8} {r.claim}  computed={r.computed} expected={r.expected}" for r in rows]
    lines.append(f"{len(rows)} rows: {counts['pass']} pass, {counts['fail']} fail, {counts['flagged']} flagged")
    _emit(args, _envelope("paper-table", body, started), "\n".join(lines) + "\n")
    return EXIT_OK if counts["fail"] == 0 else EXIT_FAIL


def cmd_spectrum(args) -> int:
    started = time.perf_counter()
    inp = _load(args).input
    if inp.index > args.matrix_bound:
        raise IndexTooLarge(f"index {inp.index} exceeds the matrix bound {args.matrix_bound}")
    coefficients = coefficient_list(inp)
    m = hecke_matrix(inp, coefficients, args.matrix_bound)
    try:
        data = correspondence_coefficients(inp)
        b, q, scalar = data.b, data.q, data.b * data.q
        note = None
    except (DegenerateCorrespondence, NonIntegralExponent) as exc:
        # every coefficient equal: M is b_1 times the all-ones matrix
        b = q = None
        scalar = inp.index * coefficients[0]
        note = str(exc)
    pv = projector_identity_check(m, scalar, 1, inp.dims)
    ok = note is None and pv.holds
    body = {
        "index": inp.index,
        "b": b,
        "q": q,
        "scalar": pv.scalar,
        "square_identity": pv.square_ok,
        "rank": pv.rank,
        "expected_rank": pv.expected_rank,
        "eigenvalues": {str(k): v for k, v in sorted(pv.eigenvalues().items())} if pv.square_ok else None,
        "valid": ok,
    }
    if len(m) <= 16:
        body["matrix"] = m
    if note:
        body["note"] = note
    lines = [
        f"[G:H] = {inp.index}, b = {b}, q = {q}",
        f"M^2 = {pv.scalar} M: {pv.square_ok}",
        f"rank M = {pv.rank} (expected {pv.expected_rank})",
    ]
    if pv.square_ok:
        lines.append("eigenvalues: " + ", ".join(f"{k} (x{v})" for k, v in sorted(pv.eigenvalues().items())))
    if note:
        lines.append(f"note: {note}")
    _emit(args, _envelope("spectrum", _stringify(body), started), "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prymtyurin", description="Prym-Tyurin presentations from group data.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the machine-readable report")
    common.add_argument("--out", metavar="PATH", help="also write the machine-readable report to PATH")
    common.add_argument("--enumeration-bound", type=int, default=DEFAULT_ENUMERATION_BOUND, metavar="N")
    common.add_argument("--matrix-bound", type=int, default=DEFAULT_MATRIX_BOUND, metavar="N")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="evaluate a scenario file")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("product", parents=[common], help="build and evaluate a family input")
    p.add_argument("--family", default="sym", help="sym, alt-dt or alt-3c")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--genera", required=True, help="comma-separated genera, one per factor")
    p.add_argument("--mixed", help="comma-separated family per factor")
    p.add_argument("--emit-scenario", metavar="PATH", help="write the equivalent scenario file")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("paper-table", parents=[common], help="recompute every closed-form claim")
    p.add_argument("--filter", help="keep rows whose claim contains this text")
    p.set_defaults(func=cmd_paper_table)

    p = sub.add_parser("spectrum", parents=[common], help="Hecke operator spectrum of a scenario")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_spectrum)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (_InputError, ScenarioError, CycleParseError, InvalidInput, StructureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (GroupTooLarge, EngineError, NotACharacter) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENGINE
