"""Command-line entry point ``ga``.

JSON output of every subcommand is documented in README.md. Usage errors
(bad signature, unknown group, malformed multivector, out-of-range bounds)
exit with status 2; ``ga verify`` exits 1 when any check fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Any

from . import config as cfg
from .algebra import Multivector, Signature, format_blade, parse_multivector, signatures_up_to
from .centralizers import NoClosedForm, bruteforce_target, centralizer_closed_form
from .groups import (
    GENERALIZED_GROUPS,
    FactorizationError,
    GroupId,
    Mode,
    factor,
    factor_checks,
    member,
    norms,
)
from .lie import PRINTED_ROWS, TABLE_ROWS, NoTableRow, eval_dim_formula, lie_algebra, table_row
from .linalg import LinearSubspace
from .subspaces import evaluate
from .verify import run_verify

FORMATS = ("json", "text", "csv")


class UsageError(Exception):
    pass


# Output helpers


def _emit(obj: Any, fmt: str, text: str | None = None) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2))
    elif fmt == "text":
        print(text if text is not None else _plain(obj))
    else:
        raise UsageError("--format csv is only available for 'table'")


def _plain(obj: dict[str, Any]) -> str:
    width = max(map(len, obj))
    return "\n".join(f"{k:<{width}}  {v}" for k, v in obj.items())


def _basis(space: LinearSubspace, sig: Signature) -> list[str]:
    """Blade names when the space is spanned by blades, else its RREF rows."""
    blades = space.blade_support()
    if blades is not None:
        return [format_blade(m, sig) for m in sorted(blades)]
    return [str(v) for v in space.basis_multivectors(sig)]


def _sig(args) -> Signature:
    if args.sig is None:
        raise UsageError("--sig p,q,r is required")
    try:
        return Signature.parse(args.sig)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _group(name: str) -> GroupId:
    try:
        return GroupId.parse(name)
    except (KeyError, ValueError) as exc:
        known = ", ".join(g.value for g in GroupId)
        raise UsageError(f"unknown group {name!r}; known groups: {known}") from exc


def _mv(text: str, sig: Signature) -> Multivector:
    try:
        return parse_multivector(text, sig)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _max_n(args, default: int = 6) -> int:
    value = default if args.max_n is None else args.max_n
    if not 1 <= value <= cfg.n_max():
        raise UsageError(f"--max-n must lie in [1, {cfg.n_max()}] (raise the cap with GA_N_MAX)")
    return value


# Subcommands


def cmd_centralizer(args) -> int:
    sig = _sig(args)
    try:
        if args.bruteforce:
            space, source = bruteforce_target(sig, args.target), "bruteforce"
        else:
            space, source = centralizer_closed_form(sig, args.target).to_linear(), "closed_form"
    except NoClosedForm as exc:
        raise UsageError(f"{exc.args[0]}; use --bruteforce") from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    basis = _basis(space, sig)
    out = {"signature": str(sig), "target": args.target, "source": source, "basis": basis, "dim": space.dim}
    _emit(out, args.format, "\n".join(basis + [f"dim {space.dim}"]))
    return 0


def cmd_member(args) -> int:
    sig = _sig(args)
    g, t = _group(args.group), _mv(args.mv, sig)
    psi, chi = norms(t)
    modes = [Mode.STABILIZER, Mode.NORM] if args.mode == "both" else [Mode(args.mode)]
    answers = {m: member(g, t, m) for m in modes}
    out = {
        "member": answers[modes[-1]],
        "psi": str(psi),
        "chi": str(chi),
        "mode_agreement": len(set(answers.values())) == 1 if len(modes) == 2 else None,
    }
    _emit(out, args.format)
    return 0


def cmd_factor(args) -> int:
    sig = _sig(args)
    g, t = _group(args.group), _mv(args.mv, sig)
    try:
        t0, y = factor(g, t)
    except FactorizationError as exc:
        raise UsageError(str(exc)) from exc
    out = {"t0": str(t0), "y": str(y), "checks": factor_checks(g, t, t0, y)}
    _emit(out, args.format)
    return 0


def _lie_row(g: GroupId, sig: Signature, rows) -> dict[str, Any]:
    computed = lie_algebra(g, sig)
    try:
        row = table_row(g, sig, rows)
    except NoTableRow:
        return {"computed_dim": computed.dim, "table_dim": None, "formula_dim": None,
                "span_match": None, "dim_match": None, "table_row": "NoTableRow"}
    span = evaluate(row.algebra, sig)
    formula = eval_dim_formula(row.dimension, sig)
    return {
        "computed_dim": computed.dim,
        "table_dim": span.dim,
        "formula_dim": int(formula) if formula.denominator == 1 else str(formula),
        "span_match": computed == span.to_linear(),
        "dim_match": computed.dim == formula,
        "table_row": row.citation,
    }


def cmd_liealg(args) -> int:
    sig = _sig(args)
    g = _group(args.group)
    rows = PRINTED_ROWS if args.printed else TABLE_ROWS
    info = _lie_row(g, sig, rows)
    computed = lie_algebra(g, sig)
    match = None if info["span_match"] is None else info["span_match"] and info["dim_match"]
    out = {
        "group": g.value,
        "signature": str(sig),
        "basis": _basis(computed, sig),
        "dim": computed.dim,
        "expected_dim": info["formula_dim"],
        "match": match,
        "table_row": info["table_row"],
    }
    _emit(out, args.format)
    return 0


def cmd_table(args) -> int:
    rows = PRINTED_ROWS if args.printed else TABLE_ROWS
    if args.rows:
        header = ["table", "groups", "n_mod4", "guard", "algebra", "dimension"]
        records = [
            {"table": r.table, "groups": " ".join(g.value for g in r.groups),
             "n_mod4": " ".join(map(str, r.n_mod4)), "guard": "; ".join(r.guard),
             "algebra": r.algebra, "dimension": r.dimension}
            for r in rows
        ]
    elif args.lie_dims:
        header = ["group", "p", "q", "r", "computed_dim", "table_dim", "formula_dim", "span_match", "dim_match"]
        groups = [_group(args.group)] if args.group else list(GENERALIZED_GROUPS)
        records = []
        for sig in signatures_up_to(_max_n(args)):
            if sig.r == 0 and not args.include_r0:
                continue
            for g in groups:
                info = _lie_row(g, sig, rows)
                records.append({"group": g.value, "p": sig.p, "q": sig.q, "r": sig.r,
                                **{k: info[k] for k in header[4:]}})
    else:
        raise UsageError("choose --lie-dims or --rows")
    if args.format == "json":
        print(json.dumps(records, indent=2))
        return 0
    buf = io.StringIO()
    writer = csv.DictWriter(buf, header, lineterminator="\n",
                            delimiter="," if args.format == "csv" else "\t")
    writer.writeheader()
    for rec in records:
        writer.writerow({k: "" if v is None else v for k, v in rec.items()})
    sys.stdout.write(buf.getvalue())
    return 0


def cmd_verify(args) -> int:
    if args.format == "csv":
        raise UsageError("--format csv is only available for 'table'")
    conf = cfg.SweepConfig(
        max_n=_max_n(args), samples_per_case=args.samples, seed=args.seed, coeff_bound=args.coeff_bound
    )
    report = run_verify(conf, workers=args.workers)
    if args.format == "json":
        print(json.dumps(report.to_dict(timing=not args.no_timing), indent=2))
    else:
        print(report.text())
    return 0 if report.ok else 1


def cmd_norms(args) -> int:
    sig = _sig(args)
    psi, chi = norms(_mv(args.mv, sig))
    _emit({"psi": str(psi), "chi": str(chi)}, args.format)
    return 0


# Parser


def _global_options(parser: argparse.ArgumentParser, defaults: bool) -> None:
    """Global flags, accepted before or after the subcommand."""

    def d(value):
        return value if defaults else argparse.SUPPRESS

    parser.add_argument("--sig", default=d(None), help="signature p,q,r")
    parser.add_argument("--seed", type=int, default=d(0), help="master seed")
    parser.add_argument("--format", choices=FORMATS, default=d("json"))
    parser.add_argument("--max-n", type=int, default=d(None), help="largest n for sweeps (default 6)")
    parser.add_argument("-v", "--verbose", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ga", description="Generalized Clifford groups in degenerate algebras.")
    _global_options(parser, defaults=True)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, defaults=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("centralizer", parents=[common], help="closed-form or brute-force centralizer")
    p.add_argument("--target", required=True, help="e.g. Z2, Zc1, Zt3, Z^23bar, Z2&Z3")
    p.add_argument("--bruteforce", action="store_true")
    p.set_defaults(func=cmd_centralizer)

    p = sub.add_parser("member", parents=[common], help="group membership test")
    p.add_argument("--group", required=True)
    p.add_argument("--mv", required=True, help='multivector text, e.g. "1 + e12"')
    p.add_argument("--mode", choices=("both", "stab", "norm"), default="both")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("factor", parents=[common], help="factor a group element as t0 * y")
    p.add_argument("--group", required=True)
    p.add_argument("--mv", required=True)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("liealg", parents=[common], help="Lie algebra of a group")
    p.add_argument("--group", required=True)
    p.add_argument("--printed", action="store_true", help="compare with the rows as printed")
    p.set_defaults(func=cmd_liealg)

    p = sub.add_parser("table", parents=[common], help="Lie algebra table reproduction")
    p.add_argument("--lie-dims", action="store_true", help="one row per (group, p, q, r)")
    p.add_argument("--rows", action="store_true", help="dump the transcribed table rows")
    p.add_argument("--group", help="restrict --lie-dims to one group")
    p.add_argument("--include-r0", action="store_true", help="also list r = 0 signatures")
    p.add_argument("--printed", action="store_true", help="use the rows as printed, without corrections")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="full verification sweep")
    p.add_argument("--samples", type=int, default=20, help="samples per case")
    p.add_argument("--coeff-bound", type=int, default=3)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="omit timing fields from JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("norms", parents=[common], help="psi and chi of a multivector")
    p.add_argument("--mv", required=True)
    p.set_defaults(func=cmd_norms)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.exit(2, f"ga {args.command}: error: {exc}\n")
    except ValueError as exc:  # GA_N_MAX and similar configuration errors
        parser.exit(2, f"ga {args.command}: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
