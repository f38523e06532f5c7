"""Command-line front end.

Exit codes: 0 success, 1 validation error, 2 internal invariant violation,
3 oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bruteforce import BudgetExceeded
from .catalog import ARITHMETIC_VARIANTS, BadParams, UnknownPreset, arithmetic_variant, catalog_keys, parse_preset_spec
from .cohomology import NotCyclic
from .galois import InvalidArithmeticData, InvalidGroup, InvalidLattice, NotNormal
from .oracle import cyclic_sweep, enumeration_sweep
from .report import (
    DocumentError,
    analysis_report,
    catalog_report,
    cohomology_report,
    document_from_preset,
    load_document,
    oracle_report,
    parse_arithmetic,
    render_json,
    render_text,
    report_status,
    sandwich_document_report,
    weil_report,
)
from .weil import NotInvariant

EXIT_OK, EXIT_VALIDATION, EXIT_INTERNAL, EXIT_MISMATCH = 0, 1, 2, 3

VALIDATION_ERRORS = (DocumentError, InvalidGroup, InvalidLattice, InvalidArithmeticData,
                     NotNormal, NotCyclic, NotInvariant, BadParams, BudgetExceeded, OSError)


class ValidationError(ValueError):
    pass


def resolve_source(source: str, params: list[str] | None = None):
    if os.path.exists(source) or source.endswith(".json"):
        if params:
            raise ValidationError("--param only applies to presets")
        return load_document(source)
    name, spec_params = parse_preset_spec(source)
    for item in params or []:
        key, eq, val = item.partition("=")
        if not eq:
            raise ValidationError(f"--param expects key=value, got {item!r}")
        spec_params[key.strip()] = val.strip()
    try:
        return document_from_preset(name, spec_params)
    except UnknownPreset:
        raise ValidationError(f"unknown preset {name!r}; choose from {', '.join(catalog_keys())} "
                              "or give a path to a JSON document") from None


def resolve_arith(value: str | None, doc):
    if value is None:
        return None
    if value in ARITHMETIC_VARIANTS:
        data = arithmetic_variant(doc.lattice, value)
        data.check(doc.group)
        return data
    if not os.path.exists(value):
        raise ValidationError(f"--arith must be one of {', '.join(ARITHMETIC_VARIANTS)} "
                              f"or a JSON file, got {value!r}")
    with open(value, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"{value}:{exc.lineno}:{exc.colno}", exc.msg) from None
    if isinstance(data, dict) and "arithmetic" in data:
        data = data["arithmetic"]
    return parse_arithmetic(data, doc.group)


def _emit(report: dict, args) -> int:
    text = render_text(report) if getattr(args, "text", False) else render_json(report)
    sys.stdout.write(text)
    status = report_status(report)
    return {"ok": EXIT_OK, "mismatch": EXIT_MISMATCH, "violation": EXIT_INTERNAL}[status]


def cmd_analyze(args) -> int:
    doc = resolve_source(args.source, args.param)
    arith = resolve_arith(args.arith, doc)
    return _emit(analysis_report(doc, arith), args)


def cmd_cohomology(args) -> int:
    doc = resolve_source(args.source, args.param)
    if args.mod is not None and args.mod < 2:
        raise ValidationError("--mod must be at least 2")
    return _emit(cohomology_report(doc, args.degree, args.dual, args.mod or 0), args)


def cmd_sandwich(args) -> int:
    doc = resolve_source(args.source, args.param)
    return _emit(sandwich_document_report(doc, resolve_arith(args.arith, doc)), args)


def cmd_weil(args) -> int:
    doc = resolve_source(args.source, args.param)
    if args.mod < 1 or args.den < 1:
        raise ValidationError("--mod and --den must be positive")
    if args.arith is not None:
        doc = type(doc)(doc.lattice, resolve_arith(args.arith, doc), doc.name)
    return _emit(weil_report(doc, args.mod, args.den, args.seed, args.samples), args)


def cmd_oracle(args) -> int:
    sweeps = [enumeration_sweep(args.max_group, args.max_mod, args.max_rank, args.seed,
                                fault=args.fault),
              cyclic_sweep(args.max_cyclic, fault=args.fault)]
    scope = {"max_group": args.max_group, "max_mod": args.max_mod, "max_rank": args.max_rank,
             "max_cyclic": args.max_cyclic, "seed": args.seed}
    return _emit(oracle_report(sweeps, scope), args)


def cmd_catalog(args) -> int:
    return _emit(catalog_report(), args)


def _add_format(p, default_text: bool = False):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="text", action="store_false", help="canonical JSON output")
    g.add_argument("--text", dest="text", action="store_true", help="human-readable output")
    p.set_defaults(text=default_text)


def _add_source(p, what="preset key (optionally key:value) or path to a JSON document"):
    p.add_argument("source", help=what)
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                   help="preset parameter, e.g. n=3 or rank=2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="galtori", description="Galois cohomology of character lattices and dual tori.")
    sub = parser.add_subparsers(dest="command", required=True)
    arith_help = "unramified, totally_ramified or a JSON file with inertia and frobenius"

    p = sub.add_parser("analyze", help="full report for one torus")
    _add_source(p)
    p.add_argument("--arith", help=arith_help)
    _add_format(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("cohomology", help="one cohomology group")
    _add_source(p)
    p.add_argument("--degree", type=int, choices=(0, 1, 2), required=True)
    p.add_argument("--dual", action="store_true", help="use the dual lattice")
    p.add_argument("--mod", type=int, help="reduce coefficients mod m")
    _add_format(p)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("sandwich", help="X^Gamma <= X_*(X_T) <= Pr_Gamma(X)")
    _add_source(p)
    p.add_argument("--arith", required=True, help=arith_help)
    _add_format(p)
    p.set_defaults(func=cmd_sandwich)

    p = sub.add_parser("weil", help="explicit cocycle identities in the unramified Weil model")
    _add_source(p)
    p.add_argument("--mod", type=int, required=True, help="torsion level for H^1 counts")
    p.add_argument("--den", type=int, required=True, help="denominator bound")
    p.add_argument("--arith", help="unramified or a JSON file (must be unramified)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100, help="random invariant vectors")
    _add_format(p)
    p.set_defaults(func=cmd_weil)

    p = sub.add_parser("oracle", help="resolution against enumeration and cyclic formulas")
    p.add_argument("--max-group", type=int, default=6)
    p.add_argument("--max-mod", type=int, default=4)
    p.add_argument("--max-rank", type=int, default=2, choices=(1, 2))
    p.add_argument("--max-cyclic", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fault", choices=("wrong_sign",), help=argparse.SUPPRESS)
    _add_format(p, default_text=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("catalog", help="list preset keys")
    _add_format(p, default_text=True)
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, *VALIDATION_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except UnknownPreset as exc:
        print(f"error: unknown preset {exc.args[0]!r}", file=sys.stderr)
        return EXIT_VALIDATION
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
