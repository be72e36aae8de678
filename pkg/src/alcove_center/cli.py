"""Command-line entry point.

Subcommands: datum, blocks, character, trace, verify <suite>.  Output is
human text by default, versioned JSON with --json, and CSV + figure files
with --report DIR on the reporting paths.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .center_calc import translation_trace_scalar
from .charring import specialize, weyl_character
from .errors import AlcoveError
from .linkage import enumerate_blocks, make_block_label, in_alcove_box
from .root_datum import parse_type, validate_l
from .scalars import CycScalar, QLaurent
from .verify import ALL_ORDER, SUITES, VerifyReport

SCHEMA = "alcove-center/1"

_DEFAULT_L = {"A1": 3, "A2": 5, "B2": 5}


def default_l(d) -> int:
    label = f"{d.series_type}{d.rank}"
    if label in _DEFAULT_L:
        return _DEFAULT_L[label]
    l = d.coxeter_number if d.coxeter_number % 2 else d.coxeter_number + 1
    while not validate_l(d, l):
        l += 2
    return l


def jsonize(value):
    """Lower values to the JSON schema: rationals as num/den strings,
    cyclotomic scalars as coefficient vectors, Laurent scalars as term lists."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, Fraction):
        return {"num": str(value.numerator), "den": str(value.denominator)}
    if isinstance(value, CycScalar):
        return {"cyc": [str(x) for x in value.v]}
    if isinstance(value, QLaurent):
        terms = [
            {"num": str(c.numerator), "den": str(c.denominator), "qpow": k}
            for k, c in sorted(value.c.items())
        ]
        if not terms:
            terms = [{"num": "0", "den": "1", "qpow": 0}]
        return terms[0] if len(terms) == 1 else {"terms": terms}
    if isinstance(value, dict):
        return {str(k): jsonize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonize(v) for v in value]
    return str(value)


def emit_json(payload) -> str:
    return json.dumps(jsonize(payload), indent=2)


def _parse_weight(text, rank):
    parts = [p for p in text.split(",") if p.strip() != ""]
    if len(parts) != rank:
        raise AlcoveError(f"weight {text!r} does not match rank {rank}")
    return tuple(int(p) for p in parts)


def _report_payload(report: VerifyReport):
    return {
        "schema": SCHEMA,
        "suite": report.suite,
        "cases": [
            {"name": c.name, "expected": c.expected, "computed": c.computed, "pass": c.passed}
            for c in report.cases
        ],
        "pass": report.passed,
    }


def _print_report(report: VerifyReport):
    for c in report.cases:
        print(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}")
        if not c.passed:
            print(f"       expected {c.expected}, computed {c.computed}")
    status = "pass" if report.passed else "FAIL"
    print(f"suite {report.suite}: {status} ({len(report.cases)} cases, {report.wall_time:.2f}s)")


def cmd_datum(args):
    d = parse_type(args.type)
    info = d.describe()
    if args.json:
        print(emit_json({"schema": SCHEMA, "datum": info}))
    else:
        for k, v in info.items():
            print(f"{k}: {v}")
    return 0


def cmd_blocks(args):
    d = parse_type(args.type)
    l = args.l or default_l(d)
    if not validate_l(d, l):
        raise AlcoveError(f"l = {l} is not admissible for {args.type}")
    blocks = enumerate_blocks(d, l)
    if args.report:
        from .report import write_blocks_report

        write_blocks_report(d, l, blocks, args.report)
    if args.json:
        payload = {
            "schema": SCHEMA,
            "type": args.type,
            "l": l,
            "blocks": [
                {
                    "omega": list(b.omega),
                    "stabilizer_order": b.order,
                    "parahoric_type": sorted(b.parahoric_type),
                }
                for b in blocks
            ],
        }
        print(emit_json(payload))
    else:
        print(f"{len(blocks)} blocks for {args.type}, l={l}")
        for b in blocks:
            j = ",".join(map(str, sorted(b.parahoric_type)))
            print(f"omega={b.omega} |W_l,omega|={b.order} J={{{j}}}")
    return 0


def cmd_character(args):
    d = parse_type(args.type)
    lam = _parse_weight(args.weight, d.rank)
    ch = weyl_character(d, lam)
    l = None
    if args.q == "zeta":
        l = args.l or default_l(d)
        if not validate_l(d, l):
            raise AlcoveError(f"l = {l} is not admissible for {args.type}")
        ch = specialize(ch, l)
    if args.report:
        from .report import write_character_report

        write_character_report(d, lam, ch, args.report)
    if args.json:
        payload = {
            "schema": SCHEMA,
            "type": args.type,
            "weight": list(lam),
            "mode": args.q,
            "terms": [{"weight": list(k), "coeff": jsonize(v)} for k, v in sorted(ch.c.items())],
        }
        print(emit_json(payload))
    else:
        print(f"ch V{lam} for {args.type} ({args.q} coefficients)")
        for k, v in sorted(ch.c.items()):
            print(f"  K{k}: {v}")
    return 0


def cmd_trace(args):
    d = parse_type(args.type)
    l = args.l or default_l(d)
    if not validate_l(d, l):
        raise AlcoveError(f"l = {l} is not admissible for {args.type}")
    omega = _parse_weight(args.omega, d.rank)
    if not in_alcove_box(d, l, omega):
        raise AlcoveError(f"omega {omega} is not an alcove-box representative for l={l}")
    block = make_block_label(d, l, omega)
    rep = translation_trace_scalar(d, l, block, args.n)
    if args.json:
        payload = {
            "schema": SCHEMA,
            "type": args.type,
            "l": l,
            "omega": list(rep.omega),
            "scalar": str(rep.value),
            "expected": rep.expected,
            "stable": rep.stable,
            "n": rep.n_used,
        }
        print(emit_json(payload))
    else:
        print(
            f"omega={rep.omega}: scalar {rep.value} "
            f"(expected |W_l,omega| = {rep.expected}, stable={rep.stable}, n={rep.n_used})"
        )
    return 0 if rep.passed else 1


def _suite_kwargs(name, args):
    kwargs = {}
    if args.type:
        d = parse_type(args.type)
        l = args.l or default_l(d)
        if name in ("d2", "d1", "l514", "b5", "linkage", "vanish"):
            kwargs["pairs"] = ((args.type, l),)
        elif name == "poincare":
            kwargs["labels"] = (args.type,)
    if name == "b5":
        if args.deg:
            kwargs["degree"] = args.deg
        if args.trunc:
            kwargs["truncation"] = args.trunc
    if name == "poincare" and args.trunc:
        kwargs["truncation"] = args.trunc
    if name in ("d2", "d1", "linkage", "charring") and args.seed is not None:
        kwargs["seed"] = args.seed
    return kwargs


def cmd_verify(args):
    names = list(ALL_ORDER) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        if name not in SUITES:
            raise AlcoveError(f"unknown suite {name!r}; available: {', '.join(sorted(SUITES))}, all")
        reports.append(SUITES[name](**_suite_kwargs(name, args)))
    if args.report:
        from .report import write_verify_report

        for rep in reports:
            write_verify_report(rep, args.report)
    ok = all(r.passed for r in reports)
    if args.json:
        if len(reports) == 1:
            print(emit_json(_report_payload(reports[0])))
        else:
            print(emit_json({"schema": SCHEMA, "suites": [_report_payload(r) for r in reports], "pass": ok}))
    else:
        for rep in reports:
            _print_report(rep)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alcove-center",
        description="Exact alcove combinatorics, characters and central trace identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("datum", help="inspect a root datum")
    p.add_argument("--type", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_datum)

    p = sub.add_parser("blocks", help="enumerate the alcove-box block labels")
    p.add_argument("--type", required=True)
    p.add_argument("--l", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--report")
    p.set_defaults(fn=cmd_blocks)

    p = sub.add_parser("character", help="Weyl character of a dominant weight")
    p.add_argument("--type", required=True)
    p.add_argument("--weight", required=True, help="comma-separated fundamental coordinates")
    p.add_argument("--q", choices=["generic", "zeta"], default="generic")
    p.add_argument("--l", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--report")
    p.set_defaults(fn=cmd_character)

    p = sub.add_parser("trace", help="translation-functor trace scalar of a block")
    p.add_argument("--type", required=True)
    p.add_argument("--l", type=int)
    p.add_argument("--omega", required=True, help="comma-separated fundamental coordinates")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_trace)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--type")
    p.add_argument("--l", type=int)
    p.add_argument("--deg", type=int)
    p.add_argument("--trunc", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--report")
    p.set_defaults(fn=cmd_verify)

    return parser


def _normalize_argv(argv):
    """Glue weight values onto their flags so "-1,2" is not read as an option."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--omega", "--weight"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(_normalize_argv(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except AlcoveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
