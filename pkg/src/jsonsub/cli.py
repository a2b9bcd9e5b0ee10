"""Command line front end.

Exit codes: 0 Holds (or valid), 1 DoesNotHold (or invalid), 2 Undecidable,
3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .budget import CapacityLimit, time_budget
from .canonicalizer import canonicalize, to_json
from .json_model import JsonModelError, dumps, load_file
from .regex.parser import UnsupportedPattern
from .schema_model import InvalidSchema, RecursiveRef, RefError, file_uri, load_schema
from .simplifier import simplify
from .subtype import DoesNotHold, Holds, check
from .validator import validate

EXIT = {"Holds": 0, "DoesNotHold": 1, "Undecidable": 2}
INPUT_ERROR = 3


class InputError(Exception):
    pass


def _load(path: str):
    try:
        return load_file(path)
    except (OSError, UnicodeDecodeError, JsonModelError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, sort_keys=True) if args.json else text)


def cmd_check(args) -> int:
    lhs, rhs = _load(args.lhs), _load(args.rhs)
    try:
        v = check(lhs, rhs, args.direction, time_budget=args.time_budget,
                  lhs_base=file_uri(args.lhs), rhs_base=file_uri(args.rhs))
    except InvalidSchema as exc:
        raise InputError(str(exc)) from exc
    except RefError as exc:
        raise InputError(str(exc)) from exc
    payload = {"lhs": args.lhs, "rhs": args.rhs, "direction": args.direction, **v.to_json()}
    if isinstance(v, Holds):
        text = "Holds"
    elif isinstance(v, DoesNotHold):
        text = f"DoesNotHold: rule {v.rule} at {v.path or '/'}"
    else:
        text = f"Undecidable: {v.tag} ({v.detail})"
    _emit(args, payload, text)
    return EXIT[v.kind]


def cmd_equiv(args) -> int:
    args.direction = "equiv"
    return cmd_check(args)


def _transform(args, fn) -> int:
    try:
        s = load_schema(Path(args.schema))
    except (OSError, UnicodeDecodeError, JsonModelError, InvalidSchema) as exc:
        raise InputError(str(exc)) from exc
    except RecursiveRef as exc:
        return _undecidable(args, "RecursiveRef", exc)
    except RefError as exc:
        raise InputError(str(exc)) from exc
    try:
        with time_budget(args.time_budget):
            out = to_json(fn(s))
    except UnsupportedPattern as exc:
        return _undecidable(args, "NonRegularPattern", exc)
    except CapacityLimit as exc:
        return _undecidable(args, "CapacityLimit", exc)
    print(dumps(out, indent=None if args.json else 2))
    return 0


def _undecidable(args, tag: str, exc: Exception) -> int:
    _emit(args, {"verdict": "Undecidable", "tag": tag, "detail": str(exc)},
          f"Undecidable: {tag} ({exc})")
    return EXIT["Undecidable"]


def cmd_canonicalize(args) -> int:
    return _transform(args, canonicalize)


def cmd_simplify(args) -> int:
    return _transform(args, lambda s: simplify(canonicalize(s)))


def cmd_validate(args) -> int:
    doc = _load(args.document)
    schema = _load(args.schema)
    try:
        ok = validate(doc, schema, base=file_uri(args.schema))
    except UnsupportedPattern as exc:
        return _undecidable(args, "NonRegularPattern", exc)
    except RefError as exc:
        raise InputError(str(exc)) from exc
    _emit(args, {"document": args.document, "schema": args.schema, "valid": ok},
          "valid" if ok else "invalid")
    return 0 if ok else 1


def cmd_corpus(args) -> int:
    from .corpus import run_corpus, write_report
    from .plotting import plot_report

    for d in (args.old, args.new):
        if not Path(d).is_dir():
            raise InputError(f"{d}: not a directory")
    report = run_corpus(args.old, args.new, args.direction, args.time_budget, args.jobs)
    out = Path(args.out)
    write_report(report, out, args.time_budget)
    figures = Path(args.figures) if args.figures else out.with_name(out.stem + "_figures")
    if not args.no_figures:
        plot_report(report, figures)
    summary = report.summary(args.time_budget)
    text = f"{summary['pairs']} pairs: " + ", ".join(
        f"{k}={v}" for k, v in summary["verdicts"].items()) + f"; report in {out}"
    _emit(args, summary, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jsonsub", description="JSON Schema (draft-04) subschema checker")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="print one machine-readable JSON line")
        sp.add_argument("--time-budget", type=float, default=None, metavar="SECONDS",
                        help="give up with CapacityLimit after this many seconds")

    c = sub.add_parser("check", help="is LHS a subschema of RHS?")
    c.add_argument("lhs")
    c.add_argument("rhs")
    c.add_argument("--direction", choices=("sub", "super", "equiv"), default="sub")
    common(c)
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("equiv", help="are LHS and RHS equivalent?")
    e.add_argument("lhs")
    e.add_argument("rhs")
    common(e)
    e.set_defaults(func=cmd_equiv)

    for name, fn, what in (("canonicalize", cmd_canonicalize, "canonical form"),
                           ("simplify", cmd_simplify, "simplified canonical form")):
        t = sub.add_parser(name, help=f"print the {what} of a schema")
        t.add_argument("schema")
        common(t)
        t.set_defaults(func=fn)

    v = sub.add_parser("validate", help="validate a document against a schema")
    v.add_argument("document")
    v.add_argument("schema")
    common(v)
    v.set_defaults(func=cmd_validate)

    r = sub.add_parser("corpus", help="check same-named schema pairs in two directories")
    r.add_argument("old")
    r.add_argument("new")
    r.add_argument("--out", default="report.jsonl", help="JSON Lines report path")
    r.add_argument("--figures", default=None, help="directory for PNG figures")
    r.add_argument("--no-figures", action="store_true")
    r.add_argument("--direction", choices=("sub", "super", "equiv"), default="sub")
    r.add_argument("--jobs", type=int, default=1)
    common(r)
    r.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        if getattr(args, "json", False):
            print(json.dumps({"verdict": "InputError", "detail": str(exc)}))
        print(f"jsonsub: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
