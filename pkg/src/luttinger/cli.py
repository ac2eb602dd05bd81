"""``luttinger-calc`` command line."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path

from .abelian import abelianization
from .coset import default_max_cosets, todd_coxeter
from .dsl import Options, ScriptError, format_run_report, parse, run
from .presentation import Presentation
from .syntax import ParseError
from .tietze import Effort, tietze_simplify
from .verify import format_report, report_ok, verify_paper

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _emit(args, payload: dict, text: str) -> None:
    if not args.no_timestamp:
        payload = {"generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"), **payload}
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False, sort_keys=False))
    else:
        print(text)


def _read_presentation(arg: str) -> Presentation:
    if arg == "-":
        text = sys.stdin.read()
    elif not arg.lstrip().startswith("<") and Path(arg).is_file():
        text = Path(arg).read_text(encoding="utf-8")
    else:
        text = arg
    return Presentation.parse(text.strip())


def cmd_run(args) -> int:
    try:
        text = Path(args.script).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {args.script}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    try:
        script = parse(text)
    except ScriptError as exc:
        for d in exc.diagnostics:
            print(f"{args.script}:{d}", file=sys.stderr)
        if args.json:
            print(json.dumps({"diagnostics": [d.to_json() for d in exc.diagnostics], "exit_code": EXIT_USAGE}, indent=2))
        return EXIT_USAGE
    options = Options(max_cosets=args.max_cosets, effort=args.effort)
    code, report = run(script, options)
    _emit(args, {"script": args.script, **report}, format_run_report(report))
    return code


def cmd_verify(args) -> int:
    report = verify_paper(cap=args.max_cosets, effort=Effort.level(args.effort))
    _emit(args, report, format_report(report))
    return EXIT_OK if report_ok(report) else EXIT_FAIL


def cmd_simplify(args) -> int:
    p = _read_presentation(args.presentation)
    target, cert = tietze_simplify(p, Effort.level(args.effort))
    payload = {
        "input": str(p),
        "output": str(target),
        "generator_images": {g: target.format_word(w) for g, w in zip(p.generators, cert.generator_images)},
        "certificate": cert.summary(),
        "log": list(cert.log),
    }
    lines = [str(target)]
    lines += [f"  {g} -> {w}" for g, w in payload["generator_images"].items()]
    if args.verbose:
        lines += ["  " + step for step in cert.log]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_abelianize(args) -> int:
    p = _read_presentation(args.presentation)
    ab = abelianization(p)
    _emit(args, {"input": str(p), "abelianization": ab.to_json(), "text": str(ab)}, str(ab))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    p = _read_presentation(args.presentation)
    res = todd_coxeter(p, args.max_cosets)
    _emit(args, {"input": str(p), **res.to_json()}, str(res))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--no-timestamp", action="store_true", help="omit the generation time (byte-stable output)")
    common.add_argument(
        "--max-cosets",
        type=int,
        default=None,
        metavar="N",
        help=f"coset enumeration cap (default: $LUTTINGER_MAX_COSETS or {default_max_cosets()})",
    )
    common.add_argument("--effort", type=int, default=1, metavar="N", help="simplification budget multiplier")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="luttinger-calc",
        description="Fundamental groups and (e, sigma) of 4-manifolds built by fiber sums and Luttinger surgery.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("run", parents=[common], help="evaluate a construction script")
    p.add_argument("script")
    p.set_defaults(func=cmd_run)
    p = sub.add_parser("verify-paper", parents=[common], help="check every built-in claim")
    p.set_defaults(func=cmd_verify)
    for name, func, what in (
        ("simplify", cmd_simplify, "Tietze-simplify a presentation"),
        ("abelianize", cmd_abelianize, "abelian invariants of a presentation"),
        ("enumerate", cmd_enumerate, "Todd-Coxeter enumeration of a presentation"),
    ):
        p = sub.add_parser(name, parents=[common], help=what)
        p.add_argument("presentation", help='"< a, b | a^2, b^3 >", a file name, or - for stdin')
        p.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.ERROR, format="%(levelname)s %(name)s: %(message)s")
    if args.max_cosets is not None and args.max_cosets < 1:
        print("error: --max-cosets must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
