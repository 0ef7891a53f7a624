"""``czlab`` command line: evaluate expressions, run checks, query topologies.

Exit codes: 0 success, 1 a check failed, 2 usage or input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import core, topologies, verify
from .expr import ExprError, evaluate, format_value
from .element import Element
from .regions import Box, Region, ResourceCapError, max_points

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
DEFAULT_WINDOW = "-8..8,-8..8"


class UsageError(Exception):
    pass


def _element(text: str) -> Element:
    try:
        v = evaluate(text)
    except ExprError as exc:
        raise UsageError(f"bad element {text!r}: {exc}") from None
    if not isinstance(v, Element):
        raise UsageError(f"{text!r} is not an element")
    return v


def _window(text: str) -> Box:
    try:
        return Box.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _coerce(raw: str, default):
    if isinstance(default, bool):
        if raw.lower() in ("1", "true", "yes"):
            return True
        if raw.lower() in ("0", "false", "no"):
            return False
        raise ValueError(f"expected a boolean, got {raw!r}")
    if isinstance(default, int):
        return int(raw, 0)
    return raw


def _parse_params(items: list[str], check_id: str | None) -> dict[str, dict]:
    """``k=v`` for a single check; ``check.k=v`` when running the whole suite."""
    out: dict[str, dict] = {}
    for item in items:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise UsageError(f"malformed parameter {item!r}; expected k=v")
        cid, dot, name = key.rpartition(".")
        if not dot:
            if check_id is None:
                raise UsageError(f"parameter {item!r} needs a check prefix, e.g. axioms.window=4")
            cid = check_id
        if cid not in verify.CHECKS:
            raise UsageError(f"unknown check {cid!r}")
        defaults = verify.CHECKS[cid][1]
        if name not in defaults:
            known = ", ".join(defaults) or "none"
            raise UsageError(f"check {cid!r} has no parameter {name!r} (known: {known})")
        try:
            out.setdefault(cid, {})[name] = _coerce(raw, defaults[name])
        except ValueError as exc:
            raise UsageError(f"parameter {item!r}: {exc}") from None
    return out


# --- subcommands ---------------------------------------------------------------


def cmd_eval(args) -> int:
    try:
        value = evaluate(args.expr)
    except ExprError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    pts = None
    if args.window is not None:
        if not isinstance(value, Region):
            raise UsageError("--window applies to region values only")
        box = _window(args.window)
        pts = value.enumerate(box)
    print(format_value(value))
    if pts is not None:
        print(f"{len(pts)} point(s) in {box}:")
        if pts:
            print(" ".join(str(p) for p in pts))
    return EXIT_OK


def cmd_check(args) -> int:
    name = args.name
    if name != "all" and name not in verify.CHECKS:
        raise UsageError(f"unknown check {name!r}; known: all, {', '.join(verify.CHECKS)}")
    params = _parse_params(args.params or [], None if name == "all" else name)
    if name == "all":
        config = verify.SuiteConfig(seed=args.seed, jobs=args.jobs, mutate=args.mutate, params=params)
        reports = verify.run_all(config)
    else:
        reports = [verify.run_check(name, params.get(name), seed=args.seed, mutate=args.mutate)]
    quiet = args.json == "-"
    for r in reports if not quiet else ():
        print(r.line())
    counts = verify.summarize(reports)
    if not quiet:
        print(", ".join(f"{v} {k}" for k, v in counts.items()))
    if args.json:
        doc = verify.report_document(reports, args.seed, timing=not args.no_timing)
        text = json.dumps(doc, indent=2) + "\n"
        if args.json == "-":
            sys.stdout.write(text)
        else:
            Path(args.json).write_text(text, encoding="utf-8")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_isolated(args) -> int:
    fam = _family(args.family)
    box = _window(args.window)
    if box.size > max_points():
        raise ResourceCapError(f"window {box} has {box.size} points, cap is {max_points()}")
    pts = topologies.isolated_in_window(fam, box)
    print(f"{len(pts)} isolated point(s) of {fam.name} in {box}")
    if pts:
        print(" ".join(str(p) for p in pts))
    return EXIT_OK


def _family(name: str):
    try:
        return topologies.get_family(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_witness(args) -> int:
    fam = _family(args.family)
    try:
        side = topologies.Side.parse(args.side)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    verdict = topologies.shift_continuity(fam, side, _element(args.by), _element(args.at), args.k)
    print(verdict)
    return EXIT_OK


def cmd_solve(args) -> int:
    target = _element(args.target)
    if args.left and args.right:
        sol = core.solve_two_sided(_element(args.left), _element(args.right), target)
    elif args.right:
        sol = core.solve_right(_element(args.right), target)
    elif args.left:
        sol = core.solve_left(_element(args.left), target)
    else:
        raise UsageError("solve needs --left, --right or both")
    print(sol)
    return EXIT_OK


# --- entry point --------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="czlab", description="Exact computations in the semigroup Z x Z.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate an expression")
    e.add_argument("expr")
    e.add_argument("--window", nargs="?", const=DEFAULT_WINDOW, default=None,
                   help=f"also list points in XLO..XHI,YLO..YHI (default {DEFAULT_WINDOW})")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("check", help="run a named check or 'all'")
    c.add_argument("name")
    c.add_argument("--params", nargs="*", metavar="K=V")
    c.add_argument("--json", metavar="PATH", help="write a JSON report ('-' for stdout)")
    c.add_argument("--seed", type=lambda s: int(s, 0), default=verify.DEFAULT_SEED)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--no-timing", action="store_true", help="write elapsed_ms as 0")
    c.add_argument("--mutate", action="store_true", help="use a corrupted product (self-test)")
    c.set_defaults(func=cmd_check)

    i = sub.add_parser("isolated", help="list isolated points in a window")
    i.add_argument("family")
    i.add_argument("--window", required=True)
    i.set_defaults(func=cmd_isolated)

    w = sub.add_parser("witness", help="continuity verdicts with certificates")
    wsub = w.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    ws = wsub.add_parser("shift", help="continuity of a shift at a point")
    ws.add_argument("family")
    ws.add_argument("side")
    ws.add_argument("--at", required=True)
    ws.add_argument("--by", required=True)
    ws.add_argument("--k", type=int, default=6)
    ws.set_defaults(func=cmd_witness)

    s = sub.add_parser("solve", help="solve l*z*r = t, z*r = t or l*z = t")
    s.add_argument("--left")
    s.add_argument("--right")
    s.add_argument("--target", required=True)
    s.set_defaults(func=cmd_solve)
    return p


_WINDOW_VALUE = re.compile(r"^-?\d+\.\.")


def _glue_windows(argv: list[str]) -> list[str]:
    # argparse would read "-2..2,-2..2" as an option
    out, k = [], 0
    while k < len(argv):
        if argv[k] == "--window" and k + 1 < len(argv) and _WINDOW_VALUE.match(argv[k + 1]):
            out.append(f"--window={argv[k + 1]}")
            k += 2
            continue
        out.append(argv[k])
        k += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _glue_windows(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
