"""Command-line front end: ``genwitt <command> [args] [--n N] [--m m1,..]``.

Exit codes: 0 success, 1 mathematical failure (a check found a violation or
a bounded search came up empty), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .algebra import AlgebraConfig, FunctionElement, bracket
from .derivations import NotADerivation, decompose, format_table, integrate, parse_table, verify_derivation
from .ideals import SearchExhausted, ad_diag_check, ideal_closure, lemma1_multiplier
from .scalars import as_rational, format_rational
from .structure import Box, decompose as homogeneous_parts, lex_cmp, lp, string_number
from .syntax import ElementSyntaxError, format_element, parse_basis, parse_element, parse_function

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class MathFailure(Exception):
    pass


def _slopes(text: str) -> list:
    out = []
    for part in text.split(","):
        try:
            q = as_rational(part)
        except (ValueError, ZeroDivisionError) as err:
            raise argparse.ArgumentTypeError(str(err)) from None
        if q == 0:
            raise argparse.ArgumentTypeError("slope 0 is not allowed: g_p(a) = m_p*a must be injective")
        out.append(q)
    return out


def _box(text: str) -> Box:
    try:
        a, i = (int(x) for x in text.split(","))
        return Box(a, i)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A,I with nonnegative integers, got {text!r}") from None


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=1, help="rank n (default 1)")
    common.add_argument("--m", type=_slopes, default=None, help="comma-separated nonzero slopes m_p (default all 1)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="genwitt", description="Exact computations in W(g_p,n).")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, *elements):
        p = sub.add_parser(name, parents=[common], help=help_text)
        for e in elements:
            p.add_argument(e)
        return p

    add("bracket", "bracket of two elements", "x", "y")
    add("grade", "homogeneous components of an element", "x")
    add("cmp", "lexicographic comparison of two basis elements", "x", "y")
    add("st", "string number (count of distinct degrees)", "x")
    add("lp", "largest lower index in the support", "x")
    add("lemma1", "multiplier making all lower indices positive", "x")
    p = add("ideal-witness", "closure of the ideal generated by x inside a box", "x")
    p.add_argument("--mbox", type=_box, default=Box(2, 2))
    p.add_argument("--rbox", type=_box, default=Box(4, 4))
    p.add_argument("--max-iter", type=int, default=20)
    p = add("ad-diag", "basis element m with [x, m] not proportional to m", "x")
    p.add_argument("--box", type=_box, default=Box(2, 1))
    add("integrate", "antiderivative of a function element, e.g. '(1|2) + (0|1)'", "f")
    p = add("verify-derivation", "check a derivation table ('-' reads stdin)", "file")
    p.add_argument("--window", type=_box, default=None)
    p = add("decompose", "split a derivation table into inner, ad_d and scalar parts", "file")
    p.add_argument("--window", type=_box, default=None)
    p = sub.add_parser("selftest", parents=[common], help="run the property suites")
    p.add_argument("--count", type=int, default=100, help="samples per randomized suite")
    return parser


def _config(args) -> AlgebraConfig:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    slopes = args.m
    if slopes is not None and len(slopes) != args.n:
        raise UsageError(f"--m gives {len(slopes)} slope(s) but --n is {args.n}")
    return AlgebraConfig(args.n, slopes)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err.strerror}") from None


def _rank_one(cfg: AlgebraConfig) -> None:
    if cfg.n != 1:
        raise UsageError("derivation commands work on W(g,1)_+ only; use --n 1")


def run(args, out) -> int:
    cfg = _config(args)
    cmd = args.command
    n = cfg.n

    if cmd == "bracket":
        x, y = parse_element(args.x, n), parse_element(args.y, n)
        print(format_element(bracket(cfg, x, y)), file=out)
    elif cmd == "grade":
        parts = homogeneous_parts(parse_element(args.x, n))
        if not parts:
            print("0", file=out)
        for deg, comp in parts:
            print(f"({','.join(map(str, deg))}): {format_element(comp)}", file=out)
    elif cmd == "cmp":
        c = lex_cmp(parse_basis(args.x, n), parse_basis(args.y, n))
        print({-1: "<", 0: "=", 1: ">"}[c], file=out)
    elif cmd == "st":
        print(string_number(parse_element(args.x, n)), file=out)
    elif cmd == "lp":
        x = parse_element(args.x, n)
        if not x:
            raise UsageError("lp is undefined for 0")
        print(lp(x), file=out)
    elif cmd == "lemma1":
        x = parse_element(args.x, n)
        if not x:
            raise UsageError("lemma1 needs a nonzero element")
        try:
            M, result = lemma1_multiplier(cfg, x)
        except SearchExhausted as err:
            raise MathFailure(str(err)) from None
        print(f"multiplier: {M}", file=out)
        print(f"result: {format_element(result)}", file=out)
    elif cmd == "ideal-witness":
        x = parse_element(args.x, n)
        if not x:
            raise UsageError("ideal-witness needs a nonzero generator")
        report = ideal_closure(cfg, x, args.mbox, args.rbox, args.max_iter)
        print(report.summary(), file=out)
        if not report.saturated:
            raise MathFailure("not every target was reached; try larger boxes or more iterations")
    elif cmd == "ad-diag":
        x = parse_element(args.x, n)
        if not x:
            raise UsageError("ad-diag needs a nonzero element")
        m = ad_diag_check(cfg, x, args.box)
        if m is None:
            raise MathFailure(f"every basis element of Box({args.box.upper},{args.box.lower}) is an eigenvector")
        print(m, file=out)
    elif cmd == "integrate":
        _rank_one(cfg)
        f = parse_function(args.f, n)
        print(format_element(integrate(cfg, f)), file=out)
    elif cmd == "verify-derivation":
        _rank_one(cfg)
        D = parse_table(_read(args.file), args.window)
        bad = verify_derivation(cfg, D)
        for b1, b2 in bad:
            print(f"violation: D[{b1}, {b2}] != [D {b1}, {b2}] + [{b1}, D {b2}]", file=out)
        if bad:
            raise MathFailure(f"{len(bad)} violation(s)")
        print(f"ok: derivation on Box({D.window.upper},{D.window.lower})", file=out)
    elif cmd == "decompose":
        _rank_one(cfg)
        D = parse_table(_read(args.file), args.window)
        try:
            dec = decompose(cfg, D)
        except NotADerivation as err:
            if err.decomposition is not None:
                for b in err.decomposition.residual:
                    print(f"residual: {b}", file=out)
            raise MathFailure(str(err)) from None
        print(f"G: {format_element(dec.G)}", file=out)
        print(f"c: {format_rational(dec.c)}", file=out)
        print(f"s: {format_rational(dec.s)}", file=out)
    elif cmd == "selftest":
        from .checks import selftest

        results = selftest(args.seed, n, args.count)
        for r in results:
            print(r.line(timing=False), file=out)
        failed = [r for r in results if not r.ok]
        print(f"{len(results) - len(failed)}/{len(results)} suites passed", file=out)
        if failed:
            raise MathFailure(", ".join(r.name for r in failed) + " failed")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return run(args, sys.stdout)
    except ElementSyntaxError as err:
        print(f"genwitt: syntax error at {err}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as err:
        print(f"genwitt: {err}", file=sys.stderr)
        return EXIT_USAGE
    except MathFailure as err:
        print(f"genwitt: {err}", file=sys.stderr)
        return EXIT_MATH
    except (ValueError, IndexError) as err:
        print(f"genwitt: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
