"""Command-line front end.

    machin verify --formula '4*atan(1/5) - 1*atan(1/239) = 1/4 pi'
    machin measure --formula '...' [--precision 20]
    machin table1 --k-max 15
    machin golden --search --max-k 12
    machin pi --formula '...' --digits 1000

Exit status: 0 on success, 1 when a formula fails verification, 2 on usage
errors (bad flags, unparsable formulas or rationals).
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import catalog, generator, golden, pi_engine
from .exact import format_rat, parse_rat
from .formula import (FormulaSyntaxError, MeasureUndefined, lehmer_measure,
                      lehmer_measure_text, normalize_args, parse_formula,
                      print_formula, split_term, verify)
from .ratfun import PoleError, eval_R, format_rj, rj_display

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _formula(text: str):
    try:
        return parse_formula(text)
    except FormulaSyntaxError as e:
        raise UsageError(f"cannot parse formula: {e}") from None


def _rat(text: str) -> Fraction:
    try:
        return parse_rat(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _range(text: str):
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError("range must look like LO:HI")
    lo, hi = _rat(lo), _rat(hi)
    if lo >= hi:
        raise argparse.ArgumentTypeError("range needs LO < HI")
    return lo, hi


def _int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, output lines)
# ---------------------------------------------------------------------------

def cmd_verify(args):
    f = _formula(args.formula)
    rep = verify(f)
    lines = [rep.record()]
    lines += [f"reason: {r}" for r in rep.reasons]
    return (EXIT_OK if rep.valid else EXIT_INVALID), lines


def cmd_measure(args):
    f = _formula(args.formula)
    if args.normalize:
        f = normalize_args(f)
    if not verify(f).valid:
        return EXIT_INVALID, ["invalid formula"]
    try:
        return EXIT_OK, [lehmer_measure_text(f, args.precision)]
    except MeasureUndefined as e:
        raise UsageError(str(e)) from None


def cmd_normalize(args):
    f = normalize_args(_formula(args.formula))
    return (EXIT_OK if verify(f).valid else EXIT_INVALID), [print_formula(f)]


def cmd_split(args):
    f = _formula(args.formula)
    try:
        g = split_term(f, args.index)
    except IndexError as e:
        raise UsageError(str(e)) from None
    return (EXIT_OK if verify(g).valid else EXIT_INVALID), [print_formula(g)]


def cmd_table1(args):
    if args.k_max < 1:
        raise UsageError("--k-max must be >= 1")
    return EXIT_OK, generator.table1_tsv(generator.table1(args.k_max))


def cmd_table2(args):
    ms = args.m_list if args.m_list else list(generator.TABLE2_M)
    if any(m < 0 for m in ms):
        raise UsageError("--m-list entries must be >= 0")
    return EXIT_OK, generator.table2_tsv(generator.table2(ms))


def cmd_search(args):
    lo, hi = args.range
    if args.step <= 0:
        raise UsageError("--step must be positive")
    if (hi - lo) / args.step > 10 ** 6:
        raise UsageError("grid too fine (more than 10^6 points)")
    rows = generator.search_two_term(args.j, args.i, args.n, args.m, args.eps,
                                     lo, hi, args.step)
    lines = ["x\tn\tm\ta2_digits\tb2_digits\ta2b2_approx\tmu\tformula"]
    for r in rows:
        lines.append("\t".join([format_rat(r.x), str(args.n), str(r.n),
                                str(r.a2_digits), str(r.b2_digits),
                                f"{r.a2b2_approx:.6g}", f"{r.measure:.6g}",
                                print_formula(r.formula)]))
    return EXIT_OK, lines


def cmd_catalog(args):
    lines = []
    if args.brute_force:
        rep = catalog.brute_force_report()
        for s in sorted(rep.hits):
            tag = "family" if catalog.in_parametric_family(s) else "sporadic"
            lines.append(f"{s}\t{tag}\t{print_formula(s.to_formula())}")
        lines.append(f"# candidates checked: {rep.candidates_checked}")
        return EXIT_OK, lines
    for name, f in catalog.catalog_entries():
        lines.append(f"{name}\t{print_formula(f)}\t{lehmer_measure(f):.6g}")
    return EXIT_OK, lines


def cmd_golden(args):
    if args.verify is not None:
        try:
            q = golden.parse_quadruple(args.verify)
        except (ValueError, ZeroDivisionError) as e:
            raise UsageError(str(e)) from None
        ok = golden.verify_golden(q)
        return (EXIT_OK if ok else EXIT_INVALID), [f"{q}\t{'valid' if ok else 'invalid'}"]
    if args.search:
        if args.max_k < 2:
            raise UsageError("--max-k must be >= 2")
        return EXIT_OK, [f"{k}\t{l}" for k, l in golden.golden_search(args.max_k)]
    lines = ["a\tb\tkappa\tell\tvalid"]
    for q in golden.sixteen_quadruples():
        lines.append("\t".join(str(q).split() + [str(golden.verify_golden(q)).lower()]))
    return EXIT_OK, lines


def cmd_pi(args):
    if args.digits < 1:
        raise UsageError("--digits must be >= 1")
    texts = args.formula or [catalog.NAMED["machin"]]
    fs = [_formula(t) for t in texts]
    for f in fs:
        if not verify(f).valid:
            return EXIT_INVALID, [f"invalid formula: {print_formula(f)}"]
    if args.benchmark:
        lines = ["formula\tterms\ttotal_terms\tseconds"]
        lines += [r.tsv() for r in pi_engine.benchmark(fs, args.digits)]
        return EXIT_OK, lines
    try:
        return EXIT_OK, [pi_engine.compute_pi(fs[0], args.digits)]
    except pi_engine.UnverifiedFormulaError as e:
        raise UsageError(str(e)) from None


def cmd_rj(args):
    if args.j not in (0, 1, 2, 3):
        raise UsageError("--j must be 0..3")
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    if args.x is None:
        try:
            return EXIT_OK, [format_rj(rj_display(args.j, args.n))]
        except ValueError as e:
            raise UsageError(str(e)) from None
    try:
        return EXIT_OK, [str(eval_R(args.j, args.n, args.x))]
    except PoleError:
        return EXIT_OK, ["pole"]


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", metavar="FILE",
                        help="write output to FILE instead of stdout")

    p = argparse.ArgumentParser(prog="machin", description="Machin-like arctangent identities for pi.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("verify", cmd_verify, "verify a formula exactly")
    sp.add_argument("--formula", required=True)

    sp = add("measure", cmd_measure, "Lehmer measure of a formula")
    sp.add_argument("--formula", required=True)
    sp.add_argument("--precision", type=int, default=6, help="significant digits (default 6)")
    sp.add_argument("--normalize", action="store_true", help="fold |arg| >= 1 first")

    sp = add("normalize", cmd_normalize, "bring every |arg| below 1")
    sp.add_argument("--formula", required=True)

    sp = add("split", cmd_split, "split one term via the double-angle rule")
    sp.add_argument("--formula", required=True)
    sp.add_argument("--index", type=int, default=0, help="0-based term index")

    sp = add("table1", cmd_table1, "pi/4 convergent table (TSV)")
    sp.add_argument("--k-max", type=int, default=15)

    sp = add("table2", cmd_table2, "pi/2^(m+2) convergent table (TSV)")
    sp.add_argument("--m-list", type=_int_list, default=None, help="e.g. '5,6,7'")

    sp = add("search", cmd_search, "grid search for two-term identities")
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--range", type=_range, required=True, metavar="LO:HI")
    sp.add_argument("--step", type=_rat, required=True)

    sp = add("catalog", cmd_catalog, "built-in formula corpus")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true", help="list the corpus (default)")
    g.add_argument("--brute-force", action="store_true", help="run the power-of-two census")

    sp = add("golden", cmd_golden, "identities in powers of the golden section")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--table", action="store_true", help="verify the sixteen quadruples (default)")
    g.add_argument("--search", action="store_true")
    g.add_argument("--verify", metavar="'a b kappa ell'")
    sp.add_argument("--max-k", type=int, default=12)

    sp = add("pi", cmd_pi, "digits of pi from a verified formula")
    sp.add_argument("--formula", action="append",
                    help="formula text (repeatable with --benchmark; default Machin)")
    sp.add_argument("--digits", type=int, default=100)
    sp.add_argument("--benchmark", action="store_true")

    sp = add("rj", cmd_rj, "R_j(n, x) polynomials or values")
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--x", type=_rat, default=None)
    return p


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        code, lines = args.func(args)
    except UsageError as e:
        print(f"machin {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    text = "".join(line + "\n" for line in lines)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
