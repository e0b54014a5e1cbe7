"""Exact construction, verification and use of Machin-like arctangent formulas."""
from __future__ import annotations

from .exact import Enclosure, GaussRat, QuarticNum, format_rat, parse_rat
from .formula import (ArctanTerm, MachinFormula, VerificationReport, lehmer_measure,
                      make_formula, normalize_args, parse_formula, print_formula,
                      split_term, theorem2_eval, verify)
from .ratfun import RjValue, eval_R, rj_display
from .pi_engine import compute_pi, pi_enclosure

__version__ = "0.1.0"

__all__ = [
    "ArctanTerm", "Enclosure", "GaussRat", "MachinFormula", "QuarticNum", "RjValue",
    "VerificationReport", "compute_pi", "eval_R", "format_rat", "lehmer_measure",
    "make_formula", "normalize_args", "parse_formula", "parse_rat", "pi_enclosure",
    "print_formula", "rj_display", "split_term", "theorem2_eval", "verify",
]
