"""Decimal fixed-point evaluation of pi from Machin-like formulas.

The module also owns the bootstrapped pi enclosure used everywhere else
(argument reduction in ``atan_enclosure``, branch pinning, convergents).
Machin's 4 atan(1/5) - atan(1/239) = pi/4 is the trusted seed; it is checked
once, exactly, before the first enclosure is handed out.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, log10
from typing import TYPE_CHECKING, List, Sequence, Tuple

from gmpy2 import mpz

from .exact import Enclosure, gi_mul, gi_pow, gregory_scaled, snap

if TYPE_CHECKING:  # pragma: no cover
    from .formula import MachinFormula


@dataclass(frozen=True)
class FixedPoint:
    """mantissa / 10**scale."""

    mantissa: int
    scale: int

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 10 ** self.scale)

    def __str__(self):
        neg = self.mantissa < 0
        s = str(abs(self.mantissa)).rjust(self.scale + 1, "0")
        head, tail = s[: len(s) - self.scale], s[len(s) - self.scale:]
        out = head + ("." + tail if self.scale else "")
        return "-" + out if neg else out


class UnverifiedFormulaError(ValueError):
    pass


def _round_div(a: int, b: int) -> int:
    # nearest integer to a/b, b > 0, ties away from zero
    q, r = divmod(abs(a), b)
    if 2 * r >= b:
        q += 1
    return q if a >= 0 else -q


def gregory_atan_fp(x, digits: int) -> Tuple[FixedPoint, int]:
    """atan(x) to ``digits`` decimals with an error bound in ulps.

    The result is within 1 ulp of atan(x).  The number of summed terms is
    about digits / (2 log10(1/|x|)).
    """
    fp, err, _ = _gregory_fp(Fraction(x), digits)
    return fp, err


def _gregory_fp(x: Fraction, digits: int) -> Tuple[FixedPoint, int, int]:
    if abs(x) >= 1:
        raise ValueError("Gregory series needs |x| < 1")
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if x == 0:
        return FixedPoint(0, digits), 0, 0
    # the accumulated truncation error grows like 5 per term, so the stopping
    # threshold 10**guard/4 has to outgrow the expected term count
    guard = 3 + len(str(int(predicted_terms(x, digits)) + 1))
    while True:
        v, e, terms = gregory_scaled(x.numerator, x.denominator, digits + guard,
                                     stop=10 ** guard // 4, bound="power")
        if 2 * e <= 10 ** guard:
            # rounding adds half an ulp, the series at most another half
            return FixedPoint(_round_div(v, 10 ** guard), digits), 1, terms
        guard += 1


# ---------------------------------------------------------------------------
# bootstrap enclosure
# ---------------------------------------------------------------------------

_SEED_CHECKED = False


def _check_seed() -> None:
    """Exact check of 4 atan(1/5) - atan(1/239) = pi/4.

    Gaussian part: (5+i)^4 (239-i) lies on the ray of 1+i, so the left side is
    pi/4 mod 2pi.  Branch part: 0 < 4 atan(1/5) - atan(1/239) < 4/5 from the
    alternating bounds x - x^3/3 < atan x < x, and the only value congruent to
    pi/4 mod 2pi in that range is pi/4 itself.
    """
    global _SEED_CHECKED
    if _SEED_CHECKED:
        return
    re_, im = gi_mul(gi_pow(5, 1, 4), (mpz(239), mpz(-1)))
    if not (re_ == im and re_ > 0):
        raise AssertionError("seed formula failed its Gaussian check")
    a, b = Fraction(1, 5), Fraction(1, 239)
    lower = 4 * (a - a ** 3 / 3) - b
    upper = 4 * a - (b - b ** 3 / 3)
    # pi/4 in (3/4, 1) and the neighbours pi/4 +- 2pi are far outside [lower, upper]
    if not (0 < lower and upper < Fraction(4, 5)):
        raise AssertionError("seed formula failed its branch check")
    _SEED_CHECKED = True


@lru_cache(maxsize=None)
def pi_enclosure(digits: int) -> Enclosure:
    """Rational enclosure of pi with width <= 10**-digits.

    Enclosures for increasing ``digits`` are nested.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    _check_seed()
    d = digits + 1                     # snap gives width 3e-d <= 1e-digits
    guard = 4
    while True:
        scale = d + 2 + guard
        v1, e1, _ = gregory_scaled(1, 5, scale)
        v2, e2, _ = gregory_scaled(1, 239, scale)
        v, e = 16 * v1 - 4 * v2, 16 * e1 + 4 * e2
        if e <= 10 ** guard:
            return snap(v, e, scale, d)
        guard += 2


# ---------------------------------------------------------------------------
# pi from a verified formula
# ---------------------------------------------------------------------------

def _guard_digits(f: "MachinFormula") -> int:
    total = sum(abs(t.coef.numerator) for t in f.terms) or 1
    return 10 + len(str(total))


def _check_usable(f: "MachinFormula") -> None:
    from .formula import verify

    if f.rhs == 0:
        raise ValueError("rhs is zero; the formula says nothing about pi")
    if any(abs(t.arg) >= 1 for t in f.terms):
        raise ValueError("normalize the formula first: every |arg| must be < 1")
    if not verify(f).valid:
        raise UnverifiedFormulaError("formula does not verify")


def _pi_approx(f: "MachinFormula", scale: int) -> Tuple[Fraction, Fraction, List[int]]:
    """(A, E, terms): |A - 10**scale * pi| <= E."""
    acc = Fraction(0)
    err = Fraction(0)
    counts = []
    for t in f.terms:
        v, e, n = gregory_scaled(t.arg.numerator, t.arg.denominator, scale)
        acc += t.coef * v
        err += abs(t.coef) * e
        counts.append(n)
    return acc / f.rhs, err / abs(f.rhs), counts


def compute_pi(f: "MachinFormula", digits: int) -> str:
    """pi correctly rounded to ``digits`` decimals, e.g. ``3.1`` for digits=1."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    _check_usable(f)
    guard = _guard_digits(f)
    while True:
        scale = digits + guard
        a, e, _ = _pi_approx(f, scale)
        unit = 10 ** guard
        lo = floor((a - e) / unit + Fraction(1, 2))
        hi = floor((a + e) / unit + Fraction(1, 2))
        if lo == hi:
            s = str(int(lo))
            return s[:-digits] + "." + s[-digits:]
        guard *= 2


def term_counts(f: "MachinFormula", digits: int) -> List[int]:
    """Gregory terms per arctangent needed for ``digits`` decimals."""
    return [_gregory_fp(t.arg, digits)[2] for t in f.terms]


def predicted_terms(arg, digits: int) -> float:
    """digits / (2 log10(1/|arg|))."""
    arg = Fraction(arg)
    return digits / (2 * (log10(arg.denominator) - log10(abs(arg.numerator))))


@dataclass
class BenchmarkRow:
    formula: str
    terms: List[int]
    seconds: float

    @property
    def total_terms(self) -> int:
        return sum(self.terms)

    def tsv(self) -> str:
        return "\t".join([self.formula, ",".join(map(str, self.terms)),
                          str(self.total_terms), f"{self.seconds:.4f}"])


def benchmark(fs: Sequence["MachinFormula"], digits: int) -> List[BenchmarkRow]:
    """Time compute_pi for each formula and report per-series term counts."""
    from .formula import print_formula

    rows = []
    for f in fs:
        t0 = time.perf_counter()
        compute_pi(f, digits)
        dt = time.perf_counter() - t0
        rows.append(BenchmarkRow(print_formula(f), term_counts(f, digits), dt))
    return rows
