"""Machin-like formulas: data model, text format, verification, measure.

A formula is  sum_k coef_k * atan(arg_k) = rhs * pi  with rational coef, arg
and rhs.  Verification has two stages:

1. exact: the Gaussian product prod (b_k + i a_k)^(T coef_k) must point along
   the ray of angle T*rhs*pi, which proves the identity modulo 2pi/T;
2. branch: a rational enclosure of LHS - rhs*pi, narrower than 2pi/T, must
   contain 0, which rules out every other multiple of 2pi/T.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, lcm
from typing import Iterable, List, Sequence, Tuple

import gmpy2
from gmpy2 import mpz

from . import pi_engine
from .exact import (ArithmeticInconsistency, Enclosure, atan_enclosure, format_rat,
                    gi_mul, gi_pow, int_from_str)
from .ratfun import PoleError, eval_R


@dataclass(frozen=True)
class ArctanTerm:
    coef: Fraction
    arg: Fraction

    def __str__(self):
        return f"{format_rat(abs(self.coef))}*atan({format_rat(self.arg)})"


@dataclass(frozen=True)
class MachinFormula:
    """Canonical formula; build through :func:`make_formula`."""

    terms: Tuple[ArctanTerm, ...]
    rhs: Fraction

    def __str__(self):
        return print_formula(self)

    @property
    def coefs(self) -> List[Fraction]:
        return [t.coef for t in self.terms]

    @property
    def args(self) -> List[Fraction]:
        return [t.arg for t in self.terms]


def make_formula(terms: Iterable, rhs) -> MachinFormula:
    """Canonical form from (coef, arg) pairs.

    atan is odd, so negative arguments are flipped into the coefficient.
    Equal arguments are merged, zero coefficients and zero arguments dropped,
    and the terms are sorted by argument.
    """
    merged = {}
    for item in terms:
        c, a = (item.coef, item.arg) if isinstance(item, ArctanTerm) else item
        c, a = Fraction(c), Fraction(a)
        if a < 0:
            c, a = -c, -a
        if c == 0 or a == 0:
            continue
        merged[a] = merged.get(a, Fraction(0)) + c
    out = tuple(ArctanTerm(c, a) for a, c in sorted(merged.items()) if c != 0)
    return MachinFormula(out, Fraction(rhs))


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

class FormulaSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<atan>atan)|(?P<pi>pi)|(?P<op>[-+*/()=]))")


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind, value=None):
        k, v, p = self.toks[self.i]
        if k != kind or (value is not None and v != value):
            want = value or kind
            raise FormulaSyntaxError(f"expected {want!r}, found {v or 'end of input'!r}", p)
        self.i += 1
        return v

    def accept(self, kind, value):
        k, v, _ = self.peek()
        if k == kind and v == value:
            self.i += 1
            return True
        return False

    def sign(self) -> int:
        if self.accept("op", "-"):
            return -1
        self.accept("op", "+")
        return 1

    def rat(self, signed: bool = False) -> Fraction:
        s = self.sign() if signed else 1
        num = int_from_str(self.take("num"))
        den = 1
        if self.accept("op", "/"):
            _, _, p = self.peek()
            den = int_from_str(self.take("num"))
            if den == 0:
                raise FormulaSyntaxError("zero denominator", p)
        return s * Fraction(num, den)

    def term(self):
        c = self.rat()
        self.take("op", "*")
        self.take("atan")
        self.take("op", "(")
        a = self.rat(signed=True)
        self.take("op", ")")
        return c, a

    def formula(self):
        terms = []
        s = self.sign()
        c, a = self.term()
        terms.append((s * c, a))
        while self.peek()[1] in ("+", "-"):
            s = self.sign()
            c, a = self.term()
            terms.append((s * c, a))
        self.take("op", "=")
        rhs = self.rat(signed=True)
        self.take("pi")
        self.take("end")
        return terms, rhs


def parse_formula(text: str) -> MachinFormula:
    """Parse e.g. ``4*atan(1/5) - 1*atan(1/239) = 1/4 pi``."""
    terms, rhs = _Parser(text).formula()
    f = make_formula(terms, rhs)
    if not f.terms:
        raise FormulaSyntaxError("all terms cancel", 0)
    return f


def print_formula(f: MachinFormula) -> str:
    parts = []
    for t in f.terms:
        if not parts:
            parts.append(("-" if t.coef < 0 else "") + str(t))
        else:
            parts.append(("- " if t.coef < 0 else "+ ") + str(t))
    lhs = " ".join(parts) if parts else "0"
    return f"{lhs} = {format_rat(f.rhs)} pi"


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    gaussian_ok: bool
    branch_ok: bool
    direction_exponent: int
    enclosure: Enclosure
    reasons: List[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.gaussian_ok and self.branch_ok

    def record(self) -> str:
        b = lambda v: "true" if v else "false"
        return (f"valid={b(self.valid)} gaussian={b(self.gaussian_ok)} "
                f"branch={b(self.branch_ok)} dir={self.direction_exponent}")

    __str__ = record


def period_multiplier(f: MachinFormula) -> int:
    """Least T > 0 with T*coef_k and 4*T*rhs integral."""
    t = (4 * f.rhs).denominator
    for c in f.coefs:
        t = lcm(t, c.denominator)
    return t


def gaussian_direction(f: MachinFormula, t: int) -> Tuple[mpz, mpz]:
    """prod (b + i a)^(t*c) up to a positive rational factor."""
    pos = (mpz(1), mpz(0))
    neg = (mpz(1), mpz(0))
    for term in f.terms:
        e = term.coef * t
        assert e.denominator == 1
        e = int(e)
        a, b = term.arg.numerator, term.arg.denominator
        if e > 0:
            pos = gi_mul(pos, gi_pow(b, a, e))
        else:
            neg = gi_mul(neg, gi_pow(b, a, -e))
    # z^-1 = conj(z)/|z|^2 and the norm is a positive scalar
    return gi_mul(pos, (neg[0], -neg[1]))


def lhs_enclosure(f: MachinFormula, width) -> Enclosure:
    """Enclosure of sum coef*atan(arg) - rhs*pi with width <= ``width``."""
    width = Fraction(width)
    parts = len(f.terms) + (1 if f.rhs else 0)
    if parts == 0:
        return Enclosure.point(0)
    share = width / parts
    acc = Enclosure.point(0)
    for t in f.terms:
        acc = acc + atan_enclosure(t.arg, share / abs(t.coef)) * t.coef
    if f.rhs:
        eps = share / abs(f.rhs)
        d = 1
        while Fraction(1, 10 ** d) > eps:
            d += 1
        acc = acc - pi_engine.pi_enclosure(d) * f.rhs
    return acc


def verify(f: MachinFormula) -> VerificationReport:
    reasons = []
    t = period_multiplier(f)
    e = int(4 * t * f.rhs) % 8
    re_, im = gaussian_direction(f, t)
    # rotate by (1 - i)^e, i.e. by -e*pi/4, up to the factor 2^(e/2)
    for _ in range(e):
        re_, im = re_ + im, im - re_
    gaussian = im == 0 and re_ > 0
    if not gaussian:
        reasons.append("direction")
    if f.rhs.denominator not in (1, 2, 4):
        gaussian = False
        reasons.append("unrepresentable-rhs")
    # Stage 1 fixes LHS - rhs*pi modulo 2pi/T; width 1/(2T) < 2pi/T pins it
    enc = lhs_enclosure(f, Fraction(1, 2 * t))
    two_pi = pi_engine.pi_enclosure(6) * 2
    branch = 0 in enc and -two_pi.lo < enc.lo and enc.hi < two_pi.lo
    if not branch:
        reasons.append("branch")
    return VerificationReport(gaussian, branch, e, enc, reasons)


def is_valid(f: MachinFormula) -> bool:
    return verify(f).valid


# ---------------------------------------------------------------------------
# Lehmer measure
# ---------------------------------------------------------------------------

class MeasureUndefined(ValueError):
    pass


def log10_ratio(q: int, p: int) -> float:
    """log10(q/p) for positive integers, accurate for huge and for close q, p."""
    with gmpy2.context(gmpy2.get_context(), precision=192):
        r = gmpy2.mpfr(mpz(q)) / gmpy2.mpfr(mpz(p))
        return float(gmpy2.log10(r))


def lehmer_measure(f: MachinFormula) -> float:
    """sum_k 1/log10(1/|arg_k|); every |arg| must be < 1."""
    total = 0.0
    for t in f.terms:
        a = abs(t.arg)
        if a >= 1:
            raise MeasureUndefined(f"|arg| = {format_rat(a)} >= 1; normalize first")
        total += 1.0 / log10_ratio(a.denominator, a.numerator)
    return total


def format_measure(mu: float, sig: int = 6) -> str:
    return f"{mu:.{sig}g}"


def lehmer_measure_text(f: MachinFormula, sig: int = 6) -> str:
    """Measure to ``sig`` significant digits; sig > 15 uses multiprecision."""
    if sig <= 15:
        return format_measure(lehmer_measure(f), sig)
    bits = int(sig * 3.33) + 64
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        total = gmpy2.mpfr(0)
        for t in f.terms:
            a = abs(t.arg)
            if a >= 1:
                raise MeasureUndefined(f"|arg| = {format_rat(a)} >= 1; normalize first")
            total += 1 / gmpy2.log10(gmpy2.mpfr(mpz(a.denominator)) / mpz(a.numerator))
        return f"{total:.{sig}g}"


# ---------------------------------------------------------------------------
# transformations
# ---------------------------------------------------------------------------

def normalize_args(f: MachinFormula) -> MachinFormula:
    """Bring every |arg| below 1 using atan(t) = sgn(t) pi/2 - atan(1/t).

    Terms with |arg| = 1 become +-pi/4 and move to the right-hand side.
    """
    terms = []
    rhs = f.rhs
    for t in f.terms:
        a = t.arg
        s = 1 if a > 0 else -1
        if abs(a) < 1:
            terms.append((t.coef, a))
        elif abs(a) == 1:
            rhs -= t.coef * s / 4
        else:
            rhs -= t.coef * s / 2
            terms.append((-t.coef, 1 / a))
    return make_formula(terms, rhs)


def unmeasurable_terms(f: MachinFormula) -> List[ArctanTerm]:
    """Terms whose measure summand is undefined (|arg| >= 1)."""
    return [t for t in f.terms if abs(t.arg) >= 1]


def split_term(f: MachinFormula, k: int) -> MachinFormula:
    """Replace c*atan(x) by 2c*atan(2x) - c*atan(4x^3 + 3x)."""
    if not 0 <= k < len(f.terms):
        raise IndexError(f"term index {k} out of range 0..{len(f.terms) - 1}")
    t = f.terms[k]
    x, c = t.arg, t.coef
    rest = [(s.coef, s.arg) for i, s in enumerate(f.terms) if i != k]
    rest += [(2 * c, 2 * x), (-c, 4 * x ** 3 + 3 * x)]
    return make_formula(rest, f.rhs)


# ---------------------------------------------------------------------------
# formulas from R_j
# ---------------------------------------------------------------------------

def _rat_gcd(values: Sequence[Fraction]) -> Fraction:
    g_num, l_den = 0, 1
    for v in values:
        if v:
            g_num = int(gmpy2.gcd(g_num, v.numerator))
            l_den = lcm(l_den, v.denominator)
    return Fraction(g_num, l_den) if g_num else Fraction(0)


def theorem2_eval(spec: Sequence[Tuple], x) -> Tuple[MachinFormula, Fraction]:
    """Build sum (r_k/n_k) atan(R_{j_k}(n_k, x)) = rhs*pi and pin rhs.

    ``spec`` holds (r_k, j_k, n_k) with sum r_k = 0.  The left side is
    constant between poles and is a multiple of h = gcd(r_k / (4 n_k)), so an
    enclosure narrower than h*pi identifies it.
    """
    x = Fraction(x)
    spec = [(Fraction(r), int(j), int(n)) for r, j, n in spec]
    if sum(r for r, _, _ in spec) != 0:
        raise ValueError("the r_k must sum to zero")
    if any(n < 1 for _, _, n in spec):
        raise ValueError("n_k must be positive")
    terms = []
    for r, j, n in spec:
        v = eval_R(j, n, x)
        if v.is_pole:
            raise PoleError(f"x = {format_rat(x)} is a pole of R_{j}({n}, x)")
        terms.append((r / n, v.value))
    f0 = make_formula(terms, 0)
    h = _rat_gcd([r / (4 * n) for r, _, n in spec])
    if h == 0 or not f0.terms:
        f = f0
    else:
        # |LHS/pi - k h| with width < h leaves one candidate; pi > 3
        enc = lhs_enclosure(f0, 3 * h / 4)
        pi = pi_engine.pi_enclosure(4)
        lo = enc.lo / (pi.hi if enc.lo >= 0 else pi.lo)
        hi = enc.hi / (pi.lo if enc.hi >= 0 else pi.hi)
        ks = range(ceil(lo / h), floor(hi / h) + 1)
        if len(ks) != 1:
            raise ArithmeticInconsistency("branch pinning did not isolate rhs")
        f = make_formula(terms, ks[0] * h)
    if not verify(f).valid:
        raise ArithmeticInconsistency("constructed formula failed verification")
    return f, f.rhs
