"""Constructors for Machin-like identities of small Lehmer measure.

Two families are built from continued-fraction convergents:

* ``theorem3_formula(k)``:  p_k atan(1/(4 q_k)) - atan(R_3(p_k, 1/(4 q_k))) = pi/4
  with p_k/q_k the k-th convergent of pi;
* ``pow2_formula(m, c)``:  2^m atan(x) - atan(R_3(2^m, x)) = pi/4 with x one of
  the first convergents of pi/2^(m+2).

The second argument has hundreds of millions of digits for the largest rows.
Rows whose argument stays below ``materialize_limit`` digits are built and
verified exactly.  Beyond that the row is certified by interval arithmetic:
with theta = atan(x) and delta = n*theta - pi/4,

    R_3(n, x) = tan(delta),   b_2 = (p^2 + q^2)^(n/2) sqrt(2) |cos delta| / g

where g = 2^ceil(n/2) if p and q are both odd and g = 1 otherwise (the only
common factor of the two components of a primitive Gaussian power).  The
identity holds whenever the enclosure of delta lies in (-pi/2, pi/2).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, lcm, log10
from typing import Callable, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from .exact import Enclosure, atan_enclosure, format_rat, num_digits
from .formula import (MachinFormula, format_measure, lehmer_measure, log10_ratio,
                      make_formula, theorem2_eval, verify)
from .pi_engine import pi_enclosure
from .ratfun import PoleError, eval_R

LADDER = (64, 256, 1024, 4096, 16384)
MATERIALIZE_LIMIT = 8_000_000


class InsufficientPrecision(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# continued fractions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Convergent:
    p: int
    q: int
    index: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self):
        return format_rat(self.value)


def partial_quotients(x: Fraction, limit: Optional[int] = None) -> List[int]:
    """Continued fraction of a rational (floor convention)."""
    x = Fraction(x)
    p, q = x.numerator, x.denominator
    out = []
    while q and (limit is None or len(out) < limit):
        a, r = divmod(p, q)
        out.append(a)
        p, q = q, r
    return out


def convergents_from_quotients(cs: Sequence[int]) -> List[Convergent]:
    out = []
    p0, q0, p1, q1 = 1, 0, 0, 1
    for i, c in enumerate(cs):
        p0, q0, p1, q1 = c * p0 + p1, c * q0 + q1, p0, q0
        out.append(Convergent(p0, q0, i))
    return out


def convergents_of(x, count: int) -> List[Convergent]:
    """The first ``count`` convergents of any real in the enclosure ``x``.

    The set of reals sharing the partial quotients c_0..c_k is an interval,
    so a prefix common to both endpoints is shared by every point between
    them.  An exact rational yields at most its own (finite) expansion.
    """
    x = Enclosure.coerce(x)
    lo = partial_quotients(x.lo, count)
    if x.lo == x.hi:
        cs = lo
    else:
        hi = partial_quotients(x.hi, count)
        cs = []
        for i in range(count):
            if i >= len(lo) or i >= len(hi) or lo[i] != hi[i]:
                raise InsufficientPrecision(
                    f"partial quotient {i} is not determined by the enclosure")
            cs.append(lo[i])
    out = convergents_from_quotients(cs)
    for c in out:
        v = c.value
        if max(abs(x.lo - v), abs(x.hi - v)) * c.q * c.q > 1:
            raise InsufficientPrecision(f"convergent {c.index} fails |x - p/q| <= 1/q^2")
    return out


def certified_convergents(target: Callable[[int], Enclosure], count: int,
                          ladder: Sequence[int] = LADDER) -> List[Convergent]:
    """Retry :func:`convergents_of` on enclosures of increasing precision."""
    last = None
    for digits in ladder:
        try:
            return convergents_of(target(digits), count)
        except InsufficientPrecision as e:
            last = e
    raise InsufficientPrecision(f"precision ladder exhausted: {last}")


def pi_convergents(count: int) -> List[Convergent]:
    return certified_convergents(pi_enclosure, count)


def pow2_target(m: int) -> Callable[[int], Enclosure]:
    return lambda d: pi_enclosure(d) * Fraction(1, 2 ** (m + 2))


# ---------------------------------------------------------------------------
# rows
# ---------------------------------------------------------------------------

@dataclass
class GeneratedRow:
    """n atan(x) - atan(a2/b2) = rhs*pi, plus the Table columns.

    ``formula`` is None for rows certified by the interval route.
    """

    n: int
    x: Fraction
    a2_digits: int
    b2_digits: int
    a2b2_approx: float
    measure: float
    formula: Optional[MachinFormula]
    route: str = "exact"
    label: str = ""

    def tsv(self, sig: int = 6) -> str:
        return "\t".join([self.label, format_rat(self.x), str(self.n),
                          str(self.a2_digits), str(self.b2_digits),
                          f"{self.a2b2_approx:.{sig}g}", format_measure(self.measure, sig)])


class GenerationError(ArithmeticError):
    pass


def estimated_digits(n: int, x: Fraction) -> float:
    """Rough decimal size of the R_3(n, x) denominator."""
    return n / 2 * log10(x.numerator ** 2 + x.denominator ** 2)


def _exact_row(n: int, x: Fraction, strategy: str, label: str) -> GeneratedRow:
    v = eval_R(3, n, x, strategy)
    if v.is_pole:
        raise GenerationError(f"R_3({n}, {x}) is a pole")
    a2b2 = v.value
    f = make_formula([(n, x), (-1, a2b2)], Fraction(1, 4))
    rep = verify(f)
    if not rep.valid:
        raise GenerationError(f"row {label} failed verification: {rep}")
    return GeneratedRow(n, x, num_digits(a2b2.numerator), num_digits(a2b2.denominator),
                        float(a2b2), lehmer_measure(f), f, "exact", label)


def _iv(enc: Enclosure):
    iv = mpmath.iv
    lo = iv.mpf(enc.lo.numerator) / iv.mpf(enc.lo.denominator)
    hi = iv.mpf(enc.hi.numerator) / iv.mpf(enc.hi.denominator)
    return iv.mpf([lo.a, hi.b])


def _certified_floor(v) -> int:
    lo, hi = floor(v.a), floor(v.b)
    if lo != hi:
        raise InsufficientPrecision("digit count not determined")
    return int(lo)


def interval_row(n: int, x: Fraction, label: str = "", prec_bits: int = 512) -> GeneratedRow:
    """Certify the row without building R_3(n, x); see the module docstring."""
    x = Fraction(x)
    p, q = x.numerator, x.denominator
    if not 0 < x < 1:
        raise ValueError("interval route needs 0 < x < 1")
    width = Fraction(1, 10 ** (len(str(n)) + 40))
    theta = atan_enclosure(x, width / n)
    pi = pi_enclosure(len(str(n)) + 44)
    delta = theta * n - pi / 4
    half_pi = pi / 2
    if not (-half_pi.lo < delta.lo and delta.hi < half_pi.lo):
        raise GenerationError(f"row {label}: n*atan(x) - pi/4 outside (-pi/2, pi/2)")
    iv = mpmath.iv
    old = iv.prec
    iv.prec = prec_bits
    try:
        d = _iv(delta)
        t = iv.tan(d)
        if t.a <= 0 <= t.b:
            raise GenerationError("tan(delta) not separated from 0")
        log_b = (iv.mpf(n) / 2 * iv.log10(iv.mpf(p * p + q * q))
                 + iv.log10(iv.sqrt(iv.mpf(2)) * iv.cos(d)))
        if p % 2 and q % 2:
            log_b -= iv.mpf((n + 1) // 2) * iv.log10(iv.mpf(2))
        log_a = log_b + iv.log10(abs(t))
        b_digits = _certified_floor(log_b) + 1
        a_digits = _certified_floor(log_a) + 1
        approx = float(t.mid.a)
        ta = abs(t)
        mu1 = 1.0 / log10_ratio(q, p)
        mu2 = 1.0 / float((-iv.log10(ta)).mid.a)
    finally:
        iv.prec = old
    return GeneratedRow(n, x, a_digits, b_digits, approx, mu1 + mu2, None, "interval", label)


def _row(n: int, x: Fraction, strategy: str, label: str, limit: int) -> GeneratedRow:
    if estimated_digits(n, x) <= limit:
        return _exact_row(n, x, strategy, label)
    return interval_row(n, x, label)


def theorem3_formula(k: int, materialize_limit: int = MATERIALIZE_LIMIT) -> GeneratedRow:
    """p_k atan(1/(4 q_k)) - atan(R_3(p_k, 1/(4 q_k))) = pi/4."""
    if k < 1:
        raise ValueError("k must be >= 1")
    c = pi_convergents(k + 1)[k]
    return _row(c.p, Fraction(1, 4 * c.q), "binpow", str(k), materialize_limit)


def pow2_convergents(m: int, count: int = 3) -> List[Fraction]:
    """First ``count`` nonzero convergents of pi / 2^(m+2)."""
    cs = certified_convergents(pow2_target(m), count + 1)
    out = [c.value for c in cs if c.p != 0]
    return out[:count]


def pow2_formula(m: int, conv_index: int,
                 materialize_limit: int = MATERIALIZE_LIMIT) -> GeneratedRow:
    """2^m atan(x) - atan(R_3(2^m, x)) = pi/4, x the conv_index-th nonzero
    convergent of pi/2^(m+2)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if not 1 <= conv_index <= 3:
        raise ValueError("conv_index must be 1, 2 or 3")
    x = pow2_convergents(m, 3)[conv_index - 1]
    return _row(2 ** m, x, "pow2chain", f"{m}.{conv_index}", materialize_limit)


def table1(k_max: int = 15, materialize_limit: int = MATERIALIZE_LIMIT) -> List[GeneratedRow]:
    return [theorem3_formula(k, materialize_limit) for k in range(1, k_max + 1)]


TABLE2_M = (5, 6, 7, 8, 9, 10, 20, 21, 24, 25, 26, 29, 30)


def table2(ms: Sequence[int] = TABLE2_M,
           materialize_limit: int = MATERIALIZE_LIMIT) -> List[GeneratedRow]:
    rows = []
    for m in ms:
        for c in (1, 2, 3):
            rows.append(pow2_formula(m, c, materialize_limit))
    return rows


TABLE_HEADER = "k\tp/q\ta1/b1\ta2_digits\tb2_digits\ta2b2_approx\tmu"


def table1_tsv(rows: Sequence[GeneratedRow]) -> List[str]:
    out = [TABLE_HEADER]
    for r in rows:
        out.append("\t".join([r.label, f"{r.n}/{r.x.denominator // 4}",
                              format_rat(r.x), str(r.a2_digits), str(r.b2_digits),
                              f"{r.a2b2_approx:.6g}", format_measure(r.measure)]))
    return out


def table2_tsv(rows: Sequence[GeneratedRow]) -> List[str]:
    out = ["m\tn\tx\ta2_digits\tb2_digits\ta2b2_approx\tmu"]
    for r in rows:
        out.append("\t".join([r.label.split(".")[0], str(r.n), format_rat(r.x),
                              str(r.a2_digits), str(r.b2_digits),
                              f"{r.a2b2_approx:.6g}", format_measure(r.measure)]))
    return out


# ---------------------------------------------------------------------------
# two-term search
# ---------------------------------------------------------------------------

def _float_R(j: int, n: int, xs: np.ndarray) -> np.ndarray:
    return np.tan(n * np.arctan(xs) + j * np.pi / 4)


def _bisect_root(j: int, n: int, a: Fraction, b: Fraction, steps: int = 120):
    """Exact bisection of a sign change of R_j(n, .) on [a, b].

    Returns the final bracket, or None when the sign change is a pole.
    """
    def val(t):
        v = eval_R(j, n, t)
        return None if v.is_pole else v.value

    fa, fb = val(a), val(b)
    if fa is None or fb is None or fa * fb > 0:
        return None
    for _ in range(steps):
        mid = (a + b) / 2
        fm = val(mid)
        if fm is None:
            return None
        if fm == 0:
            return Enclosure.point(mid)
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b, fb = mid, fm
    if abs(fa) > 1 or abs(fb) > 1:    # pole: values blow up at the bracket
        return None
    return Enclosure(a, b)


def search_two_term(j: int, i: int, n: int, m: int, eps: float,
                    lo, hi, step, max_height: int = 10 ** 6) -> List[GeneratedRow]:
    """Look for x with |R_j(n,x)| < eps and |R_i(m,x)| < eps.

    Roots of either function on the grid are refined by exact bisection; the
    convergents of each root (denominators up to ``max_height``) are the
    candidate x.  Each candidate becomes
    r/n atan(R_j(n,x)) - r/m atan(R_i(m,x)) = rhs*pi with r = lcm(n, m);
    rows with rhs = 0 are dropped.
    """
    if eps <= 0:
        return []
    lo, hi, step = Fraction(lo), Fraction(hi), Fraction(step)
    count = int((hi - lo) / step) + 1
    grid = [lo + k * step for k in range(count)]
    xs = np.array([float(g) for g in grid])
    brackets = []
    with np.errstate(all="ignore"):
        for jj, nn in ((j, n), (i, m)):
            ys = _float_R(jj, nn, xs)
            s = np.sign(ys)
            for k in np.nonzero(s[:-1] * s[1:] <= 0)[0]:
                brackets.append((jj, nn, grid[k], grid[k + 1]))
    candidates = set()
    for jj, nn, a, b in brackets:
        root = _bisect_root(jj, nn, a, b)
        if root is None:
            continue
        cs = partial_quotients(root.lo, 40)
        chi = partial_quotients(root.hi, 40)
        prefix = []
        for u, v in zip(cs, chi):
            if u != v:
                break
            prefix.append(u)
        for c in convergents_from_quotients(prefix):
            if c.p != 0 and c.q <= max_height:
                candidates.add(c.value)
    r = lcm(n, m)
    rows = []
    for x in sorted(candidates):
        try:
            vj, vi = eval_R(j, n, x), eval_R(i, m, x)
        except PoleError:
            continue
        if vj.is_pole or vi.is_pole:
            continue
        if not (abs(vj.value) < eps and abs(vi.value) < eps):
            continue
        f, rhs = theorem2_eval([(r, j, n), (-r, i, m)], x)
        if rhs == 0 or not f.terms:
            continue
        a2b2 = vi.value
        try:
            mu = lehmer_measure(f)
        except ValueError:
            continue
        rows.append(GeneratedRow(m, x, num_digits(a2b2.numerator),
                                 num_digits(a2b2.denominator), float(a2b2), mu, f,
                                 "exact", format_rat(x)))
    return rows
