"""Exact arithmetic kernel.

Rationals are :class:`fractions.Fraction`.  Gaussian rationals, elements of
Q(i, sqrt 5) and rational enclosures are small immutable dataclasses built on
top of them.  Heavy integer work (Gaussian powers with million-digit parts,
gcds of such integers) is delegated to GMP through ``gmpy2``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

import gmpy2
from gmpy2 import mpz

Rat = Fraction
RatLike = Union[Fraction, int]


# ---------------------------------------------------------------------------
# rationals
# ---------------------------------------------------------------------------

_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rat(text: str) -> Fraction:
    """Parse ``p/q`` or ``p``."""
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"not a rational: {text!r}")
    num = int_from_str(m.group(1))
    den = int_from_str(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def int_to_str(n: int) -> str:
    # Python refuses str(int) past 4300 digits; GMP has no such limit
    return str(mpz(n))


def int_from_str(text: str) -> int:
    return int(mpz(text))


def format_rat(x: RatLike) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return int_to_str(x.numerator)
    return f"{int_to_str(x.numerator)}/{int_to_str(x.denominator)}"


def make_rat(num, den) -> Fraction:
    """Build a reduced Fraction from (possibly huge, possibly mpz) integers.

    Uses GMP's subquadratic gcd; Fraction's own normalisation goes through
    ``math.gcd`` which is quadratic and unusable past ~10^5 digits.
    """
    num, den = mpz(num), mpz(den)
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        num, den = -num, -den
    g = gmpy2.gcd(num, den)
    if g != 1:
        num //= g
        den //= g
    f = object.__new__(Fraction)
    f._numerator = int(num)
    f._denominator = int(den)
    return f


def make_rat_2adic(num, den) -> Fraction:
    """Like :func:`make_rat` when gcd(num, den) is known to be a power of two.

    Removing the common power of two is linear time, which matters for the
    multi-million-digit quotients of Gaussian powers.
    """
    num, den = mpz(num), mpz(den)
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        num, den = -num, -den
    if num == 0:
        return Fraction(0)
    k = min(gmpy2.bit_scan1(num), gmpy2.bit_scan1(den))
    if k:
        num >>= k
        den >>= k
    f = object.__new__(Fraction)
    f._numerator = int(num)
    f._denominator = int(den)
    return f


def num_digits(n) -> int:
    """Number of decimal digits of |n| (0 has one digit)."""
    n = abs(mpz(n))
    if n == 0:
        return 1
    d = gmpy2.num_digits(n, 10)
    # gmpy2 may overshoot by one in non-power-of-two bases
    if n < mpz(10) ** (d - 1):
        d -= 1
    return int(d)


# ---------------------------------------------------------------------------
# Gaussian integers / rationals
# ---------------------------------------------------------------------------

def gi_mul(a: Tuple, b: Tuple) -> Tuple:
    ar, ai = a
    br, bi = b
    return ar * br - ai * bi, ar * bi + ai * br


def gi_pow(re_: int, im: int, n: int) -> Tuple[mpz, mpz]:
    """(re + i*im)**n for integers and n >= 0, by repeated squaring in GMP."""
    if n < 0:
        raise ValueError("negative exponent on a Gaussian integer")
    base = (mpz(re_), mpz(im))
    acc = (mpz(1), mpz(0))
    while n:
        if n & 1:
            acc = gi_mul(acc, base)
        n >>= 1
        if n:
            br, bi = base
            base = ((br - bi) * (br + bi), 2 * br * bi)
    return acc


@dataclass(frozen=True)
class GaussRat:
    """Element re + i*im of Q[i]."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, z) -> "GaussRat":
        if isinstance(z, GaussRat):
            return z
        return cls(Fraction(z), Fraction(0))

    def __add__(self, other):
        o = GaussRat.coerce(other)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussRat.coerce(other))

    def __rsub__(self, other):
        return GaussRat.coerce(other) - self

    def __mul__(self, other):
        o = GaussRat.coerce(other)
        return GaussRat(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussRat.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conj()
        return GaussRat(num.re / n, num.im / n)

    def __pow__(self, n: int):
        return gauss_pow(self, n)

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __str__(self):
        return format_gauss(self)


_GAUSS_RE = re.compile(
    r"^(?P<re>[+-]?\d+(?:/\d+)?)?(?:(?P<sign>[+-])?(?P<im>\d+(?:/\d+)?)?(?P<i>i))?$")


def parse_gauss(text: str) -> GaussRat:
    """Parse ``a+bi`` (also ``a``, ``bi``, ``a-i``)."""
    m = _GAUSS_RE.match(text.replace(" ", ""))
    if not m or not (m.group("re") or m.group("i")):
        raise ValueError(f"not a Gaussian rational: {text!r}")
    if m.group("i") and m.group("sign") is None:
        if m.group("im") is not None:
            raise ValueError(f"not a Gaussian rational: {text!r}")
        # "3i", "-2/3i": the leading number is the imaginary coefficient
        return GaussRat(0, parse_rat(m.group("re")) if m.group("re") else 1)
    real = parse_rat(m.group("re")) if m.group("re") else Fraction(0)
    imag = Fraction(0)
    if m.group("i"):
        imag = parse_rat(m.group("im")) if m.group("im") else Fraction(1)
        if m.group("sign") == "-":
            imag = -imag
    return GaussRat(real, imag)


def format_gauss(z: GaussRat) -> str:
    sign = "-" if z.im < 0 else "+"
    return f"{format_rat(z.re)}{sign}{format_rat(abs(z.im))}i"


def gauss_pow(z: GaussRat, n: int) -> GaussRat:
    """z**n by binary exponentiation; negative n goes through conj(z)/norm(z)."""
    if n < 0:
        if z.is_zero():
            raise ZeroDivisionError("zero Gaussian base with negative exponent")
        nrm = z.norm()
        w = gauss_pow(z.conj(), -n)
        scale = nrm ** (-n)
        return GaussRat(w.re / scale, w.im / scale)
    # clear denominators, power in GMP, then divide back
    d = z.re.denominator * z.im.denominator // gmpy2.gcd(z.re.denominator, z.im.denominator)
    a = z.re.numerator * (d // z.re.denominator)
    b = z.im.numerator * (d // z.im.denominator)
    pr, pi = gi_pow(a, b, n)
    dn = mpz(d) ** n
    return GaussRat(make_rat(pr, dn), make_rat(pi, dn))


# ---------------------------------------------------------------------------
# Q(i, sqrt5)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuarticNum:
    """c1 + c5*sqrt5 + ci*i + ci5*i*sqrt5."""

    c1: Fraction = Fraction(0)
    c5: Fraction = Fraction(0)
    ci: Fraction = Fraction(0)
    ci5: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("c1", "c5", "ci", "ci5"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def coerce(cls, q) -> "QuarticNum":
        if isinstance(q, QuarticNum):
            return q
        return cls(Fraction(q))

    def coords(self):
        return (self.c1, self.c5, self.ci, self.ci5)

    def __add__(self, other):
        o = QuarticNum.coerce(other)
        return QuarticNum(*(x + y for x, y in zip(self.coords(), o.coords())))

    __radd__ = __add__

    def __neg__(self):
        return QuarticNum(*(-x for x in self.coords()))

    def __sub__(self, other):
        return self + (-QuarticNum.coerce(other))

    def __rsub__(self, other):
        return QuarticNum.coerce(other) - self

    def __mul__(self, other):
        o = QuarticNum.coerce(other)
        a, b, c, d = self.coords()
        e, f, g, h = o.coords()
        # sqrt5^2 = 5, i^2 = -1, (i sqrt5)^2 = -5, sqrt5*i*sqrt5 = 5i, i*i*sqrt5 = -sqrt5
        return QuarticNum(
            a * e + 5 * b * f - c * g - 5 * d * h,
            a * f + b * e - c * h - d * g,
            a * g + c * e + 5 * b * h + 5 * d * f,
            a * h + d * e + b * g + c * f,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * QuarticNum.coerce(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        acc, base = QuarticNum(1), self
        while n:
            if n & 1:
                acc = acc * base
            n >>= 1
            if n:
                base = base * base
        return acc

    def conj_i(self) -> "QuarticNum":
        return quartic_conj_i(self)

    def conj_5(self) -> "QuarticNum":
        return QuarticNum(self.c1, -self.c5, self.ci, -self.ci5)

    def norm(self) -> Fraction:
        return quartic_norm(self)

    def inverse(self) -> "QuarticNum":
        n = quartic_norm(self)
        if n == 0:
            raise ZeroDivisionError("zero has no inverse")
        others = self.conj_i() * self.conj_5() * self.conj_i().conj_5()
        return QuarticNum(*(x / n for x in others.coords()))

    def is_rational(self) -> bool:
        return self.c5 == 0 and self.ci == 0 and self.ci5 == 0

    def is_real(self) -> bool:
        return self.ci == 0 and self.ci5 == 0

    def __str__(self):
        c1, c5, ci, ci5 = (format_rat(x) for x in self.coords())
        return f"{c1} + {c5}*sqrt5 + {ci}*i + {ci5}*i*sqrt5"


def quartic_conj_i(q: QuarticNum) -> QuarticNum:
    return QuarticNum(q.c1, q.c5, -q.ci, -q.ci5)


class ArithmeticInconsistency(RuntimeError):
    """An identity that must hold by construction failed."""


def quartic_norm(q: QuarticNum) -> Fraction:
    """Product of q with its three conjugates over Q."""
    p = q * q.conj_i() * q.conj_5() * q.conj_i().conj_5()
    if not p.is_rational():
        raise ArithmeticInconsistency(f"norm with irrational part: {p}")
    return p.c1


# ---------------------------------------------------------------------------
# enclosures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Enclosure:
    """Closed rational interval [lo, hi]."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty enclosure [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x: RatLike) -> "Enclosure":
        return cls(Fraction(x), Fraction(x))

    @classmethod
    def coerce(cls, x) -> "Enclosure":
        return x if isinstance(x, Enclosure) else cls.point(x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        if isinstance(x, Enclosure):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def issubset(self, other: "Enclosure") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def __add__(self, other):
        o = Enclosure.coerce(other)
        return Enclosure(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-Enclosure.coerce(other))

    def __rsub__(self, other):
        return Enclosure.coerce(other) - self

    def __mul__(self, other):
        o = Enclosure.coerce(other)
        prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Enclosure(min(prods), max(prods))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Enclosure.coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("enclosure divisor contains zero")
        return self * Enclosure(1 / o.hi, 1 / o.lo)

    def __str__(self):
        return f"[{float(self.lo):.17g}, {float(self.hi):.17g}]"


# ---------------------------------------------------------------------------
# arctangent series kernel
# ---------------------------------------------------------------------------

def gregory_scaled(p: int, q: int, scale: int, stop: int = 3,
                   bound: str = "term") -> Tuple[int, int, int]:
    """Fixed-point Gregory series for atan(p/q), |p| < q.

    Returns ``(V, E, terms)`` with |V - 10**scale * atan(p/q)| <= E.
    Terms are added until the alternating remainder bound drops to
    ``stop`` ulps (at least 3, which is reached once the power underflows).
    With ``bound="power"`` the stopping test ignores the 1/(2m+1) factor,
    which sums a few more terms but makes the count track
    scale / (2 log10(1/|x|)) closely.
    All intermediate truncations round toward zero, so the computed powers
    never exceed the true ones.
    """
    stop = max(stop, 3)
    if q <= 0 or abs(p) >= q:
        raise ValueError("gregory_scaled needs |p/q| < 1 with q > 0")
    if p == 0:
        return 0, 0, 0
    sign = -1 if p < 0 else 1
    p = abs(p)
    one = mpz(10) ** scale
    x = mpz(p) * one // q             # err < 1
    x2 = x * x // one                 # err < 4
    power = x                         # err of power m <= 5m + 1
    total = mpz(0)
    m = 0
    while True:
        rem = -(-(power + 5 * m + 1) // (2 * m + 1))
        test = power + 5 * m + 1 if bound == "power" else rem
        if test <= stop or power == 0:
            break
        t = power // (2 * m + 1)
        total = total - t if m & 1 else total + t
        m += 1
        power = power * x2 // one
    err = 4 * m + 1 + rem
    return int(sign * total), int(err), m


def snap(value: int, err: int, scale: int, digits: int) -> Enclosure:
    """Turn an approximation into a nest-compatible enclosure of width <= 3e-digits.

    Requires err / 10**scale <= 10**-(digits + 2).  Enclosures produced this way
    for increasing ``digits`` are nested.
    """
    shift = scale - digits
    if shift < 2 or err > 10 ** (shift - 2):
        raise ValueError("approximation too coarse to snap")
    unit = mpz(10) ** shift
    fl = mpz(value) // unit               # floor(10^d A)
    ce = -((-mpz(value)) // unit)         # ceil(10^d A)
    den = 10 ** digits
    return Enclosure(Fraction(int(fl) - 1, den), Fraction(int(ce) + 1, den))


def digits_for_width(eps: RatLike, factor: int = 3) -> int:
    """Smallest d >= 1 with factor * 10**-d <= eps."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    d = 1
    while factor * eps.denominator > eps.numerator * 10 ** d:
        d += 1
    return d


def _atan_small(x: Fraction, digits: int) -> Enclosure:
    # |x| < 1; approximation good to 10^-(digits+2)
    p, q = x.numerator, x.denominator
    guard = 3
    while True:
        scale = digits + 2 + guard
        v, e, _ = gregory_scaled(p, q, scale)
        if e <= 10 ** guard:
            return snap(v, e, scale, digits)
        guard += 2


def atan_enclosure(x: RatLike, eps: RatLike) -> Enclosure:
    """Rational enclosure of atan(x) with width <= eps.

    For |x| >= 1 the argument is reduced with atan(x) = sgn(x) pi/2 - atan(1/x),
    using the bootstrapped pi enclosure.
    """
    x = Fraction(x)
    if x == 0:
        return Enclosure.point(0)
    digits = digits_for_width(Fraction(eps), 3)
    if abs(x) < 1:
        return _atan_small(x, digits)
    from .pi_engine import pi_enclosure

    half = Fraction(eps) / 2
    pi = pi_enclosure(digits_for_width(half, 2))
    sgn = 1 if x > 0 else -1
    if abs(x) == 1:
        return pi * Fraction(sgn, 4)
    return pi * Fraction(sgn, 2) - atan_enclosure(1 / x, half)


def atan_interval(x: Enclosure, eps: RatLike) -> Enclosure:
    """Enclosure of atan over an interval (atan is increasing)."""
    half = Fraction(eps) / 2
    return Enclosure(atan_enclosure(x.lo, half).lo, atan_enclosure(x.hi, half).hi)


def sqrt_enclosure(n: RatLike, width: RatLike) -> Enclosure:
    """Bisection enclosure of sqrt(n), n >= 0, to the given width."""
    n, width = Fraction(n), Fraction(width)
    if n < 0:
        raise ValueError("negative radicand")
    lo, hi = Fraction(0), max(Fraction(1), n)
    # start from a coarse integer bracket so bisection stays short
    r = gmpy2.isqrt(mpz(n.numerator * n.denominator))
    lo = max(lo, Fraction(int(r), n.denominator))
    hi = min(hi, Fraction(int(r) + 1, n.denominator))
    while hi - lo > width:
        mid = (lo + hi) / 2
        if mid * mid <= n:
            lo = mid
        else:
            hi = mid
    return Enclosure(lo, hi)
