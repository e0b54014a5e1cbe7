"""The rational functions R_j(n, x) = tan(n*atan(x) + j*pi/4), j = 0..3.

With numer_n and denom_n the odd/even parts of the binomial expansion of
(1 + i x)^n,

    R_0 = numer/denom           R_1 = (denom + numer)/(denom - numer)
    R_2 = -denom/numer          R_3 = (numer - denom)/(numer + denom)

Values are returned as :class:`RjValue`, which is either a finite rational
or a pole (the defining denominator vanished).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence, Tuple

import gmpy2
from gmpy2 import mpz

from .exact import ArithmeticInconsistency, format_rat, gi_pow, make_rat, make_rat_2adic

STRATEGIES = ("poly", "binpow", "pow2chain")


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial; ``coeffs[k]`` multiplies x**k."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(a) for a in c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __neg__(self):
        return IntPolynomial(tuple(-a for a in self.coeffs))

    def __add__(self, other: "IntPolynomial"):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other: "IntPolynomial"):
        return self + (-other)

    def content(self) -> int:
        g = 0
        for a in self.coeffs:
            g = gmpy2.gcd(g, a)
        return int(g)

    def homogeneous(self, p: int, q: int, degree: int) -> mpz:
        """q**degree * P(p/q), an exact integer when degree >= self.degree."""
        acc = mpz(0)
        for k, a in enumerate(self.coeffs):
            if a:
                acc += a * mpz(p) ** k * mpz(q) ** (degree - k)
        return acc

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        d = max(self.degree, 0)
        return make_rat(self.homogeneous(x.numerator, x.denominator, d),
                        mpz(x.denominator) ** d)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[k]
            if a == 0:
                continue
            mag = abs(a)
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            body = str(mag) if (mag != 1 or k == 0) else ""
            if body and mono:
                body += "*"
            term = body + mono
            if not parts:
                parts.append(("-" if a < 0 else "") + term)
            else:
                parts.append(("- " if a < 0 else "+ ") + term)
        return " ".join(parts)


@dataclass(frozen=True)
class RjValue:
    """Finite rational value, or ``value is None`` for a pole."""

    value: Optional[Fraction]

    @property
    def is_pole(self) -> bool:
        return self.value is None

    @classmethod
    def pole(cls) -> "RjValue":
        return cls(None)

    def __str__(self):
        if self.value is None:
            return "pole"
        return format_rat(self.value)


class PoleError(ValueError):
    """Evaluation hit a root of a defining denominator."""


def numer_poly(n: int) -> IntPolynomial:
    if n < 0:
        raise ValueError("n must be >= 0")
    c = [0] * (n + 1)
    for r in range((n - 1) // 2 + 1):
        c[2 * r + 1] = (-1) ** r * comb(n, 2 * r + 1)
    return IntPolynomial(tuple(c))


def denom_poly(n: int) -> IntPolynomial:
    if n < 0:
        raise ValueError("n must be >= 0")
    c = [0] * (n + 1)
    for r in range(n // 2 + 1):
        c[2 * r] = (-1) ** r * comb(n, 2 * r)
    return IntPolynomial(tuple(c))


def _combine(j: int, num: mpz, den: mpz) -> RjValue:
    """R_j from the scaled numer/denom values."""
    if num == 0 and den == 0:
        raise ArithmeticInconsistency("numer and denom vanish together")
    if j == 0:
        top, bot = num, den
    elif j == 1:
        top, bot = den + num, den - num
    elif j == 2:
        top, bot = -den, num
    elif j == 3:
        top, bot = num - den, num + den
    else:
        raise ValueError(f"j must be in 0..3, got {j}")
    if bot == 0:
        return RjValue.pole()
    # num + i*den is a power of a primitive Gaussian integer, so no odd
    # rational prime divides both; only a power of two can cancel
    return RjValue(make_rat_2adic(top, bot))


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def rj_pair(n: int, x) -> Tuple[mpz, mpz]:
    """(numer, denom) of R_0(n, x) scaled by q**n: the imaginary and real
    parts of (q + i p)**n for x = p/q."""
    x = Fraction(x)
    re_, im = gi_pow(x.denominator, x.numerator, n)
    return im, re_


def _pow2_pair(m: int, x: Fraction) -> Tuple[mpz, mpz]:
    # projective chain t -> 2t/(1 - t^2); (a:b) -> (2ab : b^2 - a^2)
    a, b = mpz(x.numerator), mpz(x.denominator)
    for _ in range(m):
        a, b = 2 * a * b, (b - a) * (b + a)
        # gcd(a, b) = 1 on entry, so the only common factor is a single 2
        if not (a & 1) and not (b & 1):
            a >>= 1
            b >>= 1
    return a, b


def eval_R(j: int, n: int, x, strategy: str = "binpow") -> RjValue:
    """Evaluate R_j(n, x) exactly.

    ``poly`` uses the explicit binomial polynomials, ``binpow`` the Gaussian
    power (1 + i x)^n by repeated squaring, ``pow2chain`` the composition
    R_j(2^m, x) = R_j(2, R_0(2, ...R_0(2, x))) (n must be a power of two).
    """
    if j not in (0, 1, 2, 3):
        raise ValueError(f"j must be in 0..3, got {j}")
    if n < 0:
        raise ValueError("negative n is not supported")
    x = Fraction(x)
    if strategy == "poly":
        num = numer_poly(n).homogeneous(x.numerator, x.denominator, n)
        den = denom_poly(n).homogeneous(x.numerator, x.denominator, n)
    elif strategy == "binpow":
        num, den = rj_pair(n, x)
    elif strategy == "pow2chain":
        if not _is_power_of_two(n):
            raise ValueError(f"pow2chain needs n a power of two, got {n}")
        # (a:b) represents R_0(n, x); R_0(n, x) = num/den projectively
        num, den = _pow2_pair(n.bit_length() - 1, x)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return _combine(j, num, den)


def rj_value(j: int, n: int, x, strategy: str = "binpow") -> Fraction:
    """Like :func:`eval_R` but raises :class:`PoleError` at a pole."""
    v = eval_R(j, n, x, strategy)
    if v.is_pole:
        raise PoleError(f"R_{j}({n}, {x}) is a pole")
    return v.value


def rj_display(j: int, n: int) -> Tuple[IntPolynomial, IntPolynomial]:
    """(numerator, denominator) polynomials of R_j(n, x), content-reduced with
    the denominator's leading coefficient positive."""
    if j not in (0, 1, 2, 3):
        raise ValueError(f"j must be in 0..3, got {j}")
    if n < 0:
        raise ValueError("n must be >= 0")
    num, den = numer_poly(n), denom_poly(n)
    if j == 0:
        top, bot = num, den
    elif j == 1:
        top, bot = den + num, den - num
    elif j == 2:
        if n == 0:
            raise ValueError("R_2(0, x) is undefined")
        top, bot = -den, num
    else:
        top, bot = num - den, num + den
    g = int(gmpy2.gcd(top.content(), bot.content())) or 1
    top = IntPolynomial(tuple(a // g for a in top.coeffs))
    bot = IntPolynomial(tuple(a // g for a in bot.coeffs))
    if bot.coeffs[-1] < 0:
        top, bot = -top, -bot
    return top, bot


def format_rj(pair: Sequence[IntPolynomial]) -> str:
    top, bot = pair
    return f"({top})/({bot})"
