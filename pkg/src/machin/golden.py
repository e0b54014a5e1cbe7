"""Two-term identities pi/4 = a atan(phi^kappa) + b atan(phi^ell).

All exact work happens in Q(i, sqrt5) (:class:`QuarticNum`).  With
a = u/w, b = v/w the identity implies

    (1 + i phi^kappa)^(4u) (1 + i phi^ell)^(4v) = (1 - i phi^kappa)^(4u) (1 - i phi^ell)^(4v),

which fixes a*atan(phi^kappa) + b*atan(phi^ell) modulo pi/(4w); an enclosure
narrower than that pins the value to pi/4.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Set, Tuple

from .exact import (ArithmeticInconsistency, Enclosure, QuarticNum, atan_interval,
                    format_rat, parse_rat, quartic_norm, sqrt_enclosure)
from .pi_engine import pi_enclosure

F = Fraction


def fib_lucas(k: int) -> Tuple[int, int]:
    """(F_k, L_k) for any integer k."""
    n = abs(k)
    f0, f1 = 0, 1
    for _ in range(n):
        f0, f1 = f1, f0 + f1
    fk = f0
    lk = f0 + 2 * (f1 - f0) if n else 2     # L_n = F_{n-1} + F_{n+1} = 2F_{n+1} - F_n
    if k < 0:
        fk = fk if n % 2 else -fk            # F_{-n} = (-1)^(n+1) F_n
        lk = lk if n % 2 == 0 else -lk       # L_{-n} = (-1)^n L_n
    return fk, lk


def phi_power(k: int) -> QuarticNum:
    """phi^k = (L_k + F_k sqrt5) / 2."""
    fk, lk = fib_lucas(k)
    return QuarticNum(F(lk, 2), F(fk, 2))


def phi_power_enclosure(k: int, width) -> Enclosure:
    fk, lk = fib_lucas(k)
    width = F(width)
    s5 = sqrt_enclosure(5, width / (abs(fk) + 1))
    return (s5 * F(fk, 2)) + F(lk, 2)


@dataclass(frozen=True)
class GoldenQuadruple:
    a: Fraction
    b: Fraction
    kappa: int
    ell: int

    def __post_init__(self):
        object.__setattr__(self, "a", F(self.a))
        object.__setattr__(self, "b", F(self.b))
        if self.kappa == 0 or self.ell == 0:
            raise ValueError("kappa and ell must be nonzero")

    def __str__(self):
        return f"{format_rat(self.a)} {format_rat(self.b)} {self.kappa} {self.ell}"


def parse_quadruple(text: str) -> GoldenQuadruple:
    parts = text.split()
    if len(parts) != 4:
        raise ValueError("expected 'a b kappa ell'")
    return GoldenQuadruple(parse_rat(parts[0]), parse_rat(parts[1]), int(parts[2]), int(parts[3]))


def _uvw(q: GoldenQuadruple) -> Tuple[int, int, int]:
    w = lcm(q.a.denominator, q.b.denominator)
    return int(q.a * w), int(q.b * w), w


def golden_stage1(q: GoldenQuadruple) -> bool:
    u, v, _ = _uvw(q)
    one = QuarticNum(1)
    i = QuarticNum(0, 0, 1)
    pk, pl = phi_power(q.kappa), phi_power(q.ell)
    lhs = (one + i * pk) ** (4 * u) * (one + i * pl) ** (4 * v)
    rhs = (one - i * pk) ** (4 * u) * (one - i * pl) ** (4 * v)
    return lhs == rhs


def golden_enclosure(q: GoldenQuadruple, width) -> Enclosure:
    """Enclosure of a atan(phi^kappa) + b atan(phi^ell) - pi/4."""
    width = F(width)
    share = width / 3
    acc = Enclosure.point(0)
    for coef, k in ((q.a, q.kappa), (q.b, q.ell)):
        if coef == 0:
            continue
        eps = share / abs(coef) / 2
        x = phi_power_enclosure(k, eps / 2)
        acc = acc + atan_interval(x, eps) * coef
    d = 1
    while F(1, 10 ** d) > share * 4:
        d += 1
    return acc - pi_enclosure(d) / 4


def verify_golden(q: GoldenQuadruple) -> bool:
    """Exact check of the Q(i, sqrt5) identity plus branch pinning."""
    _, _, w = _uvw(q)
    if not golden_stage1(q):
        return False
    # Stage 1 leaves a multiple of pi/(4w); pi/(4w) > 3/(4w)
    enc = golden_enclosure(q, F(1, 2 * w))
    return 0 in enc


SIXTEEN = (
    (F(1, 3), F(1, 3), 3, 1), (1, 1, -3, -1), (-1, 1, -3, 1), (1, -1, 3, -1),
    (F(1, 5), F(2, 5), 6, 2), (1, 2, -6, -2), (F(-1, 3), F(2, 3), -6, 2), (1, -2, 6, -2),
    (F(1, 7), F(3, 7), 5, 3), (1, 3, -5, -3), (F(-1, 5), F(3, 5), -5, 3), (1, -3, 5, -3),
    (F(-1, 2), F(3, 2), 5, 1), (F(-1, 2), F(3, 2), -5, -1), (F(1, 4), F(3, 4), -5, 1),
    (F(1, 4), F(3, 4), 5, -1),
)


def sixteen_quadruples() -> List[GoldenQuadruple]:
    return [GoldenQuadruple(*t) for t in SIXTEEN]


def golden_norm(kappa: int) -> int:
    """N(1 + i phi^kappa) over Q(i, sqrt5)."""
    if kappa < 1:
        raise ValueError("kappa must be >= 1")
    n = quartic_norm(QuarticNum(1) + QuarticNum(0, 0, 1) * phi_power(kappa))
    if n.denominator != 1:
        raise ArithmeticInconsistency(f"non-integral norm {n}")
    return int(n)


def odd_prime_factors(n: int) -> Set[int]:
    n = abs(n)
    while n and n % 2 == 0:
        n //= 2
    out = set()
    p = 3
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 2
    if n > 1:
        out.add(n)
    return out


def golden_search(max_k: int = 12) -> List[Tuple[int, int]]:
    """Pairs 1 <= ell < kappa <= max_k whose norms share their odd prime factors."""
    if max_k < 2:
        raise ValueError("max_k must be >= 2")
    primes = {k: odd_prime_factors(golden_norm(k)) for k in range(1, max_k + 1)}
    return [(k, l) for k in range(2, max_k + 1) for l in range(1, k)
            if primes[k] == primes[l]]
