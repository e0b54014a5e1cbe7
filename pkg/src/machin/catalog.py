"""Built-in corpus of verified formulas and the two-term power-of-two census.

Two-term identities  x1 atan(z1) + x2 atan(z2) = pi/4  with z_k in (0, 1) of
the form 2^a/b or b/2^a fall into ten sporadic solutions and two parametric
families.  :func:`brute_force_theorem1` re-derives the sporadic list by
enumerating the finite parameter ranges and verifying every candidate.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Set, Tuple

from .exact import atan_enclosure, format_rat
from .formula import MachinFormula, make_formula, parse_formula, theorem2_eval, verify
from .pi_engine import pi_enclosure

F = Fraction


@dataclass(frozen=True, order=True)
class PowerTwoSolution:
    x1: Fraction
    z1: Fraction
    x2: Fraction
    z2: Fraction

    def to_formula(self) -> MachinFormula:
        return make_formula([(self.x1, self.z1), (self.x2, self.z2)], F(1, 4))

    def __str__(self):
        return "(" + ", ".join(format_rat(v) for v in (self.x1, self.z1, self.x2, self.z2)) + ")"


def _sol(x1, z1, x2, z2) -> PowerTwoSolution:
    return PowerTwoSolution(F(x1), F(z1), F(x2), F(z2))


SPORADIC = (
    _sol(-1, F(1, 239), 4, F(1, 5)),
    _sol(-1, F(1, 7), 2, F(1, 2)),
    _sol(-1, F(2, 11), F(3, 2), F(3, 4)),
    _sol(-1, F(2, 11), 3, F(1, 3)),
    _sol(F(1, 3), F(1, 239), F(4, 3), F(2, 3)),
    _sol(F(1, 2), F(2, 11), F(3, 2), F(1, 2)),
    _sol(1, F(1, 41), 2, F(2, 5)),
    _sol(1, F(1, 7), 2, F(1, 3)),
    _sol(1, F(1, 2), F(1, 2), F(3, 4)),
    _sol(3, F(1, 7), 2, F(2, 11)),
)


def sporadic_solutions() -> List[PowerTwoSolution]:
    return list(SPORADIC)


def parametric_family(which: int, a: int) -> PowerTwoSolution:
    """Family 1: (1, 1/(2^(a+1)+1), 1, 2^a/(2^a+1)); family 2:
    (1, 1/(2^(a+1)-1), 1, (2^a-1)/2^a)."""
    if which == 1:
        if a < 0:
            raise ValueError("family 1 needs a >= 0")
        return _sol(1, F(1, 2 ** (a + 1) + 1), 1, F(2 ** a, 2 ** a + 1))
    if which == 2:
        if a < 1:
            raise ValueError("family 2 needs a >= 1 (z2 vanishes at a = 0)")
        return _sol(1, F(1, 2 ** (a + 1) - 1), 1, F(2 ** a - 1, 2 ** a))
    raise ValueError("which must be 1 or 2")


def in_parametric_family(s: PowerTwoSolution) -> bool:
    if s.x1 != 1 or s.x2 != 1 or s.z1.numerator != 1:
        return False
    b = s.z1.denominator
    for which, a2 in ((1, b - 1), (2, b + 1)):
        # 2^(a+1) = b -+ 1
        if a2 >= 2 and a2 & (a2 - 1) == 0:
            a = a2.bit_length() - 2
            try:
                if parametric_family(which, a) == s:
                    return True
            except ValueError:
                pass
    return False


# ---------------------------------------------------------------------------
# brute force over the finite ranges
# ---------------------------------------------------------------------------

B_RANGE = (1, 2, 3, 5, 7, 11, 41, 239)
A_RANGE = (0, 1, 2)
U_MAX = 4
D_RANGE = (1, 2, 3, 4, 6)
C_MAX = 24


def admissible_z() -> List[Fraction]:
    """Values 2^a/b and b/2^a in (0, 1); b odd unless a = 0."""
    zs = set()
    for a in A_RANGE:
        for b in B_RANGE:
            if a >= 1 and b % 2 == 0:
                continue
            for z in (F(2 ** a, b), F(b, 2 ** a)):
                if 0 < z < 1:
                    zs.add(z)
    return sorted(zs)


def candidate_rhs() -> List[Fraction]:
    out = set()
    for d in D_RANGE:
        for c in range(-C_MAX, C_MAX + 1):
            if c and gcd(c, d) == 1:
                out.add(F(c, d))
    return sorted(out)


@dataclass
class BruteForceReport:
    hits: Set[PowerTwoSolution]
    candidates_checked: int
    d36_candidates: int
    d36_valid: int


def brute_force_report(screen=0) -> BruteForceReport:
    """Every verified two-term identity over the enumeration ranges.

    For each pair z1 < z2 and coprime (u1, u2) with |u_k| <= 4, the values c/d
    lying inside an enclosure of (u1 atan z1 + u2 atan z2)/pi are the only
    possible right-hand sides; each is checked with the full verifier.
    A positive ``screen`` widens the enclosure so that many more (false)
    candidates reach the verifier, which exercises its rejection path.
    """
    screen = F(screen)
    zs = admissible_z()
    eps = F(1, 10 ** 15)
    atans = {z: atan_enclosure(z, eps) for z in zs}
    pi = pi_enclosure(20)
    rhs_values = candidate_rhs()
    us = [u for u in range(-U_MAX, U_MAX + 1) if u]
    hits = set()
    checked = d36 = d36_ok = 0
    for i, z1 in enumerate(zs):
        for z2 in zs[i + 1:]:
            for u1 in us:
                for u2 in us:
                    if gcd(u1, u2) != 1:
                        continue
                    s = atans[z1] * u1 + atans[z2] * u2
                    lo = s.lo / (pi.hi if s.lo >= 0 else pi.lo) - screen
                    hi = s.hi / (pi.lo if s.hi >= 0 else pi.hi) + screen
                    for r in rhs_values:
                        if r < lo or r > hi:
                            continue
                        checked += 1
                        x1, x2 = u1 / (4 * r), u2 / (4 * r)
                        ok = verify(make_formula([(x1, z1), (x2, z2)], F(1, 4))).valid
                        if r.denominator in (3, 6):
                            d36 += 1
                            d36_ok += ok
                        if ok:
                            hits.add(PowerTwoSolution(x1, z1, x2, z2))
    return BruteForceReport(hits, checked, d36, d36_ok)


def brute_force_all(screen=0) -> Set[PowerTwoSolution]:
    return brute_force_report(screen).hits


def brute_force_theorem1(screen=0) -> Set[PowerTwoSolution]:
    """Enumeration hits that are not members of the parametric families."""
    return {s for s in brute_force_all(screen) if not in_parametric_family(s)}


# ---------------------------------------------------------------------------
# classical and named formulas
# ---------------------------------------------------------------------------

NAMED: Dict[str, str] = {
    "machin": "4*atan(1/5) - 1*atan(1/239) = 1/4 pi",
    "euler": "1*atan(1/2) + 1*atan(1/3) = 1/4 pi",
    "hermann": "2*atan(1/2) - 1*atan(1/7) = 1/4 pi",
    "hutton": "2*atan(1/3) + 1*atan(1/7) = 1/4 pi",
    "gi": "5*atan(1/7) + 2*atan(3/79) = 1/4 pi",
    "gi2": "22*atan(24478/873121) + 17*atan(685601/69049993) = 1/4 pi",
    "gi28": ("22*atan(1/28) + 1*atan(1744507482180328366854565127/"
             "98646395734210062276153190241239) = 1/4 pi"),
}

REFERENCE_MEASURES = {
    "machin": 1.85113, "euler": 5.41783, "hermann": 4.50522, "hutton": 3.2792,
    "gi": 1.88727, "gi2": 1.14343, "gi28": 0.901429,
}


def named_formula(name: str) -> MachinFormula:
    return parse_formula(NAMED[name])


def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def fibonacci_formula(n: int) -> MachinFormula:
    """atan(F_n/F_{n+1}) + atan(F_{n-1}/F_{n+2}) = pi/4."""
    if n < 1:
        raise ValueError("n must be >= 1")
    f = fibonacci
    return make_formula([(1, F(f(n), f(n + 1))), (1, F(f(n - 1), f(n + 2)))], F(1, 4))


# (coef, j, n) triples: coef * atan(R_j(n, x)); r_k = coef * n_k
_RESTATEMENTS: Tuple = (
    (((4, 0, 1), (-1, 3, 4)), F(1, 5)),
    (((2, 0, 1), (-1, 3, 2)), F(1, 2)),
    (((F(-3, 2), 0, 2), (1, 3, 3)), F(3)),
    (((-1, 0, 3), (3, 3, 1)), F(2)),
    (((F(4, 3), 0, 1), (F(-1, 3), 1, 4)), F(2, 3)),
    (((F(1, 2), 0, 3), (F(-3, 2), 2, 1)), F(2)),
    (((2, 0, 1), (-1, 3, 2)), F(2, 5)),
    (((2, 0, 1), (-1, 3, 2)), F(1, 3)),
    (((F(-1, 2), 0, 2), (1, 3, 1)), F(3)),
    (((2, 0, 3), (-3, 1, 2)), F(2)),
)


def rj_restatement(index: int, a: int = 1):
    """(spec, x) for :func:`theorem2_eval`; indices 11 and 12 are the
    parametric families at parameter ``a``."""
    if 1 <= index <= 10:
        triples, x = _RESTATEMENTS[index - 1]
    elif index in (11, 12):
        if a < 1:
            raise ValueError("a must be >= 1")
        b = 2 ** (a + 1) + (1 if index == 11 else -1)
        triples, x = ((1, 0, 1), (-1, 3, 1)), F(1, b)
    else:
        raise ValueError("index must be in 1..12")
    spec = [(F(c) * n, j, n) for c, j, n in triples]
    return spec, x


def restatement_target(index: int, a: int = 1) -> MachinFormula:
    if index <= 10:
        return SPORADIC[index - 1].to_formula()
    return parametric_family(1 if index == 11 else 2, a).to_formula()


# other named R_j combinations (spec, x)
RJ_EXAMPLES = {
    "gi": ([(10, 1, 2), (-10, 0, 5)], F(3)),
    "gi2": ([(374, 2, 17), (-374, 3, 22)], F(1, 2)),
    "gi28": ([(22, 0, 1), (-22, 3, 22)], F(1, 28)),
    "d33": ([(33, 0, 1), (-33, 3, 33)], F(1, 42)),
    "d48": ([(48, 0, 1), (-48, 3, 48)], F(9, 550)),
}


def catalog_entries() -> List[Tuple[str, MachinFormula]]:
    """Every built-in formula, with a label."""
    out = [(name, named_formula(name)) for name in NAMED]
    for i, s in enumerate(SPORADIC, 1):
        out.append((f"sporadic-{i}", s.to_formula()))
    for a in (1, 2, 3):
        out.append((f"family1-a{a}", parametric_family(1, a).to_formula()))
        out.append((f"family2-a{a}", parametric_family(2, a).to_formula()))
    for n in (3, 4, 5):
        out.append((f"fibonacci-{n}", fibonacci_formula(n)))
    for name in ("d33", "d48"):
        spec, x = RJ_EXAMPLES[name]
        out.append((name, theorem2_eval(spec, x)[0]))
    return out
