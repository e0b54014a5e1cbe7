from __future__ import annotations

from fractions import Fraction as F

import pytest

from machin.catalog import named_formula
from machin.formula import parse_formula
from machin.pi_engine import (UnverifiedFormulaError, benchmark, compute_pi,
                              gregory_atan_fp, pi_enclosure, predicted_terms, term_counts)

# pi = 3.14159...974944|5923..., so 60 decimals round up
PI_60 = "3.141592653589793238462643383279502884197169399375105820974945"


def test_gregory_examples():
    fp, err = gregory_atan_fp(F(1, 5), 20)
    assert abs(fp.mantissa - 19739555984988075837) <= 1 and err == 1
    fp, err = gregory_atan_fp(F(1, 239), 20)
    assert abs(fp.mantissa - 418407600207472386) <= 1
    fp, err = gregory_atan_fp(0, 20)
    assert fp.mantissa == 0 and err == 0


def test_gregory_domain():
    with pytest.raises(ValueError):
        gregory_atan_fp(1, 10)


def test_pi_enclosure():
    e = pi_enclosure(2)
    assert F(314, 100) <= e.lo and e.hi <= F(315, 100)
    e = pi_enclosure(10)
    assert e.width <= F(1, 10 ** 10)
    assert F(314159265358979, 10 ** 14) in e


def test_pi_enclosures_nest():
    prev = pi_enclosure(5)
    for d in (10, 20, 40, 80):
        cur = pi_enclosure(d)
        assert cur.issubset(prev)
        prev = cur


def test_compute_pi_small():
    assert compute_pi(named_formula("machin"), 1) == "3.1"
    assert compute_pi(named_formula("machin"), 60) == PI_60


def test_formulas_agree():
    m = compute_pi(named_formula("machin"), 200)
    for name in ("euler", "hermann", "hutton", "gi", "gi2"):
        assert compute_pi(named_formula(name), 200) == m


def test_monotone_refinement():
    f = named_formula("gi")
    long = compute_pi(f, 120)
    exact = F(int(long.replace(".", "")), 10 ** 120)
    for d in (10, 37, 80):
        short = compute_pi(f, d)
        val = F(int(short.replace(".", "")), 10 ** d)
        # shorter outputs are the longer one rounded, never a different digit string
        assert abs(val - exact) <= F(1, 2 * 10 ** d) + F(1, 10 ** 120)


def test_output_inside_enclosure():
    s = compute_pi(named_formula("euler"), 50)
    val = F(int(s.replace(".", "")), 10 ** 50)
    e = pi_enclosure(50)
    assert e.lo - F(1, 10 ** 50) <= val <= e.hi + F(1, 10 ** 50)


def test_rejects_invalid():
    with pytest.raises(UnverifiedFormulaError):
        compute_pi(parse_formula("4*atan(1/5) - 1*atan(1/238) = 1/4 pi"), 10)
    with pytest.raises(ValueError):
        compute_pi(parse_formula("1*atan(1) = 1/4 pi"), 10)


@pytest.mark.parametrize("name", ["machin", "euler", "gi", "gi2"])
def test_term_count_model(name):
    f = named_formula(name)
    for digits in (100, 500):
        for t, n in zip(f.terms, term_counts(f, digits)):
            assert abs(n - predicted_terms(t.arg, digits)) <= 2


def test_benchmark():
    rows = benchmark([named_formula("machin"), named_formula("euler")], 1000)
    assert rows[0].total_terms < rows[1].total_terms
    assert len(benchmark([named_formula("machin")], 50)) == 1
    assert benchmark([], 50) == []
