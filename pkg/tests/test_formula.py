from __future__ import annotations

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from machin.catalog import NAMED, REFERENCE_MEASURES, catalog_entries, named_formula
from machin.exact import ArithmeticInconsistency, GaussRat, gauss_pow
from machin.formula import (FormulaSyntaxError, MeasureUndefined, gaussian_direction,
                            lehmer_measure, lehmer_measure_text, make_formula,
                            normalize_args, parse_formula, period_multiplier,
                            print_formula, split_term, theorem2_eval, verify)
from machin.ratfun import PoleError

MACHIN = "4*atan(1/5) - 1*atan(1/239) = 1/4 pi"


# parsing and printing

def test_parse_machin():
    f = parse_formula(MACHIN)
    assert f.coefs == [-1, 4]
    assert f.args == [F(1, 239), F(1, 5)]
    assert f.rhs == F(1, 4)


def test_print_is_canonical_roundtrip():
    for text in NAMED.values():
        canon = print_formula(parse_formula(text))
        assert print_formula(parse_formula(canon)) == canon


def test_parse_merges_equal_args():
    f = parse_formula("1*atan(1/5) + 1*atan(1/5) = 1/4 pi")
    assert len(f.terms) == 1 and f.terms[0].coef == 2
    assert not verify(f).valid


def test_parse_whitespace_and_fractions():
    f = parse_formula("  3/2*atan( -3/4 )-1*atan(2/11)=1/4pi")
    assert f.args == [F(2, 11), F(3, 4)]
    assert f.coefs == [-1, F(-3, 2)]


@pytest.mark.parametrize("text", [
    "", "4*atan(1/5)", "4*atan(1/5) = 1/4", "4*atan(1/0) = 1/4 pi",
    "4 atan(1/5) = 1/4 pi", "1*atan(1/5) - 1*atan(1/5) = 1/4 pi", "4*atan(1/5) = 1/4 pi x",
])
def test_parse_errors(text):
    with pytest.raises((FormulaSyntaxError, ZeroDivisionError)):
        parse_formula(text)


def test_syntax_error_has_position():
    with pytest.raises(FormulaSyntaxError) as ei:
        parse_formula("4*atan(1/5) + ?")
    assert ei.value.pos == 14


# verification

def test_machin_stage1_product():
    # (5+i)^4 = 2(1+i)(239+i)
    assert gauss_pow(GaussRat(5, 1), 4) == GaussRat(2) * GaussRat(1, 1) * GaussRat(239, 1)
    rep = verify(parse_formula(MACHIN))
    assert rep.valid and rep.record() == "valid=true gaussian=true branch=true dir=1"


def test_gi2_product_identity():
    z = gauss_pow(GaussRat(873121, 24478), 22) * gauss_pow(GaussRat(69049993, 685601), 17)
    c = 2 ** 8 * 5 ** 374
    assert z == GaussRat(c, c)
    assert verify(named_formula("gi2")).valid


def test_rejects_wrong_argument():
    rep = verify(parse_formula("4*atan(1/5) - 1*atan(1/238) = 1/4 pi"))
    assert not rep.gaussian_ok and not rep.valid


def test_atan_one():
    assert verify(parse_formula("1*atan(1) = 1/4 pi")).valid


def test_wrong_rhs_unrepresentable():
    rep = verify(parse_formula("1*atan(1/2) + 1*atan(1/3) = 1/3 pi"))
    assert not rep.valid
    assert "unrepresentable-rhs" in rep.reasons


def test_wrong_branch():
    # right direction mod 2pi, wrong multiple
    rep = verify(parse_formula("4*atan(1/5) - 1*atan(1/239) = 9/4 pi"))
    assert rep.gaussian_ok and not rep.branch_ok and not rep.valid


def test_period_multiplier_and_direction():
    f = parse_formula("3/2*atan(3/4) - 1*atan(2/11) = 1/4 pi")
    t = period_multiplier(f)
    assert t == 2
    # 2*(pi/4) = pi/2, so the product lies on the positive imaginary axis
    re_, im = gaussian_direction(f, t)
    assert re_ == 0 and im > 0


def test_enclosure_contains_zero():
    rep = verify(named_formula("euler"))
    assert 0 in rep.enclosure


def _perturb(f, rng):
    terms = [(t.coef, t.arg) for t in f.terms]
    k = rng.randrange(len(terms))
    c, a = terms[k]
    d = rng.choice((-1, 1))
    if rng.random() < 0.5:
        c = F(c.numerator + d, c.denominator)
    else:
        a = F(a.numerator + d, a.denominator)
    terms[k] = (c, a)
    return make_formula(terms, f.rhs)


def _pool():
    from machin.generator import pow2_formula, theorem3_formula
    out = [f for _, f in catalog_entries()]
    out += [theorem3_formula(k).formula for k in (1, 2, 3)]
    out += [pow2_formula(m, c).formula for m in (5, 6) for c in (1, 2, 3)]
    return out


def test_rejects_random_perturbations():
    rng = random.Random(20240601)
    pool = _pool()
    assert all(verify(f).valid for f in pool)
    checked = 0
    for _ in range(10_000):
        g = _perturb(rng.choice(pool), rng)
        if not g.terms:
            continue
        assert not verify(g).valid, print_formula(g)
        checked += 1
    assert checked > 9_000


# measure

@pytest.mark.parametrize("name", sorted(REFERENCE_MEASURES))
def test_named_measures(name):
    assert abs(lehmer_measure(named_formula(name)) - REFERENCE_MEASURES[name]) < 1e-4


def test_measure_text():
    f = parse_formula(MACHIN)
    assert lehmer_measure_text(f) == "1.85113"
    assert lehmer_measure_text(f, 20).startswith("1.8511276523168560443")


def test_measure_undefined():
    with pytest.raises(MeasureUndefined):
        lehmer_measure(parse_formula("1*atan(2) - 1*atan(1/3) = 1/4 pi"))


def test_measure_of_huge_argument():
    f = named_formula("gi28")
    assert abs(lehmer_measure(f) - 0.901429) < 1e-6


# transformations

def test_normalize_single():
    f = normalize_args(make_formula([(1, 2)], F(3, 8)))
    assert f.terms[0].coef == -1 and f.terms[0].arg == F(1, 2)
    assert f.rhs == F(3, 8) - F(1, 2)


def test_normalize_five_thirds():
    f = normalize_args(make_formula([(1, F(5, 3)), (1, F(1, 4))], F(1, 4)))
    assert F(3, 5) in f.args


def test_normalize_fixpoint():
    f = parse_formula(MACHIN)
    assert normalize_args(f) == f


def test_normalize_folds_one():
    f = normalize_args(parse_formula("1*atan(1) + 1*atan(1/3) = 1/2 pi"))
    assert f.args == [F(1, 3)] and f.rhs == F(1, 4)


def test_split_machin():
    g = split_term(parse_formula(MACHIN), 0)
    assert g == make_formula([(4, F(1, 5)), (-2, F(2, 239)), (1, F(171367, 13651919))], F(1, 4))
    assert verify(g).valid


def test_double_split_adds_two_terms():
    f = parse_formula(MACHIN)
    g = split_term(split_term(f, 0), 0)
    assert len(g.terms) == 4 and verify(g).valid


def test_split_zero_term():
    from machin.formula import ArctanTerm, MachinFormula
    f = MachinFormula((ArctanTerm(F(1), F(0)),), F(0))
    assert split_term(f, 0).terms == ()


def test_split_index_error():
    with pytest.raises(IndexError):
        split_term(parse_formula(MACHIN), 2)


# formulas built from R_j

def test_rj_sum_step_value_at_zero():
    f, rhs = theorem2_eval([(12, 3, 3), (-12, 0, 4)], 0)
    assert rhs == -1


@pytest.mark.parametrize("a", range(1, 8))
def test_rj_sum_first_family(a):
    f, rhs = theorem2_eval([(1, 0, 1), (-1, 3, 1)], F(1, 2 ** (a + 1) + 1))
    assert rhs == F(1, 4)
    assert f.args == sorted([F(1, 2 ** (a + 1) + 1), F(2 ** a, 2 ** a + 1)])


def test_rj_sum_cancelling_terms():
    f, rhs = theorem2_eval([(1, 0, 2), (-1, 0, 2)], F(3, 7))
    assert f.terms == () and rhs == 0


def test_rj_sum_errors():
    with pytest.raises(ValueError):
        theorem2_eval([(1, 0, 1), (1, 3, 1)], F(1, 3))
    with pytest.raises(PoleError):
        theorem2_eval([(1, 2, 1), (-1, 0, 1)], 0)


@given(st.integers(-40, 40), st.integers(1, 40), st.sampled_from([(3, 3, 0, 4), (1, 2, 0, 2), (3, 4, 1, 3)]))
def test_rj_sum_always_verifies(p, q, case):
    j1, n1, j2, n2 = case
    r = n1 * n2
    try:
        f, rhs = theorem2_eval([(r, j1, n1), (-r, j2, n2)], F(p, q))
    except PoleError:
        return
    assert verify(f).valid
    assert (4 * rhs * n1 * n2).denominator == 1


def test_huge_argument_text_roundtrip():
    from machin.generator import theorem3_formula
    f = theorem3_formula(4).formula
    text = print_formula(f)
    assert len(text) > 10 ** 6
    assert parse_formula(text) == f
