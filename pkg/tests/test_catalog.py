from __future__ import annotations

from fractions import Fraction as F

import pytest

from machin.catalog import (NAMED, REFERENCE_MEASURES, RJ_EXAMPLES, SPORADIC, PowerTwoSolution,
                            admissible_z, brute_force_report, brute_force_theorem1,
                            catalog_entries, fibonacci_formula, in_parametric_family,
                            named_formula, parametric_family, restatement_target,
                            rj_restatement)
from machin.formula import lehmer_measure, make_formula, theorem2_eval, verify


@pytest.fixture(scope="module")
def census():
    return brute_force_report()


def test_sporadic_solutions_verify():
    assert len(SPORADIC) == 10
    for s in SPORADIC:
        assert verify(s.to_formula()).valid, str(s)


def test_family_examples():
    assert parametric_family(1, 1) == PowerTwoSolution(F(1), F(1, 5), F(1), F(2, 3))
    assert parametric_family(2, 1) == PowerTwoSolution(F(1), F(1, 3), F(1), F(1, 2))
    assert parametric_family(1, 0) == PowerTwoSolution(F(1), F(1, 3), F(1), F(1, 2))


def test_family_domain_errors():
    with pytest.raises(ValueError):
        parametric_family(2, 0)
    with pytest.raises(ValueError):
        parametric_family(3, 1)


@pytest.mark.parametrize("a", range(1, 17))
def test_families_verify(a):
    for which in (1, 2):
        s = parametric_family(which, a)
        assert verify(s.to_formula()).valid
        assert in_parametric_family(s)


def test_in_family_rejects_sporadic():
    assert not any(in_parametric_family(s) for s in SPORADIC)


def test_admissible_values():
    zs = admissible_z()
    assert F(1, 239) in zs and F(3, 4) in zs and F(2, 11) in zs
    assert all(0 < z < 1 for z in zs)


def test_brute_force_sporadic_set(census):
    hits = {s for s in census.hits if not in_parametric_family(s)}
    assert hits == set(SPORADIC)


def test_brute_force_family_members_found(census):
    fam = {s for s in census.hits if in_parametric_family(s)}
    assert parametric_family(1, 1) in fam and parametric_family(2, 2) in fam


def test_d36_candidates_all_fail():
    rep = brute_force_report(screen=F(1, 40))
    assert rep.d36_candidates > 0
    assert rep.d36_valid == 0
    assert {s for s in rep.hits if not in_parametric_family(s)} == set(SPORADIC)


@pytest.mark.parametrize("name", sorted(NAMED))
def test_named_formulas_verify(name):
    assert verify(named_formula(name)).valid


@pytest.mark.parametrize("name", sorted(REFERENCE_MEASURES))
def test_named_measures(name):
    assert abs(lehmer_measure(named_formula(name)) - REFERENCE_MEASURES[name]) < 1e-4


def test_fibonacci_examples():
    assert fibonacci_formula(1) == make_formula([(1, 1)], F(1, 4))
    assert fibonacci_formula(2) == named_formula("euler")
    assert fibonacci_formula(3) == make_formula([(1, F(2, 3)), (1, F(1, 5))], F(1, 4))


@pytest.mark.parametrize("index", range(1, 13))
def test_restatements_match_catalog(index):
    spec, x = rj_restatement(index, a=3)
    f, rhs = theorem2_eval(spec, x)
    target = restatement_target(index, a=3)
    assert f == target


def test_restatement_arguments():
    assert rj_restatement(1)[1] == F(1, 5)
    assert rj_restatement(6)[1] == 2
    assert rj_restatement(10)[1] == 2
    with pytest.raises(ValueError):
        rj_restatement(13)


def test_rj_examples():
    f, rhs = theorem2_eval(*RJ_EXAMPLES["gi"])
    assert f == named_formula("gi")
    f, rhs = theorem2_eval(*RJ_EXAMPLES["gi28"])
    assert f == named_formula("gi28")
    f, _ = theorem2_eval(*RJ_EXAMPLES["d33"])
    assert abs(lehmer_measure(f) - 0.880916) < 1e-5


def test_catalog_entries_unique_labels():
    labels = [name for name, _ in catalog_entries()]
    assert len(labels) == len(set(labels))
