from __future__ import annotations

from fractions import Fraction as F

import pytest

from machin.exact import Enclosure, num_digits
from machin.formula import lehmer_measure, verify
from machin.generator import (GeneratedRow, InsufficientPrecision, TABLE_HEADER,
                              convergents_of, interval_row, pi_convergents,
                              pow2_convergents, pow2_formula, search_two_term,
                              table1, table1_tsv, table2_tsv, theorem3_formula)
from machin.pi_engine import pi_enclosure
from machin.ratfun import eval_R
from reference_tables import TABLE1, TABLE2


def test_pi_convergents():
    got = [c.value for c in pi_convergents(5)]
    assert got == [3, F(22, 7), F(333, 106), F(355, 113), F(103993, 33102)]


def test_pow2_convergents_m5():
    assert pow2_convergents(5) == [F(1, 40), F(1, 41), F(3, 122)]


def test_exact_rational_convergents_terminate():
    cs = convergents_of(F(7, 3), 10)
    assert [c.value for c in cs] == [2, F(7, 3)]


def test_convergents_need_precision():
    with pytest.raises(InsufficientPrecision):
        convergents_of(pi_enclosure(4), 8)


def test_convergent_error_bound():
    pi = pi_enclosure(60)
    for c in pi_convergents(12):
        assert abs(pi.mid - c.value) * c.q * c.q <= 1


@pytest.fixture(scope="module")
def small_table1():
    return table1(6)


def test_table1_first_rows(small_table1):
    for row, ref in zip(small_table1, TABLE1):
        k, pq, b1, r, s, _, mu = ref
        assert row.x == F(1, b1)
        assert f"{row.n}/{b1 // 4}" == pq
        assert (row.a2_digits, row.b2_digits) == (r, s)
        assert abs(row.measure - mu) < 1e-5


def test_table1_rows_verify(small_table1):
    for row in small_table1:
        assert row.route == "exact"
        assert verify(row.formula).valid


def test_table1_digit_counts_independent(small_table1):
    for row in small_table1[:3]:
        v = eval_R(3, row.n, row.x, "poly").value
        assert (num_digits(v.numerator), num_digits(v.denominator)) == (row.a2_digits, row.b2_digits)


def test_convergent_row_k1(small_table1):
    row = small_table1[0]
    assert row.n == 22 and row.x == F(1, 28)
    assert abs(row.a2b2_approx + 1.76845e-5) < 1e-10
    # 22 atan(1/28) is slightly below pi/4
    assert row.a2b2_approx < 0


def test_error_bound_and_validity_window(small_table1):
    import math
    convs = pi_convergents(7)
    for k, row in enumerate(small_table1, 1):
        q = convs[k].q
        assert abs(row.a2b2_approx) < 16 / q ** 2
        assert -math.pi / 5 < row.n * float(row.x) < 3 * math.pi / 5


def test_interval_route_agrees_with_exact(small_table1):
    for row in small_table1[:5]:
        iv_row = interval_row(row.n, row.x)
        assert (iv_row.a2_digits, iv_row.b2_digits) == (row.a2_digits, row.b2_digits)
        assert abs(iv_row.measure - row.measure) < 1e-9
        assert abs(iv_row.a2b2_approx / row.a2b2_approx - 1) < 1e-9


def test_interval_route_for_pow2_rows():
    row = pow2_formula(6, 3)
    iv_row = interval_row(row.n, row.x)
    assert (iv_row.a2_digits, iv_row.b2_digits) == (row.a2_digits, row.b2_digits)


def test_forced_interval_route():
    row = theorem3_formula(3, materialize_limit=10)
    assert row.route == "interval" and row.formula is None
    assert (row.a2_digits, row.b2_digits) == (937, 943)


@pytest.mark.parametrize("m,c", [(5, 1), (6, 3), (7, 2), (10, 2)])
def test_pow2_rows(m, c):
    ref = [r for r in TABLE2 if r[0] == m][c - 1]
    row = pow2_formula(m, c)
    assert str(row.x.numerator) + "/" + str(row.x.denominator) == ref[1]
    assert (row.a2_digits, row.b2_digits) == (ref[2], ref[3])
    assert abs(row.measure - ref[5]) < 1e-5
    assert verify(row.formula).valid


def test_pow2_argument_errors():
    with pytest.raises(ValueError):
        pow2_formula(5, 4)
    with pytest.raises(ValueError):
        theorem3_formula(0)


def test_tsv_layout(small_table1):
    lines = table1_tsv(small_table1[:2])
    assert lines[0] == TABLE_HEADER
    assert lines[1].split("\t") == ["1", "22/7", "1/28", "28", "32", "-1.76845e-05", "0.901429"]
    lines = table2_tsv([pow2_formula(5, 1)])
    assert lines[1].split("\t")[:5] == ["5", "32", "1/40", "50", "52"]


# search

def test_search_finds_33_over_42():
    rows = search_two_term(0, 3, 1, 33, 0.05, F(1, 50), F(1, 30), F(1, 2000))
    hit = [r for r in rows if r.x == F(1, 42)]
    assert hit
    r = hit[0]
    assert (r.a2_digits, r.b2_digits) == (50, 54)
    assert abs(r.measure - 0.880916) < 1e-5
    assert verify(r.formula).valid


def test_search_finds_9_over_550():
    rows = search_two_term(0, 3, 1, 48, 0.05, F(1, 70), F(1, 55), F(1, 20000), max_height=1000)
    hit = [r for r in rows if r.x == F(9, 550)]
    assert hit
    r = hit[0]
    assert (r.a2_digits, r.b2_digits) == (127, 132)
    assert abs(r.measure - 0.765513) < 1e-5


def test_search_eps_zero():
    assert search_two_term(0, 3, 1, 33, 0, F(0), F(1, 10), F(1, 100)) == []


def test_search_rows_all_verify():
    rows = search_two_term(0, 3, 1, 16, 0.1, F(1, 40), F(1, 10), F(1, 500))
    assert rows
    for r in rows:
        assert verify(r.formula).valid
        assert r.formula.rhs != 0
