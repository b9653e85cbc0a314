import threading
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import brute_fpf_r, brute_lah, brute_pnr
from rderangements import core
from rderangements.errors import InternalConsistencyError

D2_LIST = [2, 12, 84, 640, 5430, 50988, 526568, 5940576, 72755370, 961839340, 13656650172]
D3_LIST = [6, 72, 780, 8520, 97650, 1189104, 15441048, 213816240, 3152287710, 49369524600]


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 0), (4, 9)])
def test_derangement(n, expected):
    assert core.derangement(n) == expected


def test_derangement_matches_brute_force():
    assert [brute_fpf_r(0, n) for n in range(8)] == [core.derangement(n) for n in range(8)]


def test_derangement_alternating_sum():
    for n in range(40):
        s = sum(Fraction((-1) ** k, core.factorial(k)) for k in range(n + 1))
        assert core.derangement(n) == core.factorial(n) * s


@pytest.mark.parametrize("r, n, expected", [(2, 2, 2), (2, 6, 5430), (3, 5, 780), (5, 4, 0)])
def test_r_derangement_examples(r, n, expected):
    assert core.r_derangement(r, n) == expected


def test_published_lists():
    assert [core.r_derangement(2, n) for n in range(2, 13)] == D2_LIST
    assert [core.r_derangement(3, n) for n in range(3, 13)] == D3_LIST


@pytest.mark.parametrize("r, n, expected", [(2, 4, 84), (1, 3, 9), (3, 3, 6)])
def test_closed_examples(r, n, expected):
    assert core.r_derangement_closed(r, n) == expected


@pytest.mark.parametrize("r, s, n, expected", [(2, 2, 4, 84), (3, 1, 4, 72), (2, 1, 3, 12), (2, 2, 3, 12)])
def test_convolution_examples(r, s, n, expected):
    assert core.r_derangement_convolution(r, s, n) == expected


@pytest.mark.parametrize("s", [0, 4, -1])
def test_convolution_rejects_bad_split(s):
    with pytest.raises(ValueError):
        core.r_derangement_convolution(3, s, 5)


@pytest.mark.parametrize("r, n, expected", [(2, 4, 72), (0, 3, 9), (2, 5, 780)])
def test_lift_examples(r, n, expected):
    assert core.r_derangement_lift(r, n) == expected


@pytest.mark.parametrize("r, n, expected", [(2, 2, 1), (2, 3, 2), (3, 4, 3), (2, 4, 7)])
def test_c_r_examples(r, n, expected):
    assert core.c_r(r, n) == expected


def test_c_r_rejects_small_n():
    with pytest.raises(ValueError):
        core.c_r(3, 2)


def test_non_exact_division_is_reported(monkeypatch):
    monkeypatch.setattr(core, "r_derangement", lambda r, n: 7)
    with pytest.raises(InternalConsistencyError):
        core.c_r(2, 4)
    with pytest.raises(InternalConsistencyError):
        core.r_derangement_lift(1, 2)


@pytest.mark.parametrize("n, k", [(1, 1), (3, 2), (4, 2), (4, 3), (5, 2), (5, 4)])
def test_lah_matches_enumeration(n, k):
    assert core.lah(n, k) == brute_lah(n, k)


def test_lah_edge_cases():
    assert core.lah(6, 6) == 1
    assert core.lah(3, 5) == 0
    assert core.lah(0, 0) == 1
    with pytest.raises(ValueError):
        core.lah(3, 0)


@pytest.mark.parametrize("r, n", [(0, 4), (2, 5), (3, 3), (1, 1)])
def test_lah_identity_examples(r, n):
    assert core.lah_identity_check(r, n)


@pytest.mark.parametrize("r, n, expected", [(0, 3, 6), (2, 2, 2), (1, 2, 4)])
def test_pnr_examples(r, n, expected):
    assert core.pnr_count(r, n) == expected


@pytest.mark.parametrize("r, n", [(0, 4), (1, 3), (2, 3), (1, 4), (3, 3), (2, 4)])
def test_pnr_matches_brute_force(r, n):
    assert core.pnr_count(r, n) == brute_pnr(r, n)


@pytest.mark.parametrize("r, n, expected", [(0, 5, Fraction(1)), (2, 4, Fraction(1, 2)), (3, 5, Fraction(2, 5))])
def test_fixed_point_expectation_examples(r, n, expected):
    assert core.fixed_point_expectation(r, n) == expected


def test_fixed_point_distribution_sums_to_one():
    for r in range(4):
        for n in range(r, 15):
            assert sum(core.fixed_point_distribution(r, n)) == 1


@pytest.mark.parametrize("r, n, expected", [(2, 2, 2), (0, 0, 1), (3, 4, 72)])
def test_oracle_examples(r, n, expected):
    assert core.oracle_count(r, n) == expected


def test_oracle_agrees_with_independent_brute_force():
    for total in range(7):
        for r in range(total + 1):
            assert core.oracle_count(r, total - r) == brute_fpf_r(r, total - r)


def test_oracle_row_matches_single_counts():
    for total in range(8):
        assert core.oracle_row(total) == [core.oracle_count(r, total - r) for r in range(total + 1)]


def test_oracle_cap():
    with pytest.raises(ValueError):
        core.oracle_count(5, 6)
    assert core.oracle_count(1, 2, cap=3) == 2


def test_falling_binomial_factorial():
    assert core.falling_factorial(5, 2) == 20
    assert core.falling_factorial(5, 0) == 1
    assert core.binomial(6, 3) == 20
    assert core.binomial(3, 6) == 0
    assert core.factorial(4) == 24


def test_special_values():
    for r in range(1, 10):
        assert core.r_derangement(r, r) == core.factorial(r)
    for r in range(2, 10):
        assert core.r_derangement(r, r + 1) == r * core.factorial(r + 1)
    for n in range(50):
        assert core.r_derangement(1, n) == core.derangement(n + 1)


@given(st.integers(1, 6), st.integers(0, 120), st.data())
def test_cross_formula_agreement(r, extra, data):
    n = r + extra
    s = data.draw(st.integers(1, r))
    d = core.r_derangement(r, n)
    assert core.r_derangement_closed(r, n) == d
    assert core.r_derangement_convolution(r, s, n) == d
    assert core.r_derangement_lift(r, n) == core.r_derangement(r + 1, n)


@given(st.integers(1, 8), st.integers(0, 150))
def test_divisibility_and_monotonicity(r, extra):
    n = r + extra
    d = core.r_derangement(r, n)
    assert d % core.factorial(r) == 0
    assert d % core.falling_factorial(n, r) == 0
    assert d < core.r_derangement(r, n + 1)


def test_zero_below_r():
    for r in range(1, 8):
        for n in range(r):
            assert core.r_derangement(r, n) == 0


def test_memo_concurrent_readers():
    memo = core.DerangementMemo()
    results = []

    def work():
        results.append([memo.get(4, n) for n in range(300, 0, -7)])

    threads = [threading.Thread(target=work) for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)
    assert results[0][-1] == core.r_derangement(4, 6)


def test_memo_seed_rejects_bad_values():
    memo = core.DerangementMemo()
    good = [memo.get(0, n) for n in range(10)]
    fresh = core.DerangementMemo()
    assert fresh.seed(0, good)
    assert not core.DerangementMemo().seed(0, good[:5] + [good[5] + 1])
    # a row above needs its lower row present
    assert not core.DerangementMemo().seed(1, [0, 1, 2])
