"""Tests for block and gap digit patterns and constant calibration."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from digitwitness.errors import HypothesisError, InvalidBaseError
from digitwitness.numtheory.patterns import (
    calibrate,
    closed_d,
    closed_e2,
    doubled_square_check,
    gap_closed_forms,
    gap_pattern,
    general_pattern,
    ladder_exponents,
    pattern_general,
    pattern_general_digit_sum,
)
from digitwitness.numtheory.radix import digit_sum, from_pattern


# ============================================================================
# BLOCK PATTERN
# ============================================================================


def test_block_pattern_layout():
    # (q-1)^k s (q-1)^(k+1) s (q-1)^n with m = 1
    p = general_pattern(10, 1, 2, 3)
    assert p.runs == ((9, 2), (8, 1), (9, 3), (8, 1), (9, 3))
    assert pattern_general(10, 1, 2, 3) == 9989998999


def test_binary_block_pattern_drops_zero_separators():
    p = general_pattern(2, 1, 4, 17)
    assert from_pattern(p) == pattern_general(2, 1, 4, 17)
    assert digit_sum(pattern_general(2, 1, 4, 17), 2) == 4 + 5 + 17


@given(
    q=st.integers(min_value=2, max_value=12),
    m=st.integers(min_value=0, max_value=4),
    k=st.integers(min_value=1, max_value=12),
    n=st.integers(min_value=1, max_value=30),
)
def test_block_pattern_digit_sum_formula(q, m, k, n):
    u = pattern_general(q, m, k, n)
    assert digit_sum(u, q) == pattern_general_digit_sum(q, m, k, n)
    assert digit_sum(u, q) == (q - 1) * (k * (m + 1) + n) + closed_e2(q, m)


@given(
    q=st.integers(min_value=2, max_value=9),
    m=st.integers(min_value=0, max_value=4),
    k=st.integers(min_value=1, max_value=8),
    n=st.integers(min_value=1, max_value=20),
)
def test_separator_ladder_identity(q, m, k, n):
    ladder = ladder_exponents(m, k, n)
    assert ladder[-1] == n
    assert pattern_general(q, m, k, n) == q ** ladder[0] - 1 - sum(q ** c for c in ladder[1:])


def test_closed_constants_binary():
    assert closed_e2(2, 1) == 1
    assert closed_d(1) == 4


# ============================================================================
# CALIBRATION
# ============================================================================


def test_calibrate_binary_m1():
    record = calibrate(2, 1)
    constants = record.constants
    assert (constants.e1, constants.e2, constants.d) == (0, 1, 4)
    assert len(record.samples) == 9
    assert record.to_dict()["e1"] == 0


def test_calibrate_binary_m0():
    constants = calibrate(2, 0).constants
    assert (constants.e1, constants.e2, constants.d) == (0, 0, 2)


@pytest.mark.parametrize("q,m", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 5)])
def test_calibration_is_stable(q, m):
    record = calibrate(q, m)
    e1 = record.constants.e1
    for k, n, s_sq in record.samples:
        assert s_sq == (q - 1) * (n - m * k) + e1


def test_calibrate_reports_base_q_quotients():
    constants = calibrate(3, 1).constants
    assert constants.e3 == constants.e2 // 2
    assert constants.e4 == constants.e1 // 2
    assert "e3" in constants.to_dict()


def test_calibrate_requires_divisibility():
    with pytest.raises(HypothesisError):
        calibrate(3, 2)


# ============================================================================
# GAP PATTERNS
# ============================================================================


def test_gap_pattern_values(golden):
    for case in golden["gap"]:
        assert gap_pattern(case["base"], case["k"], case["n"]) == case["witness"]


def test_gap_pattern_boundary_regression():
    # n = k + 2 in base 3: the closed form would predict 8, the square actually has digit sum 12
    assert digit_sum(458, 3) == 2 + 2 * (1 + 3)
    assert digit_sum(458 ** 2, 3) == 12
    with pytest.raises(HypothesisError):
        gap_pattern(3, 1, 3)
    with pytest.raises(HypothesisError):
        gap_closed_forms(4, 2, 4)


def test_gap_pattern_needs_base_three():
    with pytest.raises(InvalidBaseError):
        gap_pattern(2, 1, 5)


def _grid():
    for q in (5, 7):
        for k in range(1, 6):
            for n in range(k + 2, k + 9):
                yield q, k, n
    for q in (3, 4):
        for k in range(1, 6):
            for n in range(k + 3, k + 9):
                yield q, k, n


@pytest.mark.parametrize("q,k,n", list(_grid()))
def test_gap_closed_forms_match_oracle(q, k, n):
    u = gap_pattern(q, k, n)
    assert gap_closed_forms(q, k, n) == (digit_sum(u, q), digit_sum(u * u, q))
    assert doubled_square_check(q, k, n)
