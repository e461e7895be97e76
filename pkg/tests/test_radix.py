"""Tests for radix expansions, digit sums and run-length patterns."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from digitwitness.errors import DomainError, InvalidBaseError, MalformedPatternError
from digitwitness.numtheory.radix import (
    DigitString,
    RunLengthPattern,
    digit_sum,
    divisibility_pair,
    expand,
    from_pattern,
    natural_from_text,
    natural_to_text,
    pattern_of,
    rle,
    split_digit_sum,
)


def _naive_digit_sum(n, q):
    total = 0
    while n:
        n, r = divmod(n, q)
        total += r
    return total


# ============================================================================
# DIGIT SUMS
# ============================================================================


def test_digit_sum_examples():
    assert digit_sum(0, 10) == 0
    assert digit_sum(2624, 5) == 16
    assert digit_sum(2624 ** 2, 5) == 16
    assert digit_sum(458 ** 2, 3) == 12
    assert digit_sum(255, 2) == 8
    assert digit_sum(12345, 100) == 1 + 23 + 45


@given(n=st.integers(min_value=0, max_value=10 ** 60), q=st.integers(min_value=2, max_value=70))
def test_digit_sum_matches_repeated_division(n, q):
    assert digit_sum(n, q) == _naive_digit_sum(n, q)


@given(n=st.integers(min_value=0, max_value=10 ** 60), q=st.integers(min_value=2, max_value=70))
def test_digit_sum_ignores_trailing_zeros(n, q):
    assert digit_sum(q * n, q) == digit_sum(n, q)
    assert digit_sum(n * q ** 17, q) == digit_sum(n, q)


@given(n=st.integers(min_value=0, max_value=2 ** 256 - 1), q=st.integers(min_value=2, max_value=70))
def test_digit_sum_congruent_mod_q_minus_one(n, q):
    assert (digit_sum(n, q) - n) % (q - 1) == 0


def test_digit_sum_rejects_bad_input():
    with pytest.raises(InvalidBaseError):
        digit_sum(5, 1)
    with pytest.raises(DomainError):
        digit_sum(-1, 10)


def test_digit_sum_of_huge_natural():
    # beyond the default int-to-str digit limit
    n = 10 ** 6000 - 1
    assert digit_sum(n, 10) == 9 * 6000


# ============================================================================
# EXPANSIONS AND PATTERNS
# ============================================================================


def test_expand_is_canonical():
    assert expand(10, 2).digits == (1, 0, 1, 0)
    assert expand(0, 7).digits == ()
    assert expand(0, 7).value == 0


@given(n=st.integers(min_value=0, max_value=10 ** 40), q=st.integers(min_value=2, max_value=80))
def test_expand_round_trips(n, q):
    assert expand(n, q).value == n


def test_digit_string_rejects_leading_zero():
    with pytest.raises(MalformedPatternError):
        DigitString(10, (0, 1))
    with pytest.raises(MalformedPatternError):
        DigitString(3, (1, 3))


def test_from_pattern_example():
    p = RunLengthPattern(3, ((1, 2), (2, 1), (0, 4), (2, 2)))
    assert from_pattern(p) == int("11200022", 3)
    assert p.length == 9
    assert p.digit_sum == 1 * 2 + 2 + 2 * 2


@given(n=st.integers(min_value=1, max_value=10 ** 30), q=st.integers(min_value=2, max_value=64))
def test_rle_inverts_from_pattern(n, q):
    pattern = rle(expand(n, q))
    assert from_pattern(pattern) == n
    assert pattern_of(n, q) == pattern
    assert pattern.digit_sum == digit_sum(n, q)


@pytest.mark.slow
@pytest.mark.parametrize("q", [2, 3, 4, 5, 10])
def test_round_trip_every_natural_up_to_a_million(q):
    for n in range(1, 10 ** 6 + 1):
        digits = expand(n, q)
        assert digits.value == n
        assert from_pattern(rle(digits)) == n


@pytest.mark.parametrize(
    "runs",
    [
        ((0, 1), (1, 1)),  # leading zeros
        ((1, 1), (1, 2)),  # repeated digit
        ((1, 0),),  # empty run
        ((3, 1),),  # digit outside base 3
    ],
)
def test_malformed_patterns_rejected(runs):
    with pytest.raises(MalformedPatternError):
        RunLengthPattern(3, runs)


def test_build_merges_and_drops_empty_runs():
    p = RunLengthPattern.build(10, [(9, 2), (9, 1), (1, 0), (0, 3)])
    assert p.runs == ((9, 3), (0, 3))


def test_pattern_text_round_trip():
    text = "b3:1^2 2^1 0^4 2^2"
    p = RunLengthPattern.parse(text)
    assert p.to_text() == text
    assert str(p) == text
    assert pattern_of(2624, 5).to_text() == "b5:4^1 0^1 4^3"


@pytest.mark.parametrize("text", ["3:1^2", "b3:1^x", "b3:1-2", ""])
def test_pattern_parse_errors(text):
    with pytest.raises(MalformedPatternError):
        RunLengthPattern.parse(text)


# ============================================================================
# SPLITS, DIVISIBILITY AND SERIALIZATION
# ============================================================================


@given(n=st.integers(min_value=0, max_value=10 ** 30), k=st.integers(min_value=0, max_value=40))
def test_split_digit_sum_adds_up(n, k):
    low, high = split_digit_sum(n, 7, k)
    assert low + high == digit_sum(n, 7)


@given(u=st.integers(min_value=1, max_value=10 ** 25), q=st.integers(min_value=3, max_value=40))
def test_casting_out_agrees(u, q):
    by_value, by_sum = divisibility_pair(u, q)
    assert by_value == by_sum


@pytest.mark.slow
def test_casting_out_on_random_sample():
    rng = random.Random(20240601)
    for _ in range(10 ** 5):
        q = rng.randint(3, 16)
        u = rng.randint(1, 10 ** 12)
        by_value, by_sum = divisibility_pair(u, q)
        assert by_value == by_sum


def test_divisibility_pair_domain():
    with pytest.raises(InvalidBaseError):
        divisibility_pair(4, 2)
    with pytest.raises(DomainError):
        divisibility_pair(0, 10)


def test_natural_text_handles_long_values():
    n = 10 ** 5000
    text = natural_to_text(n)
    assert text == "1" + "0" * 5000
    assert natural_from_text(text) == n


def test_natural_from_text_rejects_signs():
    with pytest.raises(DomainError):
        natural_from_text("-12")


@pytest.mark.slow
def test_congruence_on_wide_random_sample():
    rng = random.Random(31337)
    for _ in range(10 ** 5):
        q = rng.randint(2, 36)
        n = rng.getrandbits(256)
        assert (digit_sum(n, q) - n) % (q - 1) == 0
