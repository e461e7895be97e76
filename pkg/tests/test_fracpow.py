"""Tests for fractional-exponent witnesses, certified floors and demonstration points."""

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from digitwitness.errors import DomainError, UnsupportedExponentError
from digitwitness.numtheory.fracpow import (
    binomial,
    ceil_pow_real,
    coprime_part,
    floor_pow_rational,
    floor_pow_real,
    frac_parameters,
    integer_root,
    liminf_demo,
    limsup_demo,
    multiplicative_order,
    tail_bound,
    witness_frac,
)
from digitwitness.numtheory.radix import digit_sum
from digitwitness.numtheory.surds import RefinableReal
from digitwitness.types.witness_schema import RatioTarget, Route

# ============================================================================
# INTEGER ROOTS
# ============================================================================


def test_integer_root_examples():
    assert integer_root(27, 3) == 3
    assert integer_root(26, 3) == 2
    assert integer_root(0, 5) == 0
    assert integer_root(10 ** 300, 100) == 1000


@given(n=st.integers(min_value=0, max_value=2 ** 512 - 1), m=st.integers(min_value=1, max_value=9))
def test_integer_root_brackets_n(n, m):
    x = integer_root(n, m)
    assert x ** m <= n < (x + 1) ** m


@pytest.mark.slow
def test_integer_root_on_random_sample():
    rng = random.Random(512)
    for _ in range(10 ** 4):
        n, m = rng.getrandbits(512), rng.randint(1, 9)
        x = integer_root(n, m)
        assert x ** m <= n < (x + 1) ** m
        assert integer_root(x ** m, m) == x


def test_integer_root_rejects_bad_index():
    with pytest.raises(DomainError):
        integer_root(8, 0)
    with pytest.raises(DomainError):
        integer_root(-8, 3)


def test_floor_pow_rational():
    assert floor_pow_rational(4101, 1, 3) == 16
    assert floor_pow_rational(8, 2, 3) == 4
    with pytest.raises(DomainError):
        floor_pow_rational(8, 2, 4)


# ============================================================================
# LADDER HELPERS
# ============================================================================


def test_number_theory_helpers():
    assert coprime_part(12, 2) == 3
    assert coprime_part(7, 10) == 7
    assert multiplicative_order(2, 5) == 4
    assert multiplicative_order(10, 1) == 1
    assert binomial(Fraction(1, 3), 2) == Fraction(-1, 9)


def test_tail_bound_vanishes_for_integer_ratio():
    assert tail_bound(2, 1, 4, 5, 3) == 0


def test_frac_parameters_satisfy_ladder_conditions():
    p = frac_parameters(2, 1, 3, RatioTarget(2, 3))
    assert p.e > p.t1_bound
    assert p.n > p.l
    assert (p.n * p.m) % p.h == 0
    assert p.m * (p.d + 1) < p.h * 2 ** p.n
    assert digit_sum(p.d, 2) == p.w * p.a - 1


# ============================================================================
# WITNESSES
# ============================================================================


def test_fractional_golden_values(golden):
    for case in golden["fractional"]:
        r = RatioTarget.parse(case["ratio"])
        report = witness_frac(case["base"], case["h"], case["m"], r)
        assert report.witness == int(case["witness"])
        assert floor_pow_rational(report.witness, case["h"], case["m"]) == int(case["floor"])
        if "n" in case:
            assert report.trace.n == case["n"]
        assert report.ratio == r


@pytest.mark.parametrize("q,h,m", [(2, 1, 3), (2, 1, 4), (3, 2, 5)])
@pytest.mark.parametrize("ratio", ["1/2", "1/1", "2/3", "3/1"])
def test_witness_frac_grid(q, h, m, ratio):
    r = RatioTarget.parse(ratio)
    report = witness_frac(q, h, m, r)
    ladder = report.trace.ladder
    floor = floor_pow_rational(report.witness, h, m)

    assert report.verified
    assert report.trace.route == Route.FRAC_LADDER
    assert floor == q ** report.trace.n + ladder["d"]
    assert digit_sum(floor, q) * r.c == digit_sum(report.witness, q) * r.a
    assert digit_sum(floor, q) == (q - 1) * ladder["w"] * r.a


def test_witness_frac_square_route():
    report = witness_frac(3, 1, 2, RatioTarget(2, 1))
    root = integer_root(report.witness, 2)
    assert root * root == report.witness
    assert report.trace.route == Route.FRAC_SQUARE
    assert digit_sum(root, 3) * 1 == digit_sum(report.witness, 3) * 2


def test_witness_frac_rejects_large_exponent():
    with pytest.raises(UnsupportedExponentError):
        witness_frac(2, 2, 3, RatioTarget(1, 1))
    with pytest.raises(DomainError):
        witness_frac(2, 2, 6, RatioTarget(1, 1))


# ============================================================================
# CERTIFIED REAL POWERS
# ============================================================================


def test_floor_pow_real_surd():
    sqrt2 = RefinableReal.parse("sqrt:2")
    assert floor_pow_real(4, sqrt2) == 7
    assert ceil_pow_real(4, sqrt2) == 8
    assert floor_pow_real(1, sqrt2) == 1


@pytest.mark.parametrize("u", [2, 100, 4101, 10 ** 30 + 7])
def test_floor_pow_real_matches_rational_path(u):
    third = RefinableReal.parse("rat:1/3")
    assert floor_pow_real(u, third) == floor_pow_rational(u, 1, 3)


def test_ceil_pow_real_exact_rational():
    assert ceil_pow_real(27, RefinableReal.parse("rat:1/3")) == 3
    assert ceil_pow_real(28, RefinableReal.parse("rat:1/3")) == 4


def test_floor_pow_real_large_exponent_sum():
    # floor(2^(k sqrt 2)) has exactly floor(k sqrt 2) + 1 binary digits
    sqrt2 = RefinableReal.parse("sqrt:2")
    k = 500
    value = floor_pow_real(2 ** k, sqrt2)
    assert value.bit_length() == integer_root(2 * k * k, 2) + 1


# ============================================================================
# DEMONSTRATIONS
# ============================================================================


def test_limsup_demo(golden):
    case = golden["demos"]["limsup"]
    alpha = RefinableReal.parse(case["alpha"])
    point = limsup_demo(case["base"], alpha, case["target"])

    assert point.k == case["k"]
    assert point.s_n == 1
    assert point.s_f > case["target"]
    assert floor_pow_real(2 ** point.k, alpha) == point.f_value
    assert digit_sum(point.f_value, 2) == point.s_f


@pytest.mark.parametrize("index", [0, 1])
def test_liminf_demo(golden, index):
    case = golden["demos"]["liminf"][index]
    alpha = RefinableReal.parse(case["alpha"])
    point = liminf_demo(case["base"], alpha, case["target"])

    assert point.k == case["k"]
    assert point.params["r"] == Fraction(case["r"])
    assert point.ratio_bound == Fraction(case["ratio_bound"])
    assert point.ratio <= point.ratio_bound
    assert floor_pow_real(point.n_value, alpha) == case["base"] ** point.k
    assert point.to_dict()["k"] == str(case["k"])


def test_demos_need_irrational_exponent():
    with pytest.raises(DomainError):
        limsup_demo(2, RefinableReal.parse("rat:1/2"), 5)
    with pytest.raises(DomainError):
        liminf_demo(2, RefinableReal.parse("sqrt:2"), 5)
