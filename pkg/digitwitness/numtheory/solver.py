"""
Ratio Solver
============

Turns a target ratio a/c into a verified witness u with s_q(u^2)/s_q(u) = a/c.

Routes:
- block pattern with calibrated constants, for 0 < r < 1 (any base);
- binary amplification by 3/2 steps, for r >= 1 in base 2;
- single-gap patterns, for 1/2 < r < 1 and q >= 3;
- chained blocks over a gap witness, for r >= 1 and q >= 3.
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

import gmpy2

from digitwitness.config.settings import CHAIN_SPACING, M_SEARCH_CAP, T_SEARCH_SPAN
from digitwitness.errors import (
    ConstructionDefectError,
    DomainError,
    InvalidBaseError,
    RatioRangeError,
    SearchExhaustedError,
)
from digitwitness.numtheory.patterns import calibrate, gap_min_n, gap_pattern, pattern_general
from digitwitness.oracle.verifier import certify
from digitwitness.types.witness_schema import (
    AmplifyStep,
    ChainParams,
    ConstructionTrace,
    RatioTarget,
    Route,
    WitnessReport,
)

logger = logging.getLogger(__name__)


# ============================================================================
# BLOCK PATTERN ROUTE (0 < r < 1)
# ============================================================================


def select_m(q: int, r: RatioTarget) -> int:
    """Smallest m with 1/(2(m+1)) < a/c, gcd(2m+1, c-a) = 1 and, for q >= 3, (q-1) | (m+1)."""
    gap = r.c - r.a
    for m in range(M_SEARCH_CAP + 1):
        if Fraction(1, 2 * (m + 1)) >= r.fraction:
            continue
        if math.gcd(2 * m + 1, gap) != 1:
            continue
        if q >= 3 and (m + 1) % (q - 1) != 0:
            continue
        return m
    raise SearchExhaustedError(
        f"no admissible m <= {M_SEARCH_CAP} for base {q}, ratio {r}",
        user_message="Parameter search exhausted; try a different ratio.",
    )


def select_parameters(q: int, r: RatioTarget) -> Tuple[int, int, int, int]:
    """
    Canonical (m, t, k, n) for the block pattern route.

    Returns:
        Tuple of (m, t, k, n) with each value minimal under the route's inequalities
    """
    m = select_m(q, r)
    consts = calibrate(q, m).constants
    if q == 2:
        e_low, e_high = consts.e1, consts.e2
    else:
        e_low, e_high = consts.e4, consts.e3
    modulus = 2 * m + 1
    gap = r.c - r.a
    floor_t = max(2 * m * (consts.d + e_low) + consts.d + 2 * e_low - e_high, e_low, 0)
    k_min = max(1, 2 * m * (m + 1))

    for t in range(floor_t + 1, floor_t + 1 + T_SEARCH_SPAN * modulus):
        numerator = t * gap + e_low - e_high
        if numerator % modulus:
            continue
        k = numerator // modulus
        if k < k_min:
            continue
        n = t * r.a + m * k - e_low
        if n <= (m + 1) * k + consts.d:
            continue
        logger.info("Block pattern q=%d r=%s: m=%d t=%d k=%d n=%d", q, r, m, t, k, n)
        return m, t, k, n
    raise SearchExhaustedError(f"no admissible t for base {q}, ratio {r}, m={m}")


def witness_lt1(q: int, r: RatioTarget) -> WitnessReport:
    """
    Verified block-pattern witness for a ratio below 1.

    Raises:
        RatioRangeError: if r >= 1
        ConstructionDefectError: if the witness fails independent verification
    """
    if q < 2:
        raise InvalidBaseError(f"base must be >= 2, got {q}")
    if r.a >= r.c:
        raise RatioRangeError(
            f"block pattern route needs ratio < 1, got {r}",
            user_message="This construction only handles ratios below 1.",
        )
    m, t, k, n = select_parameters(q, r)
    route = Route.BASE2_PATTERN if q == 2 else Route.BASEQ_PATTERN
    trace = ConstructionTrace(route=route, m=m, t=t, k=k, n=n)
    return certify(pattern_general(q, m, k, n), q, r, trace)


# ============================================================================
# BINARY AMPLIFICATION (r >= 1, q = 2)
# ============================================================================


def amplify_step(u: int) -> Tuple[int, AmplifyStep]:
    if u < 1:
        raise DomainError(f"amplification needs u >= 1, got {u}")
    w = u.bit_length()
    return ((1 << (2 * w + 1)) + 1) * u, AmplifyStep(w)


def amplify_base2(u: int) -> int:
    """v = (2^(2w+1) + 1) u with 2^w > u; doubles s_2(u) and triples s_2(u^2)."""
    return amplify_step(u)[0]


def amplification_count(r: RatioTarget) -> int:
    """Smallest s with (2/3)^s r < 1."""
    s = 0
    while 2 ** s * r.a >= 3 ** s * r.c:
        s += 1
    return s


def witness_base2(r: RatioTarget) -> WitnessReport:
    """Base-2 witness for any positive ratio."""
    if r.a < r.c:
        return witness_lt1(2, r)
    s = amplification_count(r)
    reduced = RatioTarget.of(2 ** s * r.a, 3 ** s * r.c)
    base = witness_lt1(2, reduced)
    u = base.witness
    steps: List[AmplifyStep] = []
    for _ in range(s):
        u, step = amplify_step(u)
        steps.append(step)
    logger.info("Amplified base-2 witness %d times from ratio %s to %s", s, reduced, r)
    inner = base.trace
    trace = ConstructionTrace(
        route=Route.BASE2_AMPLIFIED,
        m=inner.m if inner else None,
        t=inner.t if inner else None,
        k=inner.k if inner else None,
        n=inner.n if inner else None,
        inner_ratio=reduced,
        amplification=tuple(steps),
    )
    return certify(u, 2, r, trace)


# ============================================================================
# GAP PATTERN ROUTE (1/2 < r < 1, q >= 3)
# ============================================================================


def mid_parameters(q: int, r: RatioTarget) -> Tuple[int, int]:
    """(k, n) for the single-gap witness of r in (1/2, 1)."""
    a, c = r.a, r.c
    if q >= 5:
        return 4 * (c - a) + 1, 4 * a - 1
    if q == 4:
        k, n = 2 * (c - a) - 1, 2 * a
        if n < gap_min_n(q, k):
            k, n = 4 * (c - a) - 1, 4 * a
        return k, n
    scale = 2
    return 3 * scale * (c - a), 3 * scale * a - 1


def witness_mid(q: int, r: RatioTarget) -> WitnessReport:
    """
    Verified single-gap witness for 1/2 < r < 1.

    Raises:
        RatioRangeError: if r is outside (1/2, 1)
    """
    if q < 3:
        raise InvalidBaseError(f"gap witnesses need base >= 3, got {q}")
    if not (2 * r.a > r.c and r.a < r.c):
        raise RatioRangeError(
            f"gap route needs 1/2 < r < 1, got {r}",
            user_message="This construction only handles ratios strictly between 1/2 and 1.",
        )
    k, n = mid_parameters(q, r)
    trace = ConstructionTrace(route=Route.BASEQ_GAP, k=k, n=n)
    return certify(gap_pattern(q, k, n), q, r, trace)


# ============================================================================
# CHAINED BLOCKS (r >= 1, q >= 3)
# ============================================================================


@lru_cache(maxsize=None)
def mian_chowla(count: int) -> Tuple[int, ...]:
    """First count terms of the greedy Sidon sequence 1, 2, 4, 8, 13, 21, ..."""
    terms: List[int] = []
    sums = set()
    candidate = 1
    while len(terms) < count:
        new_sums = {candidate + x for x in terms} | {2 * candidate}
        if not new_sums & sums:
            terms.append(candidate)
            sums |= new_sums
        candidate += 1
    return tuple(terms)


def chain_multipliers(d: int, spacing: str = CHAIN_SPACING) -> Tuple[int, ...]:
    """Even multipliers with pairwise-distinct sums; 'binary' gives 2, 4, ..., 2^d."""
    if spacing == "binary":
        return tuple(2 ** e for e in range(1, d + 1))
    if spacing == "sidon":
        return tuple(2 * b for b in mian_chowla(d))
    raise DomainError(f"unknown chain spacing {spacing!r}")


def separation_exponent(q: int, u: int) -> int:
    """Smallest m with q^m > u."""
    m = int(gmpy2.num_digits(gmpy2.mpz(u), q))
    while m > 0 and q ** (m - 1) > u:
        m -= 1
    return m


def chain_params(q: int, u: int, d: int, spacing: str = CHAIN_SPACING) -> ChainParams:
    if q < 3:
        raise InvalidBaseError(f"chained blocks need base >= 3, got {q}")
    if d < 1:
        raise DomainError(f"chain length must be >= 1, got {d}")
    if u < 1:
        raise DomainError(f"chain needs u >= 1, got {u}")
    return ChainParams(
        d=d,
        m=separation_exponent(q, u),
        t_d=d * (d + 1) // 2,
        multipliers=chain_multipliers(d, spacing),
    )


def chain_value(q: int, u: int, params: ChainParams) -> int:
    shift = params.m + 1
    return sum(q ** (mult * shift) for mult in params.multipliers) * u


def amplify_chain(q: int, u: int, d: int, spacing: str = CHAIN_SPACING) -> int:
    """
    Sum of d shifted copies of u.

    Multiplies s_q(u) by d and, when s_q(2u^2) = s_q(u^2), multiplies s_q(u^2) by d(d+1)/2.
    """
    return chain_value(q, u, chain_params(q, u, d, spacing))


def witness_chain(q: int, r: RatioTarget) -> WitnessReport:
    """Witness for r >= 1 and q >= 3 from a chained gap witness."""
    d = 2 * r.a // r.c
    inner_ratio = RatioTarget.of(2 * r.a, r.c * (d + 1))
    inner = witness_mid(q, inner_ratio)
    params = chain_params(q, inner.witness, d)
    logger.info("Chaining %d blocks over gap witness for %s (target %s)", d, inner_ratio, r)
    trace = ConstructionTrace(
        route=Route.BASEQ_CHAIN,
        k=inner.trace.k if inner.trace else None,
        n=inner.trace.n if inner.trace else None,
        inner_ratio=inner_ratio,
        chain=params,
    )
    return certify(chain_value(q, inner.witness, params), q, r, trace)


# ============================================================================
# DISPATCH
# ============================================================================


def witness(q: int, r: RatioTarget) -> WitnessReport:
    """
    Verified witness with s_q(u^2)/s_q(u) = r for any base q >= 2 and positive r.

    Args:
        q: Base
        r: Target ratio

    Returns:
        WitnessReport with verified = True
    """
    if q < 2:
        raise InvalidBaseError(f"base must be >= 2, got {q}", user_message="Base must be at least 2.")
    if q == 2:
        return witness_base2(r)
    if r.a >= r.c:
        return witness_chain(q, r)
    if 2 * r.a > r.c:
        try:
            return witness_mid(q, r)
        except ConstructionDefectError:
            logger.warning("Gap route failed for base %d ratio %s; using block pattern", q, r)
    return witness_lt1(q, r)
