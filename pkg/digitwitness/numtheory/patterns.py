"""
Digit Pattern Constructors
==========================

Explicit digit patterns whose squares have predictable digit sums, their closed
forms, and calibration of the pattern constant e1.

Two families:
- the general block pattern (q-1)^(k) s (q-1)^(k+1) s ... s (q-1)^(k+m) s (q-1)^(n),
  with separator digit s = q-2;
- the single-gap patterns used for ratios in (1/2, 1) with q >= 3.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

from digitwitness.errors import (
    CalibrationInstabilityError,
    ConstructionDefectError,
    DomainError,
    HypothesisError,
    InvalidBaseError,
)
from digitwitness.numtheory.radix import RunLengthPattern, digit_sum, from_pattern

logger = logging.getLogger(__name__)


# ============================================================================
# CONSTANTS
# ============================================================================


@dataclass(frozen=True)
class Constants:
    """Calibrated constants of the block pattern for one (q, m)."""

    q: int
    m: int
    e1: int
    e2: int
    d: int
    e3: Optional[int] = None
    e4: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"q": self.q, "m": self.m, "e1": self.e1, "e2": self.e2, "d": self.d}
        if self.e3 is not None:
            data["e3"] = self.e3
            data["e4"] = self.e4
        return data


@dataclass(frozen=True)
class CalibrationRecord:
    """Constants plus the (k, n, s_q(u^2)) samples that fixed e1."""

    constants: Constants
    samples: Tuple[Tuple[int, int, int], ...]
    exponents: Tuple[int, ...]

    def to_dict(self) -> Dict[str, Any]:
        data = self.constants.to_dict()
        data["samples"] = [{"k": k, "n": n, "s_u_sq": s} for k, n, s in self.samples]
        data["exponents"] = list(self.exponents)
        return data


def triangular(m: int) -> int:
    return m * (m + 1) // 2


def closed_e2(q: int, m: int) -> int:
    """Digit-sum excess of the block pattern over (q-1)(k(m+1)+n)."""
    if q == 2:
        return triangular(m)
    return (q - 2) * (m + 1) + (q - 1) * triangular(m)


def closed_d(m: int) -> int:
    return triangular(m) + (m + 1) + 1


def _check_general(q: int, m: int, k: int, n: int) -> None:
    if q < 2:
        raise InvalidBaseError(f"base must be >= 2, got {q}")
    if m < 0 or k < 1 or n < 1:
        raise DomainError(f"block pattern needs m >= 0, k >= 1, n >= 1; got m={m}, k={k}, n={n}")


# ============================================================================
# BLOCK PATTERN
# ============================================================================


def general_pattern(q: int, m: int, k: int, n: int) -> RunLengthPattern:
    """Run-length form of the block pattern."""
    _check_general(q, m, k, n)
    top, sep = q - 1, q - 2
    runs: List[Tuple[int, int]] = []
    for i in range(m + 1):
        runs.append((top, k + i))
        runs.append((sep, 1))
    runs.append((top, n))
    return RunLengthPattern.build(q, runs)


def pattern_general(q: int, m: int, k: int, n: int) -> int:
    """
    Integer whose base-q expansion is the block pattern.

    Args:
        q: Base, at least 2
        m: Number of separators minus one
        k: Length of the first run
        n: Length of the final run

    Returns:
        The pattern value; digit sum (q-1)(k(m+1)+n) + e2
    """
    return from_pattern(general_pattern(q, m, k, n))


def pattern_general_digit_sum(q: int, m: int, k: int, n: int) -> int:
    """Digit sum of pattern_general by counting."""
    _check_general(q, m, k, n)
    return (q - 1) * (k * (m + 1) + n) + closed_e2(q, m)


def ladder_exponents(m: int, k: int, n: int) -> Tuple[int, ...]:
    """
    Separator ladder c_1 > c_2 > ... > c_(m+2) = n with c_i - c_(i+1) = k + i.

    The pattern equals q^c_1 - 1 - sum_(i>=2) q^c_i.
    """
    ladder = [n]
    for i in range(m + 1, 0, -1):
        ladder.append(ladder[-1] + k + i)
    ladder.reverse()
    return tuple(ladder)


@lru_cache(maxsize=None)
def calibrate(q: int, m: int) -> CalibrationRecord:
    """
    Fix e1 for (q, m) from a 3x3 grid of squared block patterns.

    Raises:
        HypothesisError: q >= 3 and (q-1) does not divide m+1
        CalibrationInstabilityError: grid samples disagree on e1
    """
    if q < 2:
        raise InvalidBaseError(f"base must be >= 2, got {q}")
    if m < 0:
        raise DomainError(f"m must be >= 0, got {m}")
    if q >= 3 and (m + 1) % (q - 1) != 0:
        raise HypothesisError(
            f"calibration in base {q} needs (q-1) | (m+1); got m={m}",
            user_message=f"In base {q}, m+1 must be a multiple of {q - 1}.",
        )

    e2, d = closed_e2(q, m), closed_d(m)
    k0 = max(1, 2 * m * (m + 1))
    samples: List[Tuple[int, int, int]] = []
    inferred = set()
    exponents: Tuple[int, ...] = ()
    for k in range(k0, k0 + 3):
        for n in range((m + 1) * k + d + 1, (m + 1) * k + d + 4):
            u = pattern_general(q, m, k, n)
            ladder = ladder_exponents(m, k, n)
            if u != q ** ladder[0] - 1 - sum(q ** c for c in ladder[1:]):
                raise ConstructionDefectError(f"separator ladder mismatch at q={q}, m={m}, k={k}")
            if not exponents:
                exponents = ladder
            s_sq = digit_sum(u * u, q)
            samples.append((k, n, s_sq))
            inferred.add(s_sq - (q - 1) * (n - m * k))

    if len(inferred) != 1:
        logger.error("Calibration q=%d m=%d unstable: e1 candidates %s", q, m, sorted(inferred))
        raise CalibrationInstabilityError(
            f"calibration for q={q}, m={m} produced e1 values {sorted(inferred)}",
            user_message="The pattern constant is not stable for these parameters.",
        )
    e1 = inferred.pop()
    e3 = e4 = None
    if q >= 3:
        e3, e4 = e2 // (q - 1), e1 // (q - 1)
    constants = Constants(q=q, m=m, e1=e1, e2=e2, d=d, e3=e3, e4=e4)
    logger.info("Calibrated q=%d m=%d: e1=%d e2=%d d=%d", q, m, e1, e2, d)
    return CalibrationRecord(constants=constants, samples=tuple(samples), exponents=exponents)


# ============================================================================
# GAP PATTERNS
# ============================================================================


def gap_min_n(q: int, k: int) -> int:
    """Smallest n for which the gap-pattern closed forms hold."""
    return k + 2 if q >= 5 else k + 3


def _check_gap(q: int, k: int, n: int) -> None:
    if q < 3:
        raise InvalidBaseError(
            f"gap patterns need base >= 3, got {q}",
            user_message="Gap patterns are defined for bases 3 and up.",
        )
    if k < 1:
        raise DomainError(f"gap pattern needs k >= 1, got {k}")
    minimum = gap_min_n(q, k)
    if n < minimum:
        raise HypothesisError(
            f"base {q} gap pattern needs n >= k+{minimum - k}; got k={k}, n={n}",
            user_message=f"For base {q}, n must be at least k+{minimum - k}.",
        )


def gap_runs(q: int, k: int, n: int) -> RunLengthPattern:
    _check_gap(q, k, n)
    if q >= 5:
        runs = [(q - 1, k), (0, 1), (q - 1, n)]
    elif q == 4:
        runs = [(1, 1), (3, k), (2, 1), (3, n)]
    else:
        runs = [(1, 1), (2, k), (1, 1), (2, n)]
    return RunLengthPattern.build(q, runs)


def gap_pattern(q: int, k: int, n: int) -> int:
    """Single-gap witness: (q-1)^(k) 0 (q-1)^(n), 1 3^(k) 2 3^(n) or 1 2^(k) 1 2^(n)."""
    return from_pattern(gap_runs(q, k, n))


def gap_closed_forms(q: int, k: int, n: int) -> Tuple[int, int]:
    """Predicted (s_q(u), s_q(u^2)) for u = gap_pattern(q, k, n)."""
    _check_gap(q, k, n)
    if q >= 5:
        return (q - 1) * (n + k), (q - 1) * (n + 1)
    if q == 4:
        return 3 + 3 * (k + n), 3 * n
    return 2 + 2 * (k + n), 2 * n + 2


def doubled_square_check(q: int, k: int, n: int) -> bool:
    """True iff s_q(2u^2) = s_q(u^2) for u = gap_pattern(q, k, n)."""
    u = gap_pattern(q, k, n)
    square = u * u
    return digit_sum(2 * square, q) == digit_sum(square, q)
