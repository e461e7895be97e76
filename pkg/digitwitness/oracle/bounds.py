"""
Binary Digit-Sum Bounds Check
=============================

Exhaustive check, over 4 <= n <= N, of the two classical binary inequalities

    s_2(n^2) * floor(log n) >= s_2(n)
    s_2(n^h) / s_2(n) <= 2 (h log n)^(1 - 1/h)

The first is decided in integers once floor(log n) is known exactly. The second
is screened in floating point and every candidate violation is re-decided with
interval arithmetic, after inflating the right side by 2^-32, so a reported n is
a certified violation.
"""

import bisect
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

import gmpy2

from digitwitness.config.settings import BOUNDS_INFLATION_BITS, BOUNDS_LOG_PRECISION
from digitwitness.errors import DomainError, UsageError
from digitwitness.numtheory.certified import certified_floor, interval_precision
from digitwitness.numtheory.radix import natural_to_text

logger = logging.getLogger(__name__)

LOG_BASES = ("2", "e")

# float screen margin; anything closer goes to the interval check
_SCREEN_SLACK = 1e-9


@dataclass(frozen=True)
class BoundsReport:
    """Violations of both inequalities over a checked range."""

    checked_range: Tuple[int, int]
    h: int
    log_base: str
    log_floor_violations: List[int]
    power_ratio_violations: List[int]
    melfi: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "checked_range": [natural_to_text(self.checked_range[0]), natural_to_text(self.checked_range[1])],
            "power": self.h,
            "log_base": self.log_base,
            "log_floor_violations": [natural_to_text(n) for n in self.log_floor_violations],
            "power_ratio_violations": [natural_to_text(n) for n in self.power_ratio_violations],
        }
        if self.melfi is not None:
            data["melfi_count"] = natural_to_text(self.melfi)
        return data


def _require_log_base(log_base: str) -> None:
    if log_base not in LOG_BASES:
        raise UsageError(f"log base must be 2 or e, got {log_base!r}")


@lru_cache(maxsize=None)
def _natural_log_thresholds(top: int) -> Tuple[int, ...]:
    """ceil(e^L) for L = 1..top; e^L is irrational so this is floor + 1."""
    return tuple(
        certified_floor(lambda ctx, power=power: ctx.exp(ctx.mpf(power)), magnitude_bits=2 * power + 2, label=f"e^{power}") + 1
        for power in range(1, top + 1)
    )


def floor_log(n: int, log_base: str = "2") -> int:
    """Exact floor(log n) for n >= 1."""
    _require_log_base(log_base)
    if n < 1:
        raise DomainError(f"log of {n} is undefined")
    if log_base == "2":
        return n.bit_length() - 1
    # ln n < bit_length(n) * ln 2 < bit_length(n)
    thresholds = _natural_log_thresholds(n.bit_length())
    return bisect.bisect_right(thresholds, n)


def violates_log_floor(n: int, log_base: str = "2") -> bool:
    """True when s_2(n^2) * floor(log n) < s_2(n)."""
    return gmpy2.popcount(n * n) * floor_log(n, log_base) < gmpy2.popcount(n)


def violates_power_ratio(n: int, h: int, log_base: str = "2") -> bool:
    """
    True when s_2(n^h)/s_2(n) exceeds 2 (h log n)^(1 - 1/h) by more than a factor 1 + 2^-32.

    Decided in interval arithmetic; an undecided comparison is not a violation.
    """
    _require_log_base(log_base)
    if n < 2 or h < 2:
        raise DomainError(f"power ratio bound needs n >= 2 and h >= 2, got n={n}, h={h}")
    num, den = int(gmpy2.popcount(gmpy2.mpz(n) ** h)), int(gmpy2.popcount(n))
    with interval_precision(BOUNDS_LOG_PRECISION) as ctx:
        log_n = ctx.ln(ctx.mpf(n))
        if log_base == "2":
            log_n = log_n / ctx.ln(ctx.mpf(2))
        exponent = ctx.mpf(h - 1) / h
        bound = 2 * ctx.exp(ctx.ln(h * log_n) * exponent)
        inflated = bound * (1 + ctx.mpf(2) ** -BOUNDS_INFLATION_BITS)
        return bool((ctx.mpf(num) / den) > inflated)


def _screen_power_ratio(n: int, h: int, log_base: str) -> bool:
    """Float pre-check; False means certainly within the bound."""
    num, den = gmpy2.popcount(gmpy2.mpz(n) ** h), gmpy2.popcount(n)
    log_n = math.log2(n) if log_base == "2" else math.log(n)
    bound = 2.0 * (h * log_n) ** (1.0 - 1.0 / h)
    return num / den > bound * (1.0 - _SCREEN_SLACK)


def stolarsky_check(limit: int, h: int = 2, log_base: str = "2") -> BoundsReport:
    """
    Check both binary inequalities for every 4 <= n <= limit.

    Args:
        limit: Largest n checked (>= 4)
        h: Power used in the ratio bound (>= 2)
        log_base: "2" or "e"

    Returns:
        BoundsReport listing every certified violation
    """
    _require_log_base(log_base)
    if limit < 4:
        raise DomainError(f"bounds check needs N >= 4, got {limit}")
    if h < 2:
        raise DomainError(f"power must be >= 2, got {h}")

    log_floor: List[int] = []
    power_ratio: List[int] = []
    candidates = 0
    for n in range(4, limit + 1):
        if violates_log_floor(n, log_base):
            log_floor.append(n)
        if _screen_power_ratio(n, h, log_base):
            candidates += 1
            if violates_power_ratio(n, h, log_base):
                power_ratio.append(n)

    logger.info(
        "Bounds check to %d (h=%d, log base %s): %d log-floor, %d power-ratio violations (%d screened)",
        limit,
        h,
        log_base,
        len(log_floor),
        len(power_ratio),
        candidates,
    )
    return BoundsReport(
        checked_range=(4, limit),
        h=h,
        log_base=log_base,
        log_floor_violations=log_floor,
        power_ratio_violations=power_ratio,
    )
