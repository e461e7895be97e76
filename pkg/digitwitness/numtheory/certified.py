"""
Certified floors by interval arithmetic.

An expression is evaluated in mpmath's interval context with outward rounding;
the floor is accepted once both interval endpoints share it. Precision doubles
until that happens or the cap is reached.
"""

import logging
import threading
from contextlib import contextmanager
from typing import Any, Callable, Iterator, Optional

from mpmath import iv

from digitwitness.config.settings import (
    PRECISION_GUARD_BITS,
    PRECISION_START_BITS,
    max_precision_bits,
)
from digitwitness.errors import DomainError, IndeterminateFloorError

logger = logging.getLogger(__name__)

# iv.prec is process-global
_IV_LOCK = threading.Lock()


@contextmanager
def interval_precision(bits: int) -> Iterator[Any]:
    """Hold the interval context at the given working precision."""
    with _IV_LOCK:
        saved = iv.prec
        try:
            iv.prec = bits
            yield iv
        finally:
            iv.prec = saved


def certified_floor(
    evaluate: Callable[[Any], Any],
    magnitude_bits: int,
    max_precision: Optional[int] = None,
    label: str = "expression",
) -> int:
    """
    Floor of a positive real given as an interval-valued expression.

    Args:
        evaluate: Called with the interval context; returns an interval enclosing the value
        magnitude_bits: Upper bound on the bit length of the integer part
        max_precision: Fractional-bit cap (defaults to the configured cap)
        label: Name used in log and error messages

    Returns:
        The certified floor

    Raises:
        IndeterminateFloorError: if the cap is reached with the floor still ambiguous
    """
    cap = max_precision if max_precision is not None else max_precision_bits()
    frac_bits = min(PRECISION_START_BITS, cap)
    while True:
        with interval_precision(magnitude_bits + frac_bits + PRECISION_GUARD_BITS) as ctx:
            enclosure = evaluate(ctx)
            lower, upper = enclosure.a, enclosure.b
            if lower < 0:
                raise DomainError(f"{label} is not positive")
            low_floor, high_floor = int(lower), int(upper)
        if low_floor == high_floor:
            return low_floor
        if frac_bits >= cap:
            raise IndeterminateFloorError(
                f"floor of {label} undecided at {frac_bits} fractional bits",
                user_message="The value is too close to an integer to certify its floor; "
                "raise DIGITWITNESS_MAX_PRECISION or choose other inputs.",
            )
        logger.debug("Floor of %s ambiguous at %d bits; doubling", label, frac_bits)
        frac_bits = min(2 * frac_bits, cap)
