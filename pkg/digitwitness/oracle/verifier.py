"""
Independent Witness Verifier
============================

Recomputes f(u) = u^2 or floor(u^(h/m)) from the witness alone and reports
both digit sums. Constructors call this on every output before returning it.
"""

import logging
from fractions import Fraction
from typing import Optional

import gmpy2

from digitwitness.errors import ConstructionDefectError, DomainError
from digitwitness.numtheory.radix import digit_sum
from digitwitness.types.witness_schema import (
    ConstructionTrace,
    RatioTarget,
    WitnessReport,
    exponent_text,
)

logger = logging.getLogger(__name__)

SQUARE = Fraction(2)


def apply_exponent(u: int, exponent: Fraction) -> int:
    """floor(u^exponent) for a positive rational exponent, exactly."""
    if exponent <= 0:
        raise DomainError(f"exponent must be positive, got {exponent}")
    power = gmpy2.mpz(u) ** exponent.numerator
    if exponent.denominator == 1:
        return int(power)
    root, _exact = gmpy2.iroot(power, exponent.denominator)
    return int(root)


def verify_witness(u: int, q: int, exponent: Fraction = SQUARE) -> WitnessReport:
    """
    Verify a witness by direct arbitrary-precision arithmetic.

    Args:
        u: Candidate witness, at least 1
        q: Base
        exponent: 2 for squares, or a rational h/m

    Returns:
        WitnessReport with both digit sums, the reduced achieved ratio and verified = True
    """
    if u < 1:
        raise DomainError(f"witness must be >= 1, got {u}")
    f_u = apply_exponent(u, Fraction(exponent))
    s_u = digit_sum(u, q)
    s_fu = digit_sum(f_u, q)
    return WitnessReport(
        q=q,
        exponent=Fraction(exponent),
        witness=u,
        s_u=s_u,
        s_fu=s_fu,
        ratio=RatioTarget.of(s_fu, s_u),
        verified=True,
    )


def certify(
    u: int,
    q: int,
    target: RatioTarget,
    trace: Optional[ConstructionTrace],
    exponent: Fraction = SQUARE,
) -> WitnessReport:
    """
    Verify u and require the achieved ratio to equal target.

    Raises:
        ConstructionDefectError: if the independent ratio differs from target
    """
    report = verify_witness(u, q, exponent)
    if report.ratio != target:
        route = trace.route.value if trace is not None else "unknown"
        logger.error(
            "Route %s produced ratio %s instead of %s (base %d, exponent %s)",
            route, report.ratio, target, q, exponent_text(Fraction(exponent)),
        )
        raise ConstructionDefectError(
            f"route {route} in base {q} gave ratio {report.ratio}, expected {target}",
            user_message="The construction did not verify; no witness was returned.",
        )
    return report.with_trace(trace)
