"""
Witness Service
===============

Routes a (base, ratio, exponent) request to the matching constructor and checks
reports that come back from storage.
"""

import logging
from fractions import Fraction

from digitwitness.errors import DigitWitnessError, UnsupportedExponentError
from digitwitness.numtheory import solver
from digitwitness.numtheory.fracpow import witness_frac
from digitwitness.numtheory.replay import replay_trace
from digitwitness.oracle.verifier import SQUARE, verify_witness
from digitwitness.types.witness_schema import RatioTarget, WitnessReport, exponent_text

logger = logging.getLogger(__name__)


def build_report(q: int, r: RatioTarget, exponent: Fraction = SQUARE) -> WitnessReport:
    """
    Build a verified witness for s_q(f(u))/s_q(u) = r.

    Args:
        q: Base
        r: Target ratio
        exponent: 2 for squares, or h/m <= 1/2 for floor(u^(h/m))

    Returns:
        Verified WitnessReport with its construction trace

    Raises:
        UnsupportedExponentError: for exponents other than 2 and h/m <= 1/2
    """
    exponent = Fraction(exponent)
    logger.info("Building witness: base %d, ratio %s, exponent %s", q, r, exponent_text(exponent))
    if exponent == SQUARE:
        return solver.witness(q, r)
    if exponent < 1:
        return witness_frac(q, exponent.numerator, exponent.denominator, r)
    raise UnsupportedExponentError(
        f"no construction for exponent {exponent_text(exponent)}",
        user_message="Supported exponents are 2 and fractions h/m up to 1/2.",
    )


def is_sound(report: WitnessReport, q: int, r: RatioTarget, exponent: Fraction = SQUARE) -> bool:
    """
    Re-verify a stored report in this process.

    The witness must reproduce both recorded digit sums and the requested ratio,
    and its trace, when present, must replay to the same witness.
    """
    if report.q != q or report.exponent != Fraction(exponent) or report.witness < 1:
        return False
    fresh = verify_witness(report.witness, q, exponent)
    if (fresh.s_u, fresh.s_fu, fresh.ratio) != (report.s_u, report.s_fu, r):
        return False
    if report.trace is None:
        return True
    try:
        return replay_trace(q, report.trace) == report.witness
    except (DigitWitnessError, KeyError, TypeError, ValueError) as e:
        logger.warning("Stored trace does not replay: %s", e)
        return False
