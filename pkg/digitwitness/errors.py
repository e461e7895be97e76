"""
Errors (user-friendly catalog)
==============================

Every failure raised by the library derives from DigitWitnessError so the CLI can
turn it into a structured error object. See docs/ERROR_CATALOG.md.
"""

from typing import Any, Dict, Optional


class DigitWitnessError(Exception):
    """Base for digit-witness errors."""

    def __init__(self, message: str, user_message: Optional[str] = None):
        super().__init__(message)
        self.user_message = user_message or message


class InvalidBaseError(DigitWitnessError):
    """Radix outside the range an operation accepts."""


class MalformedPatternError(DigitWitnessError):
    """Run-length pattern violates its canonical-form rules or cannot be parsed."""


class DomainError(DigitWitnessError):
    """Argument outside the mathematical domain of an operation."""


class HypothesisError(DigitWitnessError):
    """Parameters violate the hypothesis a closed form depends on."""


class CalibrationInstabilityError(DigitWitnessError):
    """Calibration samples disagree on the inferred constant."""


class RatioRangeError(DigitWitnessError):
    """Target ratio outside the range a constructor handles."""


class ConstructionDefectError(DigitWitnessError):
    """A constructed witness failed independent verification."""


class SearchExhaustedError(DigitWitnessError):
    """A bounded parameter search ran out before finding a value."""


class UnsupportedExponentError(DigitWitnessError):
    """Exponent outside the supported construction domain."""


class IndeterminateFloorError(DigitWitnessError):
    """Certified evaluation could not decide a floor within the precision cap."""


class CacheCorruptionError(DigitWitnessError):
    """Witness cache file contains an unreadable line."""

    def __init__(self, message: str, line_number: int, user_message: Optional[str] = None):
        super().__init__(message, user_message)
        self.line_number = line_number


class UsageError(DigitWitnessError):
    """Command configuration is incomplete or contradictory."""


def error_payload(e: Exception) -> Dict[str, Any]:
    """Map an exception to the structured error object printed by the CLI."""
    if isinstance(e, DigitWitnessError):
        body: Dict[str, Any] = {
            "type": type(e).__name__,
            "message": str(e),
            "user_message": e.user_message,
        }
        if isinstance(e, CacheCorruptionError):
            body["line_number"] = e.line_number
        return {"error": body}
    return {
        "error": {
            "type": type(e).__name__,
            "message": str(e),
            "user_message": "An unexpected error occurred. Check the logs for details.",
        }
    }
