"""
Application Settings
===================

All configuration constants for the digit-witness library and CLI.
"""

import logging
import os

logger = logging.getLogger(__name__)


def _env_int(name: str, default: int, minimum: int = 1) -> int:
    """Read a positive integer override from the environment, falling back to default."""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning("Ignoring %s=%r: not an integer", name, raw)
        return default
    if value < minimum:
        logger.warning("Ignoring %s=%r: must be >= %d", name, raw, minimum)
        return default
    return value


# ============================================================================
# CERTIFIED EVALUATION
# ============================================================================

# Fractional bits used on the first interval evaluation of u^alpha
PRECISION_START_BITS = 128

# Hard cap on fractional bits before a floor is declared indeterminate
DEFAULT_MAX_PRECISION_BITS = 2 ** 20


def max_precision_bits() -> int:
    """Precision cap, overridable through DIGITWITNESS_MAX_PRECISION."""
    return _env_int("DIGITWITNESS_MAX_PRECISION", DEFAULT_MAX_PRECISION_BITS, minimum=PRECISION_START_BITS)


# Bits of slack added to the integer part when sizing interval contexts
PRECISION_GUARD_BITS = 32

# ============================================================================
# SOLVER SEARCH LIMITS
# ============================================================================

# Upper bound on the block-count parameter m searched by witness_lt1
M_SEARCH_CAP = 10 ** 6

# Upper bound on the free parameter t once m is fixed (in multiples of 2m+1)
T_SEARCH_SPAN = 10 ** 6

# Block spacing for the chained-block amplification: "sidon" or "binary"
CHAIN_SPACING = "sidon"

# ============================================================================
# FRACTIONAL EXPONENT LADDER
# ============================================================================

# Upper bound on the scale integer w
FRAC_W_CAP = 10 ** 4

# Upper bound on the main exponent scale n (in multiples of h)
FRAC_N_CAP = 10 ** 6

# Continued-fraction convergents examined by limsup_demo
CONVERGENT_SEARCH_CAP = 200

# Largest denominator tried for the rational r in liminf_demo before widening
LIMINF_DENOMINATOR = 8

# ============================================================================
# ORACLE / SCAN
# ============================================================================

SCAN_CHUNK_SIZE = 2 ** 16

# Largest n whose square still fits in a signed 64-bit integer
INT64_SQUARE_LIMIT = 3_037_000_499

# Relative slack applied to the right side of the power bound before a violation is reported
BOUNDS_INFLATION_BITS = 32

# Working precision for logarithms in the bounds check
BOUNDS_LOG_PRECISION = 128


def scan_workers() -> int:
    """Worker processes for scan/melfi_count, overridable through DIGITWITNESS_SCAN_WORKERS."""
    return _env_int("DIGITWITNESS_SCAN_WORKERS", os.cpu_count() or 1)


# ============================================================================
# LOGGING
# ============================================================================

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def log_level() -> int:
    """Log level name from DIGITWITNESS_LOG_LEVEL (default WARNING)."""
    name = os.getenv("DIGITWITNESS_LOG_LEVEL", "WARNING").upper()
    level = logging.getLevelName(name)
    if not isinstance(level, int):
        logger.warning("Ignoring DIGITWITNESS_LOG_LEVEL=%r", name)
        return logging.WARNING
    return level
