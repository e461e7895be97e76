"""
Brute-Force Ratio Scan
======================

Enumerates 1 <= n <= N and tabulates the reduced ratio s_q(n^2)/s_q(n) with its
smallest witness and frequency, plus the exact count of n with s_2(n) = s_2(n^2).

Work is split into disjoint chunks that run in worker processes. Chunks produce
small pandas frames keyed by (num, den); merging takes the minimum witness and
sums counts, so any chunking gives the same table.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from digitwitness.config.settings import INT64_SQUARE_LIMIT, SCAN_CHUNK_SIZE, scan_workers
from digitwitness.errors import DomainError, InvalidBaseError
from digitwitness.numtheory.radix import digit_sum, natural_to_text

logger = logging.getLogger(__name__)

_KEYS = ["num", "den"]


# ============================================================================
# TYPES
# ============================================================================


@dataclass(frozen=True)
class RatioEntry:
    min_witness: int
    count: int


@dataclass(frozen=True)
class RatioTable:
    """Reduced ratios observed for 1 <= n <= limit, in increasing order."""

    q: int
    limit: int
    entries: Dict[Fraction, RatioEntry]

    @property
    def extremes(self) -> Tuple[Tuple[Fraction, int], Tuple[Fraction, int]]:
        """((smallest ratio, its witness), (largest ratio, its witness))."""
        ratios = list(self.entries)
        low, high = ratios[0], ratios[-1]
        return (low, self.entries[low].min_witness), (high, self.entries[high].min_witness)

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {"ratio": f"{r.numerator}/{r.denominator}", "min_witness": natural_to_text(e.min_witness), "count": natural_to_text(e.count)}
            for r, e in self.entries.items()
        ]
        return pd.DataFrame(rows, columns=["ratio", "min_witness", "count"])

    def to_dict(self) -> Dict[str, Any]:
        (low, low_n), (high, high_n) = self.extremes
        return {
            "base": self.q,
            "limit": natural_to_text(self.limit),
            "entries": self.to_frame().to_dict(orient="records"),
            "extremes": {
                "min": {"ratio": f"{low.numerator}/{low.denominator}", "witness": natural_to_text(low_n)},
                "max": {"ratio": f"{high.numerator}/{high.denominator}", "witness": natural_to_text(high_n)},
            },
        }


# ============================================================================
# CHUNK KERNELS
# ============================================================================


def _vector_digit_sums(values: np.ndarray, q: int) -> np.ndarray:
    remaining = values.copy()
    total = np.zeros_like(values)
    while remaining.any():
        total += remaining % q
        remaining //= q
    return total


def _chunk_sums(q: int, lo: int, hi: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(n, s_q(n), s_q(n^2)) for lo <= n <= hi."""
    if hi <= INT64_SQUARE_LIMIT:
        n = np.arange(lo, hi + 1, dtype=np.int64)
        return n, _vector_digit_sums(n, q), _vector_digit_sums(n * n, q)
    values = range(lo, hi + 1)
    s_n = np.fromiter((digit_sum(v, q) for v in values), dtype=np.int64, count=len(values))
    s_sq = np.fromiter((digit_sum(v * v, q) for v in values), dtype=np.int64, count=len(values))
    return np.array(values, dtype=object), s_n, s_sq


def scan_chunk(q: int, lo: int, hi: int) -> pd.DataFrame:
    """Per-ratio minimum witness and count over one chunk."""
    n, s_n, s_sq = _chunk_sums(q, lo, hi)
    g = np.gcd(s_sq, s_n)
    frame = pd.DataFrame({"num": s_sq // g, "den": s_n // g, "n": n})
    return frame.groupby(_KEYS, sort=True).agg(min_witness=("n", "min"), count=("n", "size")).reset_index()


def melfi_chunk(lo: int, hi: int) -> int:
    """Count of lo <= n <= hi with s_2(n) = s_2(n^2)."""
    _n, s_n, s_sq = _chunk_sums(2, lo, hi)
    return int(np.count_nonzero(s_n == s_sq))


def merge_frames(frames: Sequence[pd.DataFrame]) -> pd.DataFrame:
    """Combine chunk frames: minimum witness, summed counts."""
    combined = pd.concat(frames, ignore_index=True)
    return combined.groupby(_KEYS, sort=True).agg(min_witness=("min_witness", "min"), count=("count", "sum")).reset_index()


def chunk_bounds(limit: int, size: int) -> List[Tuple[int, int]]:
    return [(lo, min(lo + size - 1, limit)) for lo in range(1, limit + 1, size)]


def _run_chunks(kernel: Callable[..., Any], arg_lists: List[Tuple[Any, ...]], workers: int) -> List[Any]:
    if workers <= 1 or len(arg_lists) <= 1:
        return [kernel(*args) for args in arg_lists]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(kernel, *zip(*arg_lists)))


# ============================================================================
# OPERATIONS
# ============================================================================


def scan(q: int, limit: int, chunk_size: Optional[int] = None, workers: Optional[int] = None) -> RatioTable:
    """
    Tabulate s_q(n^2)/s_q(n) over 1 <= n <= limit.

    Args:
        q: Base
        limit: Largest n scanned
        chunk_size: Numbers per chunk (default 2^16)
        workers: Worker processes (default from DIGITWITNESS_SCAN_WORKERS)

    Returns:
        RatioTable with entries in increasing ratio order
    """
    if q < 2:
        raise InvalidBaseError(f"base must be >= 2, got {q}")
    if limit < 1:
        raise DomainError(f"scan limit must be >= 1, got {limit}")
    bounds = chunk_bounds(limit, chunk_size or SCAN_CHUNK_SIZE)
    worker_count = workers if workers is not None else scan_workers()
    logger.info("Scanning base %d up to %d in %d chunks", q, limit, len(bounds))
    frames = _run_chunks(scan_chunk, [(q, lo, hi) for lo, hi in bounds], worker_count)
    merged = merge_frames(frames)

    rows = sorted(
        (Fraction(int(num), int(den)), RatioEntry(int(least), int(count)))
        for num, den, least, count in merged[["num", "den", "min_witness", "count"]].itertuples(index=False, name=None)
    )
    return RatioTable(q=q, limit=limit, entries=dict(rows))


def melfi_count(limit: int, chunk_size: Optional[int] = None, workers: Optional[int] = None) -> int:
    """Exact number of n <= limit with s_2(n) = s_2(n^2)."""
    if limit < 1:
        raise DomainError(f"count limit must be >= 1, got {limit}")
    bounds = chunk_bounds(limit, chunk_size or SCAN_CHUNK_SIZE)
    worker_count = workers if workers is not None else scan_workers()
    return sum(_run_chunks(melfi_chunk, list(bounds), worker_count))
