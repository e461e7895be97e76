"""
Witness Cache
=============

Append-only line-delimited JSON store of verified witnesses keyed by
(base, ratio, exponent). Later lines supersede earlier ones; nothing is ever
rewritten in place.
"""

import json
import logging
import os
import threading
from dataclasses import replace
from fractions import Fraction
from typing import Callable, Dict, Optional

from digitwitness.errors import CacheCorruptionError, DigitWitnessError
from digitwitness.oracle.verifier import SQUARE
from digitwitness.services.witness_service import build_report, is_sound
from digitwitness.types.witness_schema import RatioTarget, WitnessReport, exponent_text

logger = logging.getLogger(__name__)

BUILT = "built"
CACHED = "cached"
REBUILT = "rebuilt"

Builder = Callable[[int, RatioTarget, Fraction], WitnessReport]


def cache_key(q: int, r: RatioTarget, exponent: Fraction = SQUARE) -> str:
    return f"{q}|{r}|{exponent_text(Fraction(exponent))}"


class WitnessCache:
    """
    File-backed witness cache.

    Every report served from the file is re-verified before it is returned.
    """

    def __init__(self, path: str):
        """
        Initialize the cache.

        Args:
            path: JSONL file; created on first append
        """
        self.path = path
        self._lock = threading.Lock()

    def load(self) -> Dict[str, WitnessReport]:
        """
        Read every entry, newest winning.

        Raises:
            CacheCorruptionError: naming the first unreadable line
        """
        entries: Dict[str, WitnessReport] = {}
        if not os.path.exists(self.path):
            return entries

        with open(self.path, "r", encoding="utf-8") as f:
            for line_number, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                    entries[record["key"]] = WitnessReport.from_dict(record["report"])
                except (ValueError, KeyError, TypeError, AttributeError, ZeroDivisionError, DigitWitnessError) as e:
                    raise CacheCorruptionError(
                        f"{self.path}:{line_number}: unreadable cache entry ({e})",
                        line_number=line_number,
                        user_message=f"Cache file {self.path} is corrupt at line {line_number}; "
                        "remove or repair that line.",
                    ) from None
        return entries

    def append(self, key: str, report: WitnessReport) -> None:
        """Append one entry as a single whole line."""
        line = json.dumps({"key": key, "report": report.to_dict()}, sort_keys=True) + "\n"
        directory = os.path.dirname(self.path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(line)

    def lookup_or_build(
        self,
        q: int,
        r: RatioTarget,
        exponent: Fraction = SQUARE,
        builder: Optional[Builder] = None,
    ) -> WitnessReport:
        """
        Serve a re-verified cached report, or build, append and return a new one.

        Args:
            q: Base
            r: Target ratio
            exponent: 2 or h/m
            builder: Report constructor (defaults to build_report)

        Returns:
            WitnessReport with cache_status set to built, cached or rebuilt
        """
        build = builder or build_report
        key = cache_key(q, r, exponent)
        cached = self.load().get(key)

        status = BUILT
        if cached is not None:
            if is_sound(cached, q, r, exponent):
                logger.info("Cache hit for %s", key)
                return replace(cached, verified=True, cache_status=CACHED)
            logger.warning("Cached witness for %s failed re-verification; rebuilding", key)
            status = REBUILT

        report = build(q, r, Fraction(exponent))
        self.append(key, report)
        logger.info("Cache %s entry for %s", status, key)
        return report.with_status(status)
