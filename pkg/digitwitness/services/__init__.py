"""
Witness Services
================

Report building by exponent and the on-disk witness cache.
"""

from digitwitness.services.witness_cache import WitnessCache, cache_key
from digitwitness.services.witness_service import build_report, is_sound

__all__ = ["WitnessCache", "cache_key", "build_report", "is_sound"]
