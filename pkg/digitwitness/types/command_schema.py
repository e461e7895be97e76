"""
Command configuration schema.

One CommandConfig per CLI invocation; argparse fills it and the validators
check it before any computation starts.
"""

from dataclasses import dataclass
from typing import Optional

from digitwitness.types.witness_schema import RatioTarget

SUBCOMMANDS = ("witness", "verify", "scan", "bounds", "demo", "calibrate")

OUTPUT_FORMATS = {
    "witness": ("json", "text"),
    "verify": ("json",),
    "scan": ("csv", "json"),
    "bounds": ("json",),
    "demo": ("json",),
    "calibrate": ("json",),
}

DEMO_MODES = ("limsup", "liminf")


@dataclass(frozen=True)
class CommandConfig:
    """
    Parsed command line.

    exponent holds the --exponent token for witness/verify and the --alpha
    token for demo.
    """

    subcommand: str
    base: Optional[int] = None
    ratio: Optional[RatioTarget] = None
    exponent: Optional[str] = None
    limit: Optional[int] = None
    output_format: str = "json"
    cache_path: Optional[str] = None
    value: Optional[str] = None
    pattern: Optional[str] = None
    power: int = 2
    log_base: str = "2"
    mode: Optional[str] = None
    target: Optional[int] = None
    m: Optional[int] = None
    reproducible: bool = False
