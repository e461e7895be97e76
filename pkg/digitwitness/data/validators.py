"""
Command Validation
==================

Checks a CommandConfig for missing and conflicting fields so usage errors are
reported before any computation or cache write.
"""

from typing import List, Tuple

from digitwitness.types.command_schema import DEMO_MODES, OUTPUT_FORMATS, SUBCOMMANDS, CommandConfig

# Fields each subcommand cannot run without
_REQUIRED = {
    "witness": ("base", "ratio"),
    "verify": ("base",),
    "scan": ("base", "limit"),
    "bounds": ("limit",),
    "demo": ("base", "mode", "exponent", "target"),
    "calibrate": ("base", "m"),
}

_FLAG_NAMES = {
    "base": "--base",
    "ratio": "--ratio",
    "limit": "--max",
    "mode": "--mode",
    "exponent": "--alpha",
    "target": "--target",
    "m": "--m",
}


def validate_command_config(config: CommandConfig) -> Tuple[bool, List[str]]:
    """
    Validate a command configuration.

    Args:
        config: Parsed command line

    Returns:
        Tuple of (is_valid, list_of_errors)
    """
    errors: List[str] = []

    if config.subcommand not in SUBCOMMANDS:
        return False, [f"Unknown subcommand: {config.subcommand}"]

    for field in _REQUIRED[config.subcommand]:
        if getattr(config, field) is None:
            errors.append(f"Missing required option: {_FLAG_NAMES[field]}")

    if config.base is not None and config.base < 2:
        errors.append(f"--base must be at least 2, got {config.base}")

    if config.output_format not in OUTPUT_FORMATS[config.subcommand]:
        allowed = "|".join(OUTPUT_FORMATS[config.subcommand])
        errors.append(f"--format for {config.subcommand} must be {allowed}, got {config.output_format}")

    if config.subcommand == "verify":
        if (config.value is None) == (config.pattern is None):
            errors.append("verify needs exactly one of --value or --pattern")

    if config.limit is not None:
        minimum = 4 if config.subcommand == "bounds" else 1
        if config.limit < minimum:
            errors.append(f"--max must be at least {minimum}, got {config.limit}")

    if config.subcommand == "bounds":
        if config.power < 2:
            errors.append(f"--power must be at least 2, got {config.power}")
        if config.log_base not in ("2", "e"):
            errors.append(f"--log-base must be 2 or e, got {config.log_base}")

    if config.subcommand == "demo":
        if config.mode is not None and config.mode not in DEMO_MODES:
            errors.append(f"--mode must be limsup or liminf, got {config.mode}")
        if config.target is not None and config.target < 1:
            errors.append(f"--target must be positive, got {config.target}")

    if config.m is not None and config.m < 0:
        errors.append(f"--m must be nonnegative, got {config.m}")

    if config.cache_path is not None and config.subcommand != "witness":
        errors.append("--cache applies only to witness")

    return len(errors) == 0, errors
