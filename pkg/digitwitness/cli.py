"""
Digit Witness CLI
=================

Command-line surface for witness construction, verification, ratio scans,
bounds checks, limsup/liminf demonstrations and constant calibration.

Reports go to stdout as JSON (or CSV/text where offered); logs go to stderr.
Exit status is 0 on success, 1 on a computation error and 2 on a usage error.
"""

import argparse
import logging
import sys
from dataclasses import replace
from typing import Callable, Dict, List, Optional

from digitwitness import __version__
from digitwitness.config.settings import LOG_FORMAT, log_level
from digitwitness.data.validators import validate_command_config
from digitwitness.errors import DigitWitnessError, UsageError, error_payload
from digitwitness.numtheory.fracpow import liminf_demo, limsup_demo
from digitwitness.numtheory.patterns import calibrate
from digitwitness.numtheory.radix import RunLengthPattern, from_pattern, natural_from_text
from digitwitness.numtheory.surds import RefinableReal
from digitwitness.oracle.bounds import stolarsky_check
from digitwitness.oracle.scan import melfi_count, scan
from digitwitness.oracle.verifier import verify_witness
from digitwitness.services.witness_cache import WitnessCache
from digitwitness.services.witness_service import build_report
from digitwitness.types.command_schema import CommandConfig
from digitwitness.types.witness_schema import RatioTarget, parse_exponent
from digitwitness.utils.export import stamp, to_csv, to_json, to_text

logger = logging.getLogger(__name__)


# ============================================================================
# ARGUMENT PARSING
# ============================================================================


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--reproducible",
        action="store_true",
        help="omit the generated_at timestamp and cache status",
    )

    parser = argparse.ArgumentParser(
        prog="digitwitness",
        description="Construct and verify integers with prescribed digit-sum ratios.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    witness = sub.add_parser("witness", parents=[common], help="build a verified witness")
    witness.add_argument("--base", type=int)
    witness.add_argument("--ratio", help="target ratio A/C")
    witness.add_argument("--exponent", default="2", help="2 or H/M with H/M <= 1/2")
    witness.add_argument("--cache", dest="cache_path", help="JSONL witness cache")
    witness.add_argument("--format", dest="output_format", default="json", choices=["json", "text"])

    verify = sub.add_parser("verify", parents=[common], help="verify a candidate witness")
    verify.add_argument("--base", type=int)
    verify.add_argument("--value", help="decimal witness")
    verify.add_argument("--pattern", help="run-length pattern, e.g. 'b5:4^1 0^1 4^3'")
    verify.add_argument("--exponent", default="2")

    scan_cmd = sub.add_parser("scan", parents=[common], help="tabulate ratios for n <= N")
    scan_cmd.add_argument("--base", type=int)
    scan_cmd.add_argument("--max", dest="limit", type=int)
    scan_cmd.add_argument("--format", dest="output_format", default="json", choices=["csv", "json"])

    bounds = sub.add_parser("bounds", parents=[common], help="check the binary digit-sum bounds")
    bounds.add_argument("--max", dest="limit", type=int)
    bounds.add_argument("--power", type=int, default=2)
    bounds.add_argument("--log-base", dest="log_base", default="2", choices=["2", "e"])

    demo = sub.add_parser("demo", parents=[common], help="certified limsup/liminf point")
    demo.add_argument("--mode", choices=["limsup", "liminf"])
    demo.add_argument("--base", type=int)
    demo.add_argument("--alpha", help="sqrt:D, inv-sqrt:D, surd:p,r,D or rat:h/m")
    demo.add_argument("--target", type=int)

    calib = sub.add_parser("calibrate", parents=[common], help="infer block-pattern constants")
    calib.add_argument("--base", type=int)
    calib.add_argument("--m", type=int)

    return parser


def config_from_args(ns: argparse.Namespace) -> CommandConfig:
    """Turn parsed arguments into a CommandConfig, parsing the ratio text."""
    ratio_text = getattr(ns, "ratio", None)
    exponent = getattr(ns, "alpha", None) if ns.subcommand == "demo" else getattr(ns, "exponent", None)
    return CommandConfig(
        subcommand=ns.subcommand,
        base=getattr(ns, "base", None),
        ratio=RatioTarget.parse(ratio_text) if ratio_text is not None else None,
        exponent=exponent,
        limit=getattr(ns, "limit", None),
        output_format=getattr(ns, "output_format", "json"),
        cache_path=getattr(ns, "cache_path", None),
        value=getattr(ns, "value", None),
        pattern=getattr(ns, "pattern", None),
        power=getattr(ns, "power", 2),
        log_base=getattr(ns, "log_base", "2"),
        mode=getattr(ns, "mode", None),
        target=getattr(ns, "target", None),
        m=getattr(ns, "m", None),
        reproducible=ns.reproducible,
    )


# ============================================================================
# SUBCOMMANDS
# ============================================================================


def _witness(config: CommandConfig) -> str:
    exponent = parse_exponent(config.exponent or "2")
    if config.cache_path:
        report = WitnessCache(config.cache_path).lookup_or_build(config.base, config.ratio, exponent)
    else:
        report = build_report(config.base, config.ratio, exponent)
    if config.reproducible:
        report = replace(report, cache_status=None)
    payload = stamp(report.to_dict(), config.reproducible)
    return to_text(payload) if config.output_format == "text" else to_json(payload)


def _verify(config: CommandConfig) -> str:
    exponent = parse_exponent(config.exponent or "2")
    if config.pattern is not None:
        pattern = RunLengthPattern.parse(config.pattern)
        if pattern.base != config.base:
            raise UsageError(f"pattern base {pattern.base} differs from --base {config.base}")
        u = from_pattern(pattern)
    else:
        u = natural_from_text(config.value)
    report = verify_witness(u, config.base, exponent)
    return to_json(stamp(report.to_dict(), config.reproducible))


def _scan(config: CommandConfig) -> str:
    table = scan(config.base, config.limit)
    if config.output_format == "csv":
        return to_csv(table.to_frame())
    return to_json(stamp(table.to_dict(), config.reproducible))


def _bounds(config: CommandConfig) -> str:
    report = stolarsky_check(config.limit, config.power, config.log_base)
    report = replace(report, melfi=melfi_count(config.limit))
    return to_json(stamp(report.to_dict(), config.reproducible))


def _demo(config: CommandConfig) -> str:
    alpha = RefinableReal.parse(config.exponent)
    build = limsup_demo if config.mode == "limsup" else liminf_demo
    point = build(config.base, alpha, config.target)
    return to_json(stamp(point.to_dict(), config.reproducible))


def _calibrate(config: CommandConfig) -> str:
    record = calibrate(config.base, config.m)
    return to_json(stamp(record.to_dict(), config.reproducible))


_HANDLERS: Dict[str, Callable[[CommandConfig], str]] = {
    "witness": _witness,
    "verify": _verify,
    "scan": _scan,
    "bounds": _bounds,
    "demo": _demo,
    "calibrate": _calibrate,
}


def run(config: CommandConfig) -> str:
    """
    Validate and execute one command.

    Returns:
        Serialized report for stdout

    Raises:
        UsageError: if the configuration is incomplete or contradictory
    """
    is_valid, errors = validate_command_config(config)
    if not is_valid:
        raise UsageError("; ".join(errors), user_message="Invalid command: " + "; ".join(errors))
    logger.info("Running %s", config.subcommand)
    return _HANDLERS[config.subcommand](config)


# ============================================================================
# ENTRY POINT
# ============================================================================


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=log_level(), format=LOG_FORMAT, stream=sys.stderr)
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        output = run(config_from_args(ns))
    except UsageError as e:
        sys.stdout.write(to_json(error_payload(e)))
        return 2
    except DigitWitnessError as e:
        logger.error("%s failed: %s", ns.subcommand, e)
        sys.stdout.write(to_json(error_payload(e)))
        return 1
    except Exception as e:
        logger.exception("Unexpected error in %s", ns.subcommand)
        sys.stdout.write(to_json(error_payload(e)))
        return 1

    sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
