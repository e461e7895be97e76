"""
Report Export
=============

Serializes CLI reports as JSON, CSV (via pandas) or plain text.
"""

import json
from typing import Any, Dict

import pandas as pd


def stamp(payload: Dict[str, Any], reproducible: bool) -> Dict[str, Any]:
    """Add a UTC generated_at timestamp unless output must be reproducible."""
    if reproducible:
        return payload
    stamped = dict(payload)
    stamped["generated_at"] = pd.Timestamp.now(tz="UTC").isoformat()
    return stamped


def to_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"


def to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, lineterminator="\n")


def to_text(payload: Dict[str, Any]) -> str:
    """
    One "key: value" line per top-level field.

    Nested objects are written as compact JSON on their line.
    """
    lines = []
    for key, value in payload.items():
        if isinstance(value, (dict, list)):
            rendered = json.dumps(value, ensure_ascii=False, separators=(",", ":"))
        elif isinstance(value, bool):
            rendered = "true" if value else "false"
        elif value is None:
            rendered = "-"
        else:
            rendered = str(value)
        lines.append(f"{key}: {rendered}")
    return "\n".join(lines) + "\n"
