"""
Witness report schema and normalization.

Single source of truth for the shape of ratios, construction traces and witness
reports so constructors, the verifier, the cache and the CLI all produce and read
the same structure.
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

from digitwitness.errors import DomainError, UsageError
from digitwitness.numtheory.radix import natural_from_text, natural_to_text, pattern_of


class Route(str, Enum):
    """Construction used to produce a witness."""

    BASE2_PATTERN = "base2-pattern"
    BASE2_AMPLIFIED = "base2-amplified"
    BASEQ_PATTERN = "baseq-pattern"
    BASEQ_GAP = "baseq-gap"
    BASEQ_CHAIN = "baseq-chain"
    FRAC_LADDER = "frac-ladder"
    FRAC_SQUARE = "frac-square"


@dataclass(frozen=True, order=False)
class RatioTarget:
    """Reduced positive rational a/c."""

    a: int
    c: int

    def __post_init__(self) -> None:
        if self.a < 1 or self.c < 1:
            raise DomainError(f"ratio terms must be positive, got {self.a}/{self.c}")
        if math.gcd(self.a, self.c) != 1:
            raise DomainError(f"ratio {self.a}/{self.c} is not reduced")

    @classmethod
    def of(cls, a: int, c: int) -> "RatioTarget":
        """Reduce a/c."""
        g = math.gcd(a, c)
        if g == 0:
            raise DomainError("ratio 0/0 is undefined")
        return cls(a // g, c // g)

    @classmethod
    def from_fraction(cls, value: Fraction) -> "RatioTarget":
        return cls(value.numerator, value.denominator)

    @classmethod
    def parse(cls, text: str) -> "RatioTarget":
        """Parse 'a/c' or 'a' (meaning a/1) with positive integers."""
        raw = text.strip()
        num, sep, den = raw.partition("/")
        if not num.isdigit() or (sep and not den.isdigit()):
            raise UsageError(
                f"cannot parse ratio {text!r}",
                user_message="Ratios are written a/c with positive integers, e.g. 7/2.",
            )
        a, c = int(num), int(den) if sep else 1
        if a < 1 or c < 1:
            raise UsageError(f"ratio {text!r} must be positive")
        return cls.of(a, c)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.a, self.c)

    def inverse(self) -> "RatioTarget":
        return RatioTarget(self.c, self.a)

    def __str__(self) -> str:
        return f"{self.a}/{self.c}"


def exponent_text(exponent: Fraction) -> str:
    """'2' for integral exponents, 'h/m' otherwise."""
    if exponent.denominator == 1:
        return str(exponent.numerator)
    return f"{exponent.numerator}/{exponent.denominator}"


def fraction_to_text(value: Fraction) -> str:
    """Always 'num/den', without the decimal-length limit of str()."""
    sign = "-" if value < 0 else ""
    return f"{sign}{natural_to_text(abs(value.numerator))}/{natural_to_text(value.denominator)}"


def fraction_from_text(text: str) -> Fraction:
    raw = text.strip()
    negative = raw.startswith("-")
    num, _, den = raw.lstrip("-").partition("/")
    value = Fraction(natural_from_text(num), natural_from_text(den or "1"))
    return -value if negative else value


def parse_exponent(text: str) -> Fraction:
    raw = text.strip()
    try:
        value = Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise UsageError(
            f"cannot parse exponent {text!r}",
            user_message="Exponents are written H/M with positive integers, e.g. 1/3, or 2.",
        ) from None
    if value <= 0:
        raise UsageError(f"exponent {text!r} must be positive")
    return value


# Ladder entries a replay needs
LADDER_KEYS = ("h", "m", "d", "e")


def _as_int(value: Any, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DomainError(f"trace field {name} must be an integer, got {value!r}")
    return value


def _optional_int(data: Dict[str, Any], name: str) -> Optional[int]:
    value = data.get(name)
    return None if value is None else _as_int(value, name)


def _ladder_value(key: str, value: Any) -> Any:
    if not isinstance(value, (str, int)) or isinstance(value, bool):
        raise DomainError(f"ladder entry {key} must be text, got {value!r}")
    text = str(value)
    return fraction_from_text(text) if "/" in text else natural_from_text(text)


@dataclass(frozen=True)
class AmplifyStep:
    """One binary amplification v = (2^(2w+1) + 1) u with 2^w > u."""

    w: int


@dataclass(frozen=True)
class ChainParams:
    """Chained-block amplification: d shifted copies at multipliers of (m + 1)."""

    d: int
    m: int
    t_d: int
    multipliers: Tuple[int, ...] = ()


@dataclass(frozen=True)
class ConstructionTrace:
    """Parameters sufficient to replay a construction."""

    route: Route
    m: Optional[int] = None
    t: Optional[int] = None
    k: Optional[int] = None
    n: Optional[int] = None
    inner_ratio: Optional[RatioTarget] = None
    amplification: Tuple[AmplifyStep, ...] = ()
    chain: Optional[ChainParams] = None
    ladder: Dict[str, Any] = field(default_factory=dict)
    inner: Optional["ConstructionTrace"] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"route": self.route.value}
        for key in ("m", "t", "k", "n"):
            value = getattr(self, key)
            if value is not None:
                data[key] = value
        if self.inner_ratio is not None:
            data["inner_ratio"] = str(self.inner_ratio)
        if self.amplification:
            data["amplification"] = [{"w": step.w} for step in self.amplification]
        if self.chain is not None:
            data["chain"] = {
                "d": self.chain.d,
                "m": self.chain.m,
                "t_d": self.chain.t_d,
                "multipliers": list(self.chain.multipliers),
            }
        if self.ladder:
            data["ladder"] = {
                key: (fraction_to_text(value) if isinstance(value, Fraction) else natural_to_text(value))
                for key, value in self.ladder.items()
            }
        if self.inner is not None:
            data["inner"] = self.inner.to_dict()
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ConstructionTrace":
        """
        Rebuild a trace from its dict form.

        Raises:
            DomainError: for non-integer parameters or a ladder missing LADDER_KEYS
        """
        route = Route(data["route"])
        ladder = {key: _ladder_value(key, value) for key, value in data.get("ladder", {}).items()}
        if route == Route.FRAC_LADDER:
            missing = [key for key in LADDER_KEYS if key not in ladder]
            if missing:
                raise DomainError(f"ladder trace lacks {', '.join(missing)}")
        chain = data.get("chain")
        return cls(
            route=route,
            m=_optional_int(data, "m"),
            t=_optional_int(data, "t"),
            k=_optional_int(data, "k"),
            n=_optional_int(data, "n"),
            inner_ratio=RatioTarget.parse(data["inner_ratio"]) if "inner_ratio" in data else None,
            amplification=tuple(
                AmplifyStep(_as_int(step["w"], "w")) for step in data.get("amplification", [])
            ),
            chain=ChainParams(
                _as_int(chain["d"], "d"),
                _as_int(chain["m"], "m"),
                _as_int(chain["t_d"], "t_d"),
                tuple(_as_int(value, "multipliers") for value in chain.get("multipliers", ())),
            )
            if chain
            else None,
            ladder=ladder,
            inner=cls.from_dict(data["inner"]) if "inner" in data else None,
        )


@dataclass(frozen=True)
class WitnessReport:
    """A witness together with both digit sums and the achieved ratio."""

    q: int
    exponent: Fraction
    witness: int
    s_u: int
    s_fu: int
    ratio: RatioTarget
    trace: Optional[ConstructionTrace] = None
    verified: bool = False
    cache_status: Optional[str] = None

    def with_trace(self, trace: Optional[ConstructionTrace]) -> "WitnessReport":
        return replace(self, trace=trace)

    def with_status(self, status: str) -> "WitnessReport":
        return replace(self, cache_status=status)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "base": self.q,
            "exponent": exponent_text(self.exponent),
            "witness": natural_to_text(self.witness),
            "pattern": pattern_of(self.witness, self.q).to_text(),
            "s_u": natural_to_text(self.s_u),
            "s_fu": natural_to_text(self.s_fu),
            "ratio": str(self.ratio),
            "trace": self.trace.to_dict() if self.trace is not None else None,
            "verified": self.verified,
        }
        if self.cache_status is not None:
            data["cache_status"] = self.cache_status
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "WitnessReport":
        trace = data.get("trace")
        return cls(
            q=int(data["base"]),
            exponent=Fraction(data["exponent"]),
            witness=natural_from_text(data["witness"]),
            s_u=natural_from_text(data["s_u"]),
            s_fu=natural_from_text(data["s_fu"]),
            ratio=RatioTarget.parse(data["ratio"]),
            trace=ConstructionTrace.from_dict(trace) if trace else None,
            verified=bool(data.get("verified", False)),
        )
