"""
Radix Expansions
================

Exact base-q expansions, digit sums, run-length patterns and the casting-out
divisibility check. Every other module verifies against these primitives.

Naturals are plain Python ints; conversions to digit strings go through gmpy2,
which is subquadratic and has no decimal-length ceiling.
"""

import re
import string
from dataclasses import dataclass
from itertools import groupby
from typing import List, Tuple

import gmpy2

from digitwitness.errors import DomainError, InvalidBaseError, MalformedPatternError

# gmpy2 spells digits 0-9a-z up to base 36 and 0-9A-Za-z from 37 to 62
_ALPHABET_36 = string.digits + string.ascii_lowercase
_ALPHABET_62 = string.digits + string.ascii_uppercase + string.ascii_lowercase
_GMPY_MAX_BASE = 62

_PATTERN_RE = re.compile(r"^b(\d+):\s*(.*?)\s*$")
_RUN_RE = re.compile(r"^(\d+)\^(\d+)$")
_REPEAT_RE = re.compile(r"(.)\1*")


def _check_base(q: int, minimum: int = 2) -> None:
    if not isinstance(q, int) or q < minimum:
        raise InvalidBaseError(
            f"base must be an integer >= {minimum}, got {q!r}",
            user_message=f"Base must be at least {minimum}.",
        )


def _check_natural(n: int) -> None:
    if n < 0:
        raise DomainError(f"expected a nonnegative integer, got {n}")


def _alphabet(q: int) -> str:
    return _ALPHABET_36 if q <= 36 else _ALPHABET_62


def _digit_text(n: int, q: int) -> str:
    """Base-q digit characters of n > 0 (q <= 62)."""
    return gmpy2.mpz(n).digits(q)


def _digit_values(n: int, q: int) -> List[int]:
    """Most-significant-first digit values of n (empty for 0)."""
    if n == 0:
        return []
    if q <= _GMPY_MAX_BASE:
        lookup = {ch: v for v, ch in enumerate(_alphabet(q)[:q])}
        return [lookup[ch] for ch in _digit_text(n, q)]
    digits: List[int] = []
    while n:
        n, r = divmod(n, q)
        digits.append(r)
    digits.reverse()
    return digits


# ============================================================================
# TYPES
# ============================================================================


@dataclass(frozen=True)
class DigitString:
    """Canonical base-q digits, most significant first; zero is the empty sequence."""

    base: int
    digits: Tuple[int, ...]

    def __post_init__(self) -> None:
        _check_base(self.base)
        if self.digits and self.digits[0] == 0:
            raise MalformedPatternError("digit string has a leading zero")
        for dg in self.digits:
            if not 0 <= dg < self.base:
                raise MalformedPatternError(f"digit {dg} outside [0, {self.base - 1}]")

    @property
    def value(self) -> int:
        if not self.digits:
            return 0
        if self.base <= _GMPY_MAX_BASE:
            alphabet = _alphabet(self.base)
            return int(gmpy2.mpz("".join(alphabet[dg] for dg in self.digits), self.base))
        value = 0
        for dg in self.digits:
            value = value * self.base + dg
        return value

    def __len__(self) -> int:
        return len(self.digits)


@dataclass(frozen=True)
class RunLengthPattern:
    """Digit string written as runs (digit, count), e.g. b3:1^2 2^1 0^4 2^2."""

    base: int
    runs: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        _check_base(self.base)
        previous = None
        for idx, (digit, count) in enumerate(self.runs):
            if not 0 <= digit < self.base:
                raise MalformedPatternError(
                    f"run {idx}: digit {digit} outside [0, {self.base - 1}]"
                )
            if count < 1:
                raise MalformedPatternError(f"run {idx}: count must be >= 1, got {count}")
            if idx == 0 and digit == 0:
                raise MalformedPatternError("first run must not be zeros")
            if digit == previous:
                raise MalformedPatternError(f"runs {idx - 1} and {idx} repeat digit {digit}")
            previous = digit

    @classmethod
    def build(cls, base: int, runs: List[Tuple[int, int]]) -> "RunLengthPattern":
        """Canonicalize raw runs: drop zero-length runs, merge equal neighbours."""
        merged: List[Tuple[int, int]] = []
        for digit, count in runs:
            if count < 0:
                raise MalformedPatternError(f"negative run length {count}")
            if count == 0:
                continue
            if merged and merged[-1][0] == digit:
                merged[-1] = (digit, merged[-1][1] + count)
            else:
                merged.append((digit, count))
        return cls(base, tuple(merged))

    @property
    def length(self) -> int:
        return sum(count for _, count in self.runs)

    @property
    def digit_sum(self) -> int:
        return sum(digit * count for digit, count in self.runs)

    def to_text(self) -> str:
        body = " ".join(f"{digit}^{count}" for digit, count in self.runs)
        return f"b{self.base}:{body}"

    @classmethod
    def parse(cls, text: str) -> "RunLengthPattern":
        match = _PATTERN_RE.match(text.strip())
        if not match:
            raise MalformedPatternError(
                f"cannot parse pattern {text!r}",
                user_message="Patterns look like 'b3:1^2 2^1 0^4 2^2'.",
            )
        base = int(match.group(1))
        runs = []
        for token in match.group(2).split():
            run = _RUN_RE.match(token)
            if not run:
                raise MalformedPatternError(f"cannot parse run {token!r} in {text!r}")
            runs.append((int(run.group(1)), int(run.group(2))))
        return cls(base, tuple(runs))

    def __str__(self) -> str:
        return self.to_text()


# ============================================================================
# OPERATIONS
# ============================================================================


def digit_sum(n: int, q: int) -> int:
    """
    Sum of the base-q digits of n.

    Args:
        n: Nonnegative integer
        q: Base, at least 2

    Returns:
        s_q(n); 0 for n = 0
    """
    _check_base(q)
    _check_natural(n)
    if n == 0:
        return 0
    if q == 2:
        return int(gmpy2.popcount(gmpy2.mpz(n)))
    if q <= _GMPY_MAX_BASE:
        text = _digit_text(n, q)
        return sum(v * text.count(ch) for v, ch in enumerate(_alphabet(q)[:q]) if v)
    return sum(_digit_values(n, q))


def expand(n: int, q: int) -> DigitString:
    """Canonical base-q expansion of n."""
    _check_base(q)
    _check_natural(n)
    return DigitString(q, tuple(_digit_values(n, q)))


def rle(ds: DigitString) -> RunLengthPattern:
    """Run-length encode a digit string."""
    return RunLengthPattern(
        ds.base, tuple((digit, sum(1 for _ in group)) for digit, group in groupby(ds.digits))
    )


def from_pattern(p: RunLengthPattern) -> int:
    """
    Integer whose base-p.base expansion is the concatenation of p's runs.

    Raises:
        MalformedPatternError: if p violates the canonical-form rules
    """
    if not isinstance(p, RunLengthPattern):
        raise MalformedPatternError(f"expected RunLengthPattern, got {type(p).__name__}")
    q = p.base
    value = 0
    for digit, count in p.runs:
        block = q ** count
        # digit repeated count times is digit * (q^count - 1) / (q - 1)
        value = value * block + digit * ((block - 1) // (q - 1))
    return value


def split_digit_sum(n: int, q: int, k: int) -> Tuple[int, int]:
    """Digit sums of the low k digits and of the remaining high digits of n."""
    _check_base(q)
    _check_natural(n)
    if k < 0:
        raise DomainError(f"split position must be >= 0, got {k}")
    high, low = divmod(n, q ** k)
    return digit_sum(low, q), digit_sum(high, q)


def divisibility_pair(u: int, q: int) -> Tuple[bool, bool]:
    """((q-1) | u, (q-1) | s_q(u)); the two always agree."""
    _check_base(q, minimum=3)
    if u < 1:
        raise DomainError(f"divisibility check needs u >= 1, got {u}")
    return u % (q - 1) == 0, digit_sum(u, q) % (q - 1) == 0


# ============================================================================
# SERIALIZATION
# ============================================================================


def natural_to_text(n: int) -> str:
    """Decimal text of an arbitrarily large natural."""
    _check_natural(n)
    return gmpy2.mpz(n).digits(10)


def natural_from_text(text: str) -> int:
    """Parse a decimal natural written by natural_to_text."""
    cleaned = text.strip()
    if not cleaned.isdigit():
        raise DomainError(
            f"not a decimal natural: {cleaned[:40]!r}",
            user_message="Values must be nonnegative decimal integers.",
        )
    return int(gmpy2.mpz(cleaned, 10))


def pattern_of(n: int, q: int) -> RunLengthPattern:
    """Run-length pattern of n in base q, read straight off the digit text."""
    _check_base(q)
    _check_natural(n)
    if n == 0 or q > _GMPY_MAX_BASE:
        return rle(expand(n, q))
    lookup = {ch: v for v, ch in enumerate(_alphabet(q)[:q])}
    runs = tuple(
        (lookup[m.group(1)], m.end() - m.start()) for m in _REPEAT_RE.finditer(_digit_text(n, q))
    )
    return RunLengthPattern(q, runs)

