"""
Quadratic surds as refinable reals.

A RefinableReal is (P + sqrt(N)) / Q with integers P, N >= 0, Q != 0. Such values
have exact rational brackets at any width, exact interval enclosures, and
periodic continued fractions whose convergents come out in integer arithmetic.
"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, Tuple

from digitwitness.errors import DomainError, UsageError


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse rational {text!r} in real descriptor") from None


def _sign_of(shift: Fraction, n: int) -> int:
    """Sign of shift + sqrt(n)."""
    if shift >= 0:
        return 1 if (shift > 0 or n > 0) else 0
    diff = n - shift * shift
    return (diff > 0) - (diff < 0)


@dataclass(frozen=True)
class RefinableReal:
    """(P + sqrt(N)) / Q, normalized so that Q divides N - P^2 when N is not a square."""

    p: int
    n: int
    q: int
    descriptor: str = ""

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    @classmethod
    def make(cls, p: int, n: int, q: int, descriptor: str = "") -> "RefinableReal":
        if q == 0:
            raise DomainError("surd denominator is zero")
        if n < 0:
            raise DomainError(f"surd radicand must be >= 0, got {n}")
        root = math.isqrt(n)
        if root * root == n:
            # rational: fold the root into P
            value = Fraction(p + root, q)
            return cls(value.numerator, 0, value.denominator, descriptor)
        if (n - p * p) % q != 0:
            scale = abs(q)
            p, n, q = p * scale, n * q * q, q * scale
        return cls(p, n, q, descriptor)

    @classmethod
    def rational(cls, value: Fraction, descriptor: str = "") -> "RefinableReal":
        value = Fraction(value)
        return cls(value.numerator, 0, value.denominator, descriptor or f"rat:{value}")

    @classmethod
    def from_parts(cls, offset: Fraction, coeff: Fraction, radicand: int, descriptor: str = "") -> "RefinableReal":
        """offset + coeff * sqrt(radicand)."""
        offset, coeff = Fraction(offset), Fraction(coeff)
        if radicand < 0:
            raise DomainError(f"radicand must be >= 0, got {radicand}")
        den = offset.denominator * coeff.denominator
        base = offset.numerator * coeff.denominator
        scale = coeff.numerator * offset.denominator
        # base/den + (scale/den) sqrt(radicand) = (+-base + sqrt(scale^2 radicand)) / (+-den)
        sign = -1 if scale < 0 else 1
        return cls.make(sign * base, scale * scale * radicand, sign * den, descriptor)

    @classmethod
    def parse(cls, token: str) -> "RefinableReal":
        """
        Parse 'sqrt:D', 'inv-sqrt:D', 'surd:p,r,D' (p + r sqrt D) or 'rat:h/m'.

        Raises:
            UsageError: for anything else
        """
        text = token.strip()
        kind, _, body = text.partition(":")
        try:
            if kind == "sqrt":
                return cls.make(0, int(body), 1, text)
            if kind == "inv-sqrt":
                return cls.make(0, int(body), 1).reciprocal(text)
            if kind == "surd":
                parts = [part for part in re.split(r"\s*,\s*", body) if part]
                if len(parts) != 3:
                    raise UsageError(f"surd descriptor needs p,r,D: {token!r}")
                return cls.from_parts(_fraction(parts[0]), _fraction(parts[1]), int(parts[2]), text)
            if kind == "rat":
                return cls.rational(_fraction(body), text)
        except ValueError:
            raise UsageError(f"cannot parse real descriptor {token!r}") from None
        raise UsageError(
            f"unknown real descriptor {token!r}",
            user_message="Use sqrt:D, inv-sqrt:D, surd:p,r,D or rat:h/m.",
        )

    # ------------------------------------------------------------------
    # exact queries
    # ------------------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.n == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise DomainError(f"{self} is irrational")
        return Fraction(self.p, self.q)

    def compare(self, value: Fraction) -> int:
        """Sign of self - value, decided exactly."""
        shift = Fraction(self.p) - Fraction(value) * self.q
        sign = _sign_of(shift, self.n)
        return sign if self.q > 0 else -sign

    def reciprocal(self, descriptor: str = "") -> "RefinableReal":
        label = descriptor or f"1/({self})"
        if self.is_rational:
            if self.p == 0:
                raise DomainError("reciprocal of zero")
            return RefinableReal.rational(Fraction(self.q, self.p), label)
        sign = 1 if self.q > 0 else -1
        # Q / (P + sqrt N) = (-QP + Q sqrt N) / (N - P^2)
        return RefinableReal.make(-self.q * self.p * sign, self.q * self.q * self.n, (self.n - self.p * self.p) * sign, label)

    def refine(self, bits: int) -> Tuple[Fraction, Fraction]:
        """Rational bracket of width at most 2^-bits / |Q|."""
        if self.is_rational:
            value = self.as_fraction()
            return value, value
        root = math.isqrt(self.n << (2 * bits))
        scale = 1 << bits
        lo = Fraction(self.p * scale + root, self.q * scale)
        hi = Fraction(self.p * scale + root + 1, self.q * scale)
        return (lo, hi) if lo <= hi else (hi, lo)

    def interval(self, ctx: Any) -> Any:
        """Outward-rounded enclosure in an mpmath interval context."""
        if self.is_rational:
            return ctx.mpf(self.p) / ctx.mpf(self.q)
        return (ctx.mpf(self.p) + ctx.sqrt(ctx.mpf(self.n))) / ctx.mpf(self.q)

    def convergents(self) -> Iterator[Tuple[int, int]]:
        """Continued-fraction convergents (p_k, q_k), exactly."""
        if self.is_rational:
            value = self.as_fraction()
            num, den = value.numerator, value.denominator
            prev_p, cur_p, prev_q, cur_q = 0, 1, 1, 0
            while den:
                a, rem = divmod(num, den)
                prev_p, cur_p = cur_p, a * cur_p + prev_p
                prev_q, cur_q = cur_q, a * cur_q + prev_q
                yield cur_p, cur_q
                num, den = den, rem
            return
        p, q, n = self.p, self.q, self.n
        root = math.isqrt(n)
        prev_p, cur_p, prev_q, cur_q = 0, 1, 1, 0
        while True:
            a = (p + root) // q if q > 0 else -((p + root) // -q) - 1
            prev_p, cur_p = cur_p, a * cur_p + prev_p
            prev_q, cur_q = cur_q, a * cur_q + prev_q
            yield cur_p, cur_q
            p = a * q - p
            q = (n - p * p) // q

    def __str__(self) -> str:
        if self.descriptor:
            return self.descriptor
        if self.is_rational:
            return f"rat:{self.as_fraction()}"
        return f"({self.p}+sqrt({self.n}))/{self.q}"
