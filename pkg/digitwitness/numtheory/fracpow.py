"""
Fractional Exponents
====================

Witnesses for s_q(floor(u^(h/m))) / s_q(u) = r with h/m < 1/2, certified floors
of irrational powers, and finite certificates that the ratio is unbounded above
and below along explicit sequences when the exponent is irrational.

The ladder construction picks integers so that

    u = q^(nm/h) + (m(d+1)/h) q^(nm/h - n) + e

has floor(u^(h/m)) = q^n + d, where d = (q^j - 1) q^(wa-j) - 1 has digit sum
(q-1)wa - 1, and the three summands of u occupy disjoint digit ranges summing
to (q-1)wc.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional

import gmpy2

from digitwitness.config.settings import (
    CONVERGENT_SEARCH_CAP,
    FRAC_N_CAP,
    FRAC_W_CAP,
    LIMINF_DENOMINATOR,
)
from digitwitness.errors import (
    ConstructionDefectError,
    DomainError,
    InvalidBaseError,
    SearchExhaustedError,
    UnsupportedExponentError,
)
from digitwitness.numtheory import solver
from digitwitness.numtheory.certified import certified_floor
from digitwitness.numtheory.radix import digit_sum, natural_to_text
from digitwitness.numtheory.roots import floor_pow_rational, integer_root
from digitwitness.numtheory.surds import RefinableReal
from digitwitness.oracle.verifier import certify
from digitwitness.types.witness_schema import (
    ConstructionTrace,
    RatioTarget,
    Route,
    WitnessReport,
)

logger = logging.getLogger(__name__)

__all__ = [
    "DemoPoint",
    "FracParams",
    "ceil_pow_real",
    "floor_pow_rational",
    "floor_pow_real",
    "frac_parameters",
    "integer_root",
    "ladder_value",
    "liminf_demo",
    "limsup_demo",
    "witness_frac",
]


# ============================================================================
# TYPES
# ============================================================================


@dataclass(frozen=True)
class FracParams:
    """Every integer chosen by the ladder construction."""

    q: int
    h: int
    m: int
    a: int
    c: int
    h2: int
    j: int
    i: int
    w: int
    d: int
    l: int  # noqa: E741
    t1_bound: Fraction
    t2: Fraction
    e: int
    n: int

    @property
    def middle(self) -> int:
        """m(d+1)/h, the coefficient of q^(nm/h - n)."""
        return self.m * (self.d + 1) // self.h


@dataclass(frozen=True)
class DemoPoint:
    """One certified point of a limsup or liminf sequence."""

    mode: str
    q: int
    alpha: str
    k: int
    n_value: int
    f_value: int
    s_n: int
    s_f: int
    ratio_bound: Fraction
    params: Dict[str, Any]

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.s_f, self.s_n)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mode": self.mode,
            "base": self.q,
            "alpha": self.alpha,
            "k": str(self.k),
            "n_value": natural_to_text(self.n_value),
            "f_value": natural_to_text(self.f_value),
            "s_n": str(self.s_n),
            "s_f": str(self.s_f),
            "ratio": str(self.ratio),
            "ratio_bound": str(self.ratio_bound),
            "params": {key: str(value) for key, value in self.params.items()},
        }


# ============================================================================
# LADDER PARAMETERS
# ============================================================================


def coprime_part(h: int, q: int) -> int:
    """Largest divisor of h coprime to q."""
    g = math.gcd(h, q)
    while g > 1:
        h //= g
        g = math.gcd(h, q)
    return h


def multiplicative_order(q: int, modulus: int) -> int:
    """Least j >= 1 with q^j = 1 mod modulus (1 when modulus is 1)."""
    if modulus == 1:
        return 1
    j, value = 1, q % modulus
    while value != 1:
        value = value * q % modulus
        j += 1
        if j > modulus:
            raise DomainError(f"{q} is not invertible modulo {modulus}")
    return j


def binomial(alpha: Fraction, k: int) -> Fraction:
    """Generalized binomial coefficient C(alpha, k)."""
    result = Fraction(1)
    for i in range(k):
        result = result * (alpha - i) / (i + 1)
    return result


def _ceil_power(q: int, num: int, den: int) -> int:
    """Ceiling of q^(num/den)."""
    target = q ** num
    root = integer_root(target, den)
    return root if root ** den == target else root + 1


def tail_bound(q: int, h: int, m: int, d: int, l: int) -> Fraction:  # noqa: E741
    """
    Upper bound on |sum_(k > floor(m/h)) C(m/h, k) q^(l(m/h - k)) d^k|.

    Term ratios are at most x = d/q^l < 1, so the tail is at most its first
    term divided by 1 - x. The tail is empty when h divides m.
    """
    big_m = Fraction(m, h)
    first = math.floor(big_m) + 1
    coeff = abs(binomial(big_m, first))
    if coeff == 0 or d == 0:
        return Fraction(0)
    x = Fraction(d, q ** l)
    return _ceil_power(q, l * m, h) * coeff * x ** first / (1 - x)


def filler(q: int, sigma: int, floor_value: Fraction) -> int:
    """Smallest left shift of the repdigit block with digit sum sigma that exceeds floor_value."""
    full, rem = divmod(sigma, q - 1)
    block = (rem + 1) * q ** full - 1
    e = block
    while e <= floor_value:
        e *= q
    return e


def frac_parameters(q: int, h: int, m: int, r: RatioTarget) -> FracParams:
    """
    Ladder parameters for exponent h/m < 1/2 and ratio r, each minimal.

    Raises:
        SearchExhaustedError: if w or n exceed their caps
    """
    a, c = r.a, r.c
    big_m = Fraction(m, h)
    h2 = coprime_part(h, q)
    j = multiplicative_order(q, h2)
    lift = m * (q ** j - 1)
    i = 0
    while (lift * q ** i) % h:
        i += 1
    f = lift * q ** i // h
    s_f = digit_sum(f, q)

    w = 1
    while (q - 1) * w * c - 1 - s_f < 1 or j + i > w * a:
        w += 1
        if w > FRAC_W_CAP:
            raise SearchExhaustedError(f"no scale w <= {FRAC_W_CAP} for q={q}, {h}/{m}, r={r}")
    sigma = (q - 1) * w * c - 1 - s_f

    d = (q ** j - 1) * q ** (w * a - j) - 1
    l = int(gmpy2.num_digits(gmpy2.mpz(d), q)) if d else 0  # noqa: E741
    while l > 0 and q ** (l - 1) > d:
        l -= 1  # noqa: E741
    t1 = tail_bound(q, h, m, d, l)
    e = filler(q, sigma, t1)

    floor_m = math.floor(big_m)
    t2 = max(binomial(big_m, k) for k in range(2, floor_m + 1))
    spread = t2 * d ** floor_m
    n = (l // h + 1) * h
    while True:
        q_n = q ** n
        if (
            n > l
            and spread <= q_n
            and e < q ** (n * (m - 2 * h) // h)
            and m * (d + 1) < h * q_n
        ):
            break
        n += h
        if n > FRAC_N_CAP:
            raise SearchExhaustedError(f"no scale n <= {FRAC_N_CAP} for q={q}, {h}/{m}, r={r}")

    params = FracParams(
        q=q, h=h, m=m, a=a, c=c, h2=h2, j=j, i=i, w=w, d=d, l=l,
        t1_bound=t1, t2=t2, e=e, n=n,
    )
    logger.info("Ladder q=%d exponent %d/%d r=%s: j=%d i=%d w=%d l=%d n=%d", q, h, m, r, j, i, w, l, n)
    return params


def ladder_value(q: int, h: int, m: int, n: int, d: int, e: int) -> int:
    top = n * m // h
    return q ** top + (m * (d + 1) // h) * q ** (top - n) + e


def _check_ladder(p: FracParams, u: int) -> None:
    """Assert the digit-layout facts the ratio relies on."""
    middle_sum = digit_sum(p.middle, p.q)
    if digit_sum(p.d, p.q) != (p.q - 1) * p.w * p.a - 1:
        raise ConstructionDefectError(f"d={p.d} has unexpected digit sum in base {p.q}")
    if digit_sum(u, p.q) != 1 + middle_sum + digit_sum(p.e, p.q):
        raise ConstructionDefectError("ladder summands overlap in their digits")
    if floor_pow_rational(u, p.h, p.m) != p.q ** p.n + p.d:
        raise ConstructionDefectError(
            f"floor(u^({p.h}/{p.m})) differs from q^n + d for q={p.q}, n={p.n}",
            user_message="The fractional-exponent construction did not verify.",
        )


def witness_frac(q: int, h: int, m: int, r: RatioTarget) -> WitnessReport:
    """
    Verified witness with s_q(floor(u^(h/m))) / s_q(u) = r.

    Args:
        q: Base, at least 2
        h, m: Reduced exponent h/m, below 1/2 or exactly 1/2
        r: Target ratio

    Raises:
        UnsupportedExponentError: if h/m > 1/2
    """
    if q < 2:
        raise InvalidBaseError(f"base must be >= 2, got {q}")
    if h < 1 or m < 1 or math.gcd(h, m) != 1:
        raise DomainError(f"exponent {h}/{m} must be a reduced positive fraction")
    exponent = Fraction(h, m)
    if exponent > Fraction(1, 2):
        raise UnsupportedExponentError(
            f"exponent {h}/{m} exceeds 1/2",
            user_message="Fractional exponents must be at most 1/2.",
        )
    if (h, m) == (1, 2):
        inner = solver.witness(q, r.inverse())
        trace = ConstructionTrace(route=Route.FRAC_SQUARE, inner_ratio=r.inverse(), inner=inner.trace)
        return certify(inner.witness * inner.witness, q, r, trace, exponent)

    params = frac_parameters(q, h, m, r)
    u = ladder_value(q, h, m, params.n, params.d, params.e)
    _check_ladder(params, u)
    trace = ConstructionTrace(
        route=Route.FRAC_LADDER,
        n=params.n,
        ladder={
            "h": h, "m": m, "j": params.j, "i": params.i, "w": params.w,
            "l": params.l, "d": params.d, "e": params.e,
            "t1_bound": params.t1_bound, "t2": params.t2,
        },
    )
    return certify(u, q, r, trace, exponent)


# ============================================================================
# CERTIFIED REAL POWERS
# ============================================================================


def floor_pow_real(u: int, alpha: RefinableReal, max_precision: Optional[int] = None) -> int:
    """
    Certified floor(u^alpha) for a positive quadratic surd alpha.

    Raises:
        IndeterminateFloorError: if the precision cap is reached first
    """
    if u < 1:
        raise DomainError(f"u must be >= 1, got {u}")
    if alpha.compare(Fraction(0)) <= 0:
        raise DomainError(f"exponent {alpha} must be positive")
    if u == 1:
        return 1
    if alpha.is_rational:
        value = alpha.as_fraction()
        return floor_pow_rational(u, value.numerator, value.denominator)
    _lo, hi = alpha.refine(8)
    magnitude = math.ceil(hi * u.bit_length()) + 1

    def evaluate(ctx: Any) -> Any:
        return ctx.exp(alpha.interval(ctx) * ctx.ln(ctx.mpf(u)))

    return certified_floor(evaluate, magnitude, max_precision, label=f"{u}^{alpha}")


def ceil_pow_real(u: int, alpha: RefinableReal, max_precision: Optional[int] = None) -> int:
    """Ceiling of u^alpha; irrational powers of integers > 1 here are never integral."""
    if alpha.is_rational:
        value = alpha.as_fraction()
        floor = floor_pow_rational(u, value.numerator, value.denominator)
        exact = floor ** value.denominator == u ** value.numerator
        return floor if exact else floor + 1
    if u == 1:
        return 1
    return floor_pow_real(u, alpha, max_precision) + 1


# ============================================================================
# DEMONSTRATION SEQUENCES
# ============================================================================


def _require_irrational(alpha: RefinableReal) -> None:
    if alpha.is_rational:
        raise DomainError(f"{alpha} is rational; the demonstrations need an irrational exponent")


def limsup_demo(q: int, alpha: RefinableReal, target: int, max_precision: Optional[int] = None) -> DemoPoint:
    """
    Find k with s_q(floor(q^(k alpha))) > target while s_q(q^k) = 1.

    Uses convergents p/k > alpha, where k alpha sits just below the integer p:
    floor(q^(k alpha)) then starts with j digits q-1.
    """
    if q < 2:
        raise InvalidBaseError(f"base must be >= 2, got {q}")
    _require_irrational(alpha)
    if alpha.compare(Fraction(0)) <= 0:
        raise DomainError(f"exponent {alpha} must be positive")
    if target < 0:
        raise DomainError(f"target must be >= 0, got {target}")
    j = target // (q - 1) + 1

    for index, (p, k) in enumerate(alpha.convergents()):
        if index >= CONVERGENT_SEARCH_CAP:
            break
        if k == 0 or p <= j or alpha.compare(Fraction(p, k)) >= 0:
            continue
        f_value = floor_pow_real(q ** k, alpha, max_precision)
        if f_value < q ** p - q ** (p - j):
            continue
        s_f = digit_sum(f_value, q)
        if s_f <= target:
            raise ConstructionDefectError(f"limsup point k={k} has digit sum {s_f} <= {target}")
        logger.info("limsup point for %s in base %d: k=%d, digit sum %d", alpha, q, k, s_f)
        return DemoPoint(
            mode="limsup", q=q, alpha=str(alpha), k=k,
            n_value=q ** k, f_value=f_value, s_n=1, s_f=s_f,
            ratio_bound=Fraction((q - 1) * j), params={"j": j, "p": p},
        )
    raise SearchExhaustedError(
        f"no convergent among the first {CONVERGENT_SEARCH_CAP} reaches target {target}",
        user_message="No suitable convergent found; lower the target.",
    )


def liminf_rational(alpha: RefinableReal) -> Fraction:
    """A rational r in (1, 1/alpha): the midpoint rounded to a small denominator."""
    inverse = alpha.reciprocal()
    limit = LIMINF_DENOMINATOR
    while True:
        lo, hi = inverse.refine(64)
        mid = (1 + (lo + hi) / 2) / 2
        r = mid.limit_denominator(limit)
        if r > 1 and inverse.compare(r) > 0:
            return r
        limit *= 2


def liminf_demo(q: int, alpha: RefinableReal, target: int, max_precision: Optional[int] = None) -> DemoPoint:
    """
    Build u with floor(u^alpha) = q^k and s_q(u) > target, for 0 < alpha < 1.

    u ends in k(r-1) digits q-1, where r is a rational in (1, 1/alpha).
    """
    if q < 2:
        raise InvalidBaseError(f"base must be >= 2, got {q}")
    _require_irrational(alpha)
    if alpha.compare(Fraction(0)) <= 0 or alpha.compare(Fraction(1)) >= 0:
        raise DomainError(f"exponent {alpha} must lie in (0, 1)")
    if target < 0:
        raise DomainError(f"target must be >= 0, got {target}")

    r = liminf_rational(alpha)
    step = (r - 1).denominator
    k = step
    while (q - 1) * k * (r - 1) <= target:
        k += step
    tail = int(k * (r - 1))
    inverse = alpha.reciprocal()
    ceiling = ceil_pow_real(q ** k, inverse, max_precision)
    modulus = q ** tail
    u = ceiling + modulus - 1 - ceiling % modulus

    if floor_pow_real(u, alpha, max_precision) != q ** k:
        raise ConstructionDefectError(
            f"liminf point k={k} does not satisfy floor(u^alpha) = q^k",
            user_message="The liminf construction did not verify.",
        )
    s_n = digit_sum(u, q)
    if s_n < (q - 1) * tail:
        raise ConstructionDefectError(f"liminf point k={k} lost its trailing digits")
    logger.info("liminf point for %s in base %d: k=%d, digit sum %d", alpha, q, k, s_n)
    return DemoPoint(
        mode="liminf", q=q, alpha=str(alpha), k=k,
        n_value=u, f_value=q ** k, s_n=s_n, s_f=1,
        ratio_bound=Fraction(1, (q - 1) * tail), params={"r": r, "tail_digits": tail},
    )
