"""
Exact integer roots.

Thin wrappers over gmpy2 so every caller shares one definition of
x = floor(n^(1/m)) and floor(u^(h/m)).
"""

import math

import gmpy2

from digitwitness.errors import DomainError


def integer_root(n: int, m: int) -> int:
    """
    Unique x with x^m <= n < (x+1)^m.

    Raises:
        DomainError: if m < 1 or n < 0
    """
    if m < 1:
        raise DomainError(f"root index must be >= 1, got {m}")
    if n < 0:
        raise DomainError(f"cannot take a root of negative {n}")
    root, _exact = gmpy2.iroot(gmpy2.mpz(n), m)
    return int(root)


def floor_pow_rational(u: int, h: int, m: int) -> int:
    """floor(u^(h/m)) computed as integer_root(u^h, m)."""
    if h < 1 or m < 1:
        raise DomainError(f"exponent terms must be positive, got {h}/{m}")
    if math.gcd(h, m) != 1:
        raise DomainError(f"exponent {h}/{m} is not reduced")
    if u < 0:
        raise DomainError(f"cannot raise negative {u} to a fractional power")
    root, _exact = gmpy2.iroot(gmpy2.mpz(u) ** h, m)
    return int(root)
