"""Small exact integer helpers shared across modules."""

from __future__ import annotations

from .errors import ValidationError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def require_prime(ell: int) -> int:
    if not is_prime(ell):
        raise ValidationError(f"{ell} is not a prime number")
    return ell


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}; n must be nonzero."""
    if n == 0:
        raise ValidationError("0 has no prime factorization")
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


def valuation(n: int, p: int) -> int:
    """Exponent of p in n (n >= 1)."""
    if n < 1:
        raise ValidationError("valuation requires a positive integer")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_prime_power(n: int, p: int) -> bool:
    """True when n is a positive power of the prime p."""
    if n < p:
        return False
    while n % p == 0:
        n //= p
    return n == 1
