"""Exact integer censuses behind the discriminant-count asymptotics.

Three families are counted: squarefree positive integers with exactly k prime
factors (pi_k), the values +-s^j with omega(s) <= k (count_T), and the values
s^j*t with omega(s) = omega(s*t) <= k (count_S). The S-census is computed two
independent ways below a configurable cross-check threshold: enumeration of
admissible (s, t) pairs straight from the definition, and a
smallest-prime-factor sieve using the equivalent characterization that every
prime exponent of n is at least j while omega(n) <= k. A mismatch is an
internal error and aborts. Ratios against the limiting constants are the only
floating-point values in the package and are display-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import SieveMemoryExceeded, ValidationError

DEFAULT_SIEVE_MAX = 10**8
DEFAULT_CROSSCHECK_LIMIT = 10**5

_BYTES_PER_ENTRY = 3  # uint8 omega counts + packed squarefree/aux flags


class OmegaSieve:
    """Distinct-prime-factor counts and squarefree flags for 1..limit."""

    def __init__(self, limit: int, sieve_max: Optional[int] = None):
        cap = DEFAULT_SIEVE_MAX if sieve_max is None else sieve_max
        if limit > cap:
            raise SieveMemoryExceeded(
                f"sieve up to {limit} (about {limit * _BYTES_PER_ENTRY / 1e6:.0f} MB) "
                f"exceeds the configured maximum of {cap}")
        if limit < 1:
            raise ValidationError("sieve limit must be positive")
        self.limit = limit
        is_comp = np.zeros(limit + 1, dtype=bool)
        omega = np.zeros(limit + 1, dtype=np.uint8)
        for p in range(2, limit + 1):
            if is_comp[p]:
                continue
            omega[p::p] += 1
            is_comp[p * p::p] = True
        squarefree = np.ones(limit + 1, dtype=bool)
        for p in range(2, math.isqrt(limit) + 1):
            if not is_comp[p]:
                squarefree[p * p::p * p] = False
        squarefree[0] = False
        self.omega = omega
        self.squarefree = squarefree
        self.prime = ~is_comp
        self.prime[:2] = False

    def primes(self) -> np.ndarray:
        return np.flatnonzero(self.prime)

    def count_squarefree_omega(self, x: int, k: int) -> int:
        """#{1 <= n <= x : n squarefree, omega(n) = k}."""
        return int(np.count_nonzero(
            self.squarefree[1:x + 1] & (self.omega[1:x + 1] == k)))

    def count_omega_at_most(self, x: int, k: int) -> int:
        """#{1 <= n <= x : omega(n) <= k}."""
        return int(np.count_nonzero(self.omega[1:x + 1] <= k))


_SIEVE_CACHE: dict[int, OmegaSieve] = {}


def _sieve(limit: int, sieve_max: Optional[int]) -> OmegaSieve:
    for cached_limit, sieve in _SIEVE_CACHE.items():
        if cached_limit >= limit:
            return sieve
    sieve = OmegaSieve(limit, sieve_max)
    _SIEVE_CACHE.clear()
    _SIEVE_CACHE[limit] = sieve
    return sieve


def pi_k(x: int, k: int, sieve_max: Optional[int] = None) -> int:
    """Number of squarefree positive integers <= x with exactly k prime factors."""
    if x < 1 or k < 1:
        raise ValidationError("pi_k requires x >= 1 and k >= 1")
    return _sieve(x, sieve_max).count_squarefree_omega(x, k)


def _nth_root_floor(x: int, j: int) -> int:
    if j == 1:
        return x
    if j == 2:
        return math.isqrt(x)
    r = round(x ** (1.0 / j))
    while r ** j > x:
        r -= 1
    while (r + 1) ** j <= x:
        r += 1
    return r


def count_T(x: int, k: int, j: int, sieve_max: Optional[int] = None) -> int:
    """|{ +-s^j : omega(s) <= k, |s^j| <= x }| as a set of integer values."""
    if x < 1 or k < 1 or j < 1:
        raise ValidationError("count_T requires x, k, j >= 1")
    root = _nth_root_floor(x, j)
    return 2 * _sieve(root, sieve_max).count_omega_at_most(root, k)


def _count_S_enum(x: int, k: int, j: int, sieve: OmegaSieve) -> int:
    """Definition route: collect the distinct values s^j * t over admissible
    pairs, where every prime of t divides s. Returns the positive-value count
    doubled (the set is symmetric under negation and never contains 0)."""
    root = _nth_root_floor(x, j)
    values: set[int] = set()
    omega = sieve.omega
    for s in range(1, root + 1):
        if omega[s] > k:
            continue
        base = s ** j
        primes_of_s = _prime_list(s)
        stack = [(base, 0)]
        while stack:
            value, i = stack.pop()
            if i == len(primes_of_s):
                values.add(value)
                continue
            p = primes_of_s[i]
            while True:
                stack.append((value, i + 1))
                if value * p > x:
                    break
                value *= p
    return 2 * len(values)


def _prime_list(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


_SPF_CACHE: dict[int, np.ndarray] = {}


def _spf_array(limit: int) -> np.ndarray:
    """spf[n] = smallest prime factor of n (spf[n] = n exactly when n is prime)."""
    for cached_limit, spf in _SPF_CACHE.items():
        if cached_limit >= limit:
            return spf
    spf = np.arange(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == p:
            sl = spf[p * p::p]
            untouched = sl == np.arange(p * p, limit + 1, p, dtype=np.int64)
            sl[untouched] = p
    _SPF_CACHE.clear()
    _SPF_CACHE[limit] = spf
    return spf


def _count_S_charact(x: int, k: int, j: int, sieve: OmegaSieve) -> int:
    """Characterization route: n belongs iff omega(n) <= k and every prime
    exponent of n is at least j. For j = 1 the exponent condition is vacuous;
    otherwise every n in 1..x is factored via a smallest-prime-factor sieve."""
    if j == 1:
        return 2 * sieve.count_omega_at_most(x, k)
    spf = _spf_array(x)
    count = 0
    for n in range(1, x + 1):
        if sieve.omega[n] > k:
            continue
        m = n
        good = True
        while m > 1:
            p = spf[m]
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e < j:
                good = False
                break
        if good:
            count += 1
    return 2 * count


def count_S(x: int, k: int, j: int, sieve_max: Optional[int] = None,
            crosscheck_limit: Optional[int] = None) -> int:
    """|S_k(x)| exactly; below the cross-check threshold both independent
    counting routes run and must agree."""
    if x < 1 or k < 1 or j < 1:
        raise ValidationError("count_S requires x, k, j >= 1")
    threshold = DEFAULT_CROSSCHECK_LIMIT if crosscheck_limit is None else crosscheck_limit
    if x <= threshold:
        sieve = _sieve(x, sieve_max)
        a = _count_S_enum(x, k, j, sieve)
        b = _count_S_charact(x, k, j, sieve)
        if a != b:
            raise AssertionError(
                f"count_S cross-check failed at x={x}, k={k}, j={j}: {a} != {b}")
        return a
    if j == 1:
        return 2 * _sieve(x, sieve_max).count_omega_at_most(x, k)
    root_sieve = _sieve(_nth_root_floor(x, j), sieve_max)
    return _count_S_enum(x, k, j, root_sieve)


# ---------------------------------------------------------------------------
# the ratio table


@dataclass(frozen=True)
class CensusRow:
    x: int
    k: int
    j: int
    pi_k: int
    t_count: int
    s_count: int
    s_ratio: float
    pi_ratio: float


@dataclass(frozen=True)
class CensusTargets:
    s_limit: Fraction  # 2j/(k-1)!
    pi_limit: Fraction  # 1/(k-1)!


def ratio_table(xs: Sequence[int], k: int, j: int,
                sieve_max: Optional[int] = None,
                crosscheck_limit: Optional[int] = None
                ) -> tuple[list[CensusRow], CensusTargets]:
    """Exact counts with normalized ratios count*log(x)/(x^e * (loglog x)^(k-1)),
    where e is 1/j for the S and T counts and 1 for pi_k."""
    if k < 1 or j < 1:
        raise ValidationError("ratio_table requires k, j >= 1")
    rows = []
    for x in sorted(xs):
        if x < 16:
            raise ValidationError("ratio normalization needs x >= 16 (loglog > 0)")
        pik = pi_k(x, k, sieve_max)
        t = count_T(x, k, j, sieve_max)
        s = count_S(x, k, j, sieve_max, crosscheck_limit)
        logx = math.log(x)
        loglog = math.log(logx)
        s_norm = x ** (1.0 / j) * loglog ** (k - 1)
        pi_norm = x * loglog ** (k - 1)
        rows.append(CensusRow(
            x=x, k=k, j=j, pi_k=pik, t_count=t, s_count=s,
            s_ratio=s * logx / s_norm, pi_ratio=pik * logx / pi_norm))
    fact = math.factorial(k - 1)
    return rows, CensusTargets(Fraction(2 * j, fact), Fraction(1, fact))
