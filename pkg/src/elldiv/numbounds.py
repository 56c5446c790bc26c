"""Class-group rank bounds and tower criteria evaluated on certified field data.

Nothing here touches number fields directly: the caller supplies ramified
prime counts, unit signatures, and discriminant data, and these functions
evaluate the corresponding bounds exactly. All verdicts are integer or
rational arithmetic; square roots are handled by isolating the radical and
comparing squares, so no float ever decides an inequality.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .arith import factorize, require_prime, valuation
from .divisibility import GroupPair, delta_exact
from .errors import ValidationError

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# unit-group data


@dataclass(frozen=True)
class UnitData:
    """Archimedean signature of a number field plus root-of-unity content.

    r1 real embeddings, r2 conjugate pairs of complex embeddings, and whether
    the field contains a primitive ell-th root of unity (for the prime under
    consideration). The free unit rank is r1 + r2 - 1.
    """

    r1: int
    r2: int
    degree: int
    has_mu_ell: bool = False

    def __post_init__(self):
        if self.r1 < 0 or self.r2 < 0:
            raise ValidationError("embedding counts must be non-negative")
        if self.r1 + 2 * self.r2 != self.degree:
            raise ValidationError(
                f"r1 + 2*r2 = {self.r1 + 2 * self.r2} does not match degree {self.degree}")

    @property
    def free_rank(self) -> int:
        return self.r1 + self.r2 - 1


def unit_l_rank(unit: UnitData, ell: int) -> int:
    """ell-rank of the unit group: free rank plus one for a root of unity.

    For ell = 2 the field always contains -1, so has_mu_ell is forced true
    (a false input is corrected and logged).
    """
    require_prime(ell)
    has_mu = unit.has_mu_ell
    if ell == 2 and not has_mu:
        logger.warning("unit_l_rank: -1 is always a square-free unit; "
                       "forcing has_mu_ell=True for ell=2")
        has_mu = True
    return unit.free_rank + (1 if has_mu else 0)


def e_ell(n: int, ell: int) -> int:
    """Exponent of ell in the factorization of n."""
    require_prime(ell)
    return valuation(n, ell)


def omega(n: int) -> int:
    """Number of distinct prime factors of a nonzero integer."""
    if n == 0:
        raise ValidationError("omega(0) is undefined")
    if abs(n) == 1:
        return 0
    return len(factorize(n))


# ---------------------------------------------------------------------------
# the rank lower bound


@dataclass(frozen=True)
class RankBoundInput:
    """Data feeding the class-group rank lower bound.

    mode "weak": count = ramified base primes with some index divisible by
    ell, invariant = the pair's weak covering invariant. mode "strong":
    count = ramified primes upstairs, invariant = the strong covering weight.
    mode "base": count = base primes that become ell-th powers, invariant
    unused, and kummer_rank supplies the Kummer correction term.
    """

    ell: int
    mode: str
    count: int
    unit_K: UnitData
    unit_F: UnitData
    rel_degree: int
    invariant: Fraction = Fraction(1)
    kummer_rank: int = 0

    def __post_init__(self):
        require_prime(self.ell)
        if self.mode not in ("weak", "strong", "base"):
            raise ValidationError(f"unknown mode {self.mode!r}")
        if self.count < 0 or self.kummer_rank < 0:
            raise ValidationError("counts must be non-negative")
        if self.rel_degree < 1:
            raise ValidationError("relative degree must be at least 1")
        if self.mode in ("weak", "strong") and self.count >= 1 and self.invariant <= 0:
            raise ValidationError(
                "a positive covering invariant is required when count >= 1")


@dataclass(frozen=True)
class RankBoundResult:
    real_bound: Fraction
    effective_bound: int
    precondition_ok: bool


def rank_bound(data: RankBoundInput) -> RankBoundResult:
    """Lower bound for the ell-rank of the class group of K.

    weak/strong: count/invariant - rk_ell(O_K^*) + rk_ell(O_F^*) - e_ell([K:F]);
    base: count - rk_ell(O_K^*) + rk_ell(O_F^*) - kummer_rank. The effective
    bound is the ceiling, valid because the rank is an integer.
    """
    rk_k = unit_l_rank(data.unit_K, data.ell)
    rk_f = unit_l_rank(data.unit_F, data.ell)
    if data.mode == "base":
        real = Fraction(data.count - rk_k + rk_f - data.kummer_rank)
    else:
        invariant = data.invariant if data.count >= 1 else Fraction(1)
        real = (Fraction(data.count) / invariant
                - rk_k + rk_f - e_ell(data.rel_degree, data.ell))
    effective = math.ceil(real)
    return RankBoundResult(real, effective, data.count >= 1)


# ---------------------------------------------------------------------------
# Golod-Shafarevich and tower criteria


def golod_shafarevich(rk_cl: int, free_unit_rank: int) -> bool:
    """Infinite tower criterion: rk_cl > 2 + 2*sqrt(free_unit_rank + 1).

    Decided exactly: with both sides positive this is equivalent to
    (rk_cl - 2)^2 > 4*(free_unit_rank + 1).
    """
    if rk_cl < 0 or free_unit_rank < 0:
        raise ValidationError("ranks must be non-negative")
    if rk_cl <= 2:
        return False
    return (rk_cl - 2) ** 2 > 4 * (free_unit_rank + 1)


@dataclass(frozen=True)
class PrimeTowerData:
    """Per-prime ingredients of the tower criterion."""

    delta: int
    unit_K: UnitData
    unit_F: UnitData
    e_ell: int

    def __post_init__(self):
        if self.delta < 0 or self.e_ell < 0:
            raise ValidationError("tower data must be non-negative")


@dataclass(frozen=True)
class TowerInput:
    """Discriminant statistics plus per-prime data for the tower criteria.

    omega_disc counts distinct prime ideals of F dividing the relative
    discriminant; omega_degree counts distinct primes dividing [K:F];
    closure_degree is the degree of the Galois closure of K over Q.
    """

    omega_disc: int
    omega_degree: int
    closure_degree: int
    per_prime: dict[int, PrimeTowerData]

    def __post_init__(self):
        if self.omega_disc < 0:
            raise ValidationError("omega_disc must be non-negative")
        if self.omega_degree < 1:
            raise ValidationError("omega_degree must be at least 1 (degree > 1)")
        if self.closure_degree < 1:
            raise ValidationError("closure_degree must be at least 1")
        for ell in self.per_prime:
            require_prime(ell)


@dataclass(frozen=True)
class PrimeTowerDetail:
    ell: int
    delta: int
    bracket_integer: int          # 2 + rk_ell(K) - rk_ell(F) + e_ell
    radicand: int                 # free unit rank of K plus 1
    holds: bool                   # ceil(omega_disc/omega_degree) >= delta * bracket
    bracket_at_most_4n: Optional[bool]  # bracket <= 4*[K:Q], None when [K:Q] = 1


@dataclass(frozen=True)
class TowerVerdict:
    pigeonhole_bound: int
    radical_criterion: bool       # the per-prime inequality holds at every prime
    simple_criterion: bool        # omega_disc >= 4 * closure_degree * omega_degree
    details: dict[int, PrimeTowerDetail]


def _ge_with_radical(lhs: int, scale: int, base: int, radicand: int) -> bool:
    """Exact test of lhs >= scale * (base + 2*sqrt(radicand))."""
    rest = lhs - scale * base
    if rest < 0:
        return False
    return rest * rest >= 4 * scale * scale * radicand


def tower_criteria(data: TowerInput) -> TowerVerdict:
    """Evaluate both infinite-class-field-tower criteria on certified data.

    The radical criterion asks, at every prime ell dividing the degree, for
    ceil(omega_disc/omega_degree) to reach
    delta * (2 + 2*sqrt(free_rank_K + 1) + rk_ell(K) - rk_ell(F) + e_ell);
    the criterion requires ramification (omega_disc >= 1) and an established
    covering invariant (delta >= 1) at each prime. The simple criterion is
    omega_disc >= 4 * closure_degree * omega_degree.
    """
    lhs = -(-data.omega_disc // data.omega_degree)  # ceiling division
    details = {}
    all_hold = bool(data.per_prime)
    for ell, prime_data in sorted(data.per_prime.items()):
        rk_k = unit_l_rank(prime_data.unit_K, ell)
        rk_f = unit_l_rank(prime_data.unit_F, ell)
        base = 2 + rk_k - rk_f + prime_data.e_ell
        radicand = prime_data.unit_K.free_rank + 1
        holds = (data.omega_disc >= 1 and prime_data.delta >= 1
                 and _ge_with_radical(lhs, prime_data.delta, base, radicand))
        n_k = prime_data.unit_K.degree
        le_4n = _bracket_le(base, radicand, 4 * n_k) if n_k > 1 else None
        details[ell] = PrimeTowerDetail(ell, prime_data.delta, base, radicand,
                                        holds, le_4n)
        all_hold = all_hold and holds
    simple = data.omega_disc >= 4 * data.closure_degree * data.omega_degree
    return TowerVerdict(lhs, all_hold, simple, details)


def _bracket_le(base: int, radicand: int, limit: int) -> bool:
    """Exact test of base + 2*sqrt(radicand) <= limit."""
    rest = limit - base
    if rest < 0:
        return False
    return 4 * radicand <= rest * rest


# ---------------------------------------------------------------------------
# ray-class counting bound


@dataclass(frozen=True)
class PlaceData:
    """One finite place in the ramification set.

    residue_is_1_mod_ell: the residue field size is 1 mod ell. in_T0: the
    place lies over ell and wild ramification is permitted there, in which
    case local_degree is its degree over Q_ell.
    """

    residue_is_1_mod_ell: bool
    in_T0: bool = False
    local_degree: int = 0

    def __post_init__(self):
        if self.in_T0 and self.local_degree < 1:
            raise ValidationError("a place over ell needs local_degree >= 1")


def rayclass_bound(rk_cl_F: int, s_inf: int, ell: int,
                   places: Sequence[PlaceData]) -> tuple[int, int]:
    """Bound the number of degree-ell cyclic extensions unramified outside
    the given places (and not wildly ramified outside the marked ones).

    Returns (e, (ell^e - 1)/(ell - 1)) where e sums the class-group ell-rank,
    the real-place contribution (only at ell = 2), and a per-place term: 1
    when the residue count is 1 mod ell, 1 + local degree for marked places
    over ell, 0 otherwise.
    """
    require_prime(ell)
    if rk_cl_F < 0 or s_inf < 0:
        raise ValidationError("counts must be non-negative")
    e = rk_cl_F + (s_inf if ell == 2 else 0)
    for place in places:
        if place.residue_is_1_mod_ell:
            e += 1
        elif place.in_T0:
            e += 1 + place.local_degree
    return e, (ell ** e - 1) // (ell - 1)


# ---------------------------------------------------------------------------
# discriminant-count exponents


def malle_a(pair: GroupPair, on_trivial_action: str = "skip") -> Fraction:
    """max over sigma of 1/([G:H] - n_sigma), n_sigma counting <sigma>-orbits
    on the cosets of H.

    Elements fixing every coset have a zero denominator and are skipped by
    default (on_trivial_action="skip", logged); "error" raises instead.
    """
    if on_trivial_action not in ("skip", "error"):
        raise ValidationError("on_trivial_action must be 'skip' or 'error'")
    total = pair.index
    if total < 2:
        raise ValidationError("the coset space must have at least 2 points")
    skipped = 0
    best: Optional[int] = None
    for sigma in pair.G.elements:
        deficit = total - pair.G.coset_orbit_count(pair.H, sigma)
        if deficit == 0:
            skipped += 1
            if on_trivial_action == "error" and not sigma.is_identity():
                raise ValidationError(
                    "an element fixes every coset; denominator would be zero")
            continue
        if best is None or deficit < best:
            best = deficit
    if best is None:
        raise ValidationError(
            "every element fixes every coset; the pair is malformed")
    if skipped > 1:
        logger.info("malle_a: skipped %d elements acting trivially on the cosets",
                    skipped - 1)
    return Fraction(1, best)


def malle_exponent(pair: GroupPair, d: int, rk_f: dict[int, int]) -> int:
    """omega([G:H]) * max over ell | [G:H] of
    floor(delta_ell * (d + 2*sqrt(d) + e_ell([G:H]) + 2 - rk_ell(O_F^*))).

    The floor is exact: with integer A = d + e_ell + 2 - rk and integer
    delta, floor(delta*A + 2*delta*sqrt(d)) = delta*A + isqrt(4*delta^2*d).
    delta_ell is the pair's exact weak invariant; a prime where the pair is
    not divisible raises.
    """
    if d < 1:
        raise ValidationError("the degree d must be positive")
    index = pair.index
    if index == 1:
        logger.info("malle_exponent: [G:H] = 1 is degenerate; returning 0")
        return 0
    best = None
    for ell in sorted(factorize(index)):
        if ell not in rk_f:
            raise ValidationError(f"rk_f is missing the prime {ell}")
        report = delta_exact(pair, ell)
        if not report.divisible:
            raise ValidationError(
                f"the pair is not {ell}-divisible; the exponent is undefined")
        delta = report.delta
        base = d + e_ell(index, ell) + 2 - rk_f[ell]
        value = delta * base + math.isqrt(4 * delta * delta * d)
        if best is None or value > best:
            best = value
    return omega(index) * best
