"""Divisibility invariants of a pair H <= G at a prime ell.

Two covering problems drive everything here. In the weak problem each
conjugacy class of order-ell elements of G that leaves H must contain, inside
some intermediate subgroup H <= G' <= G, an element whose G'-class misses H.
In the strong problem every element sigma outside H of ell-power order with
sigma^ell in H must itself sit in such a G'. The minimum number of
intermediate subgroups needed for the weak problem, and the minimum of
(1/ell) * sum of [G':H] over a strong covering family, are computed exactly
by set cover over the complete pool of intermediate subgroups, and every
report cross-checks the exact value against the applicable structural upper
bounds.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .arith import is_prime_power, prime_divisors, require_prime
from .cover import cover_assignment, solve_cover
from .errors import ValidationError
from .lattice import GroupLattice, intermediate_subgroups_idx, lattice_for
from .perm import PermGroup, Permutation, group_to_literal
from .table import MulTable, table_for

BoundValue = Union[int, Fraction]


@dataclass(frozen=True)
class GroupPair:
    """A validated pair H <= G of groups of the same degree."""

    G: PermGroup
    H: PermGroup

    def __post_init__(self):
        if not self.H.is_subgroup_of(self.G):
            raise ValidationError("H is not a subgroup of G")

    @property
    def index(self) -> int:
        return self.G.order // self.H.order

    def conjugated(self, g: Permutation) -> "GroupPair":
        """The pair with H replaced by g H g^-1."""
        if g not in self.G:
            raise ValidationError("conjugating element must lie in G")
        moved = PermGroup.from_elements(
            self.G.degree, {g * h * g.inverse() for h in self.H.elements})
        return GroupPair(self.G, moved)

    def __repr__(self) -> str:
        return f"GroupPair(|G|={self.G.order}, |H|={self.H.order})"


@dataclass(frozen=True)
class WeakConstraint:
    """A G-conjugacy class of order-ell elements meeting G - H."""

    class_rep: Permutation
    members: tuple[Permutation, ...]


@dataclass(frozen=True)
class StrongConstraint:
    """An element of G - H with ell-power order whose ell-th power lies in H."""

    element: Permutation


Constraint = Union[WeakConstraint, StrongConstraint]


@dataclass(frozen=True)
class Witness:
    """One covering subgroup with the constraints assigned to it."""

    generators: tuple[Permutation, ...]
    order: int
    index: int
    covers: tuple[dict, ...]


@dataclass(frozen=True)
class DivisibilityReport:
    pair: GroupPair
    prime: int
    divisible: bool
    delta: Optional[int]
    big_delta: Optional[Fraction]
    witnesses: tuple[Witness, ...]
    bounds: dict[str, Optional[BoundValue]]
    uncovered: Optional[Constraint]
    elapsed: float


# ---------------------------------------------------------------------------
# constraint extraction and the public covering predicates


def weak_constraints(pair: GroupPair, ell: int) -> tuple[WeakConstraint, ...]:
    """One constraint per conjugacy class of order-ell elements meeting G - H."""
    require_prime(ell)
    out = []
    for cls in pair.G.conjugacy_classes():
        if cls[0].order() != ell:
            continue
        if all(a in pair.H for a in cls):
            continue
        out.append(WeakConstraint(cls[0], cls))
    return tuple(out)


def strong_constraints(pair: GroupPair, ell: int) -> tuple[StrongConstraint, ...]:
    """All sigma in G - H of ell-power order with sigma^ell in H, sorted."""
    require_prime(ell)
    out = []
    for a in pair.G.elements:
        if a in pair.H:
            continue
        if not is_prime_power(a.order(), ell):
            continue
        if a ** ell in pair.H:
            out.append(StrongConstraint(a))
    return tuple(out)


def covers_weak(candidate: PermGroup, sub: PermGroup, constraint: WeakConstraint) -> bool:
    """Does some conjugate in the candidate have a candidate-class missing sub?"""
    if not sub.is_subgroup_of(candidate):
        raise ValidationError("covering candidate must contain the subgroup")
    hset = sub.element_set()
    for tau in constraint.members:
        if tau in candidate and hset.isdisjoint(candidate.conjugacy_class_of(tau)):
            return True
    return False


def covers_strong(candidate: PermGroup, sub: PermGroup, constraint: StrongConstraint) -> bool:
    """Does the candidate contain the element with its class missing sub?"""
    if not sub.is_subgroup_of(candidate):
        raise ValidationError("covering candidate must contain the subgroup")
    sigma = constraint.element
    return (sigma in candidate
            and sub.element_set().isdisjoint(candidate.conjugacy_class_of(sigma)))


# ---------------------------------------------------------------------------
# index-space solver


class _PairContext:
    """Index-space view of one (pair, ell, mode) covering instance."""

    def __init__(self, pair: GroupPair, ell: int, mode: str,
                 work_limit: Optional[int]):
        require_prime(ell)
        if mode not in ("weak", "strong"):
            raise ValidationError(f"mode must be 'weak' or 'strong', got {mode!r}")
        self.pair = pair
        self.ell = ell
        self.mode = mode
        self.table: MulTable = table_for(pair.G)
        self.h_members = self.table.idx_set(pair.H.element_set())
        self.candidates = intermediate_subgroups_idx(pair.G, pair.H, work_limit)
        self.constraints = self._build_constraints()
        self.masks, self.weights = self._coverage()

    def _build_constraints(self) -> list:
        table = self.table
        if self.mode == "weak":
            _, classes = table.partition_cached(frozenset(range(table.n)), table.gen_idx)
            out = []
            for cls in classes:
                rep = min(cls)
                if table.order_of[rep] != self.ell or cls <= self.h_members:
                    continue
                out.append((rep, cls))
            out.sort(key=lambda pair: pair[0])
            return out
        out = []
        for x in range(table.n):
            if x in self.h_members:
                continue
            if not is_prime_power(table.order_of[x], self.ell):
                continue
            y = x
            for _ in range(self.ell - 1):
                y = table.rows[y][x]
            if y in self.h_members:
                out.append(x)
        return out

    def _coverage(self) -> tuple[list[int], list[int]]:
        table = self.table
        h_members = self.h_members
        h_order = len(h_members)
        masks = []
        weights = []
        for cand in self.candidates:
            class_id, classes = table.partition_cached(cand.members, cand.gens)
            misses_h = [cls.isdisjoint(h_members) for cls in classes]
            mask = 0
            if self.mode == "weak":
                for bit, (_, members) in enumerate(self.constraints):
                    for tau in members & cand.members:
                        if misses_h[class_id[tau]]:
                            mask |= 1 << bit
                            break
            else:
                for bit, sigma in enumerate(self.constraints):
                    if sigma in cand.members and misses_h[class_id[sigma]]:
                        mask |= 1 << bit
            masks.append(mask)
            weights.append(len(cand.members) // h_order)
        return masks, weights

    def first_uncovered(self) -> Optional[Constraint]:
        union = 0
        for m in self.masks:
            union |= m
        for bit in range(len(self.constraints)):
            if not union & (1 << bit):
                return self.describe_constraint(bit)
        return None

    def describe_constraint(self, bit: int) -> Constraint:
        if self.mode == "weak":
            rep, members = self.constraints[bit]
            perms = tuple(sorted(self.table.elems[i] for i in members))
            return WeakConstraint(perms[0], perms)
        return StrongConstraint(self.table.elems[self.constraints[bit]])

    def witness_conjugate(self, bit: int, cand_pos: int) -> Optional[Permutation]:
        """Least conjugate inside the candidate whose candidate-class misses H."""
        if self.mode != "weak":
            return None
        cand = self.candidates[cand_pos]
        class_id, classes = self.table.partition_cached(cand.members, cand.gens)
        _, members = self.constraints[bit]
        hits = sorted(tau for tau in members & cand.members
                      if classes[class_id[tau]].isdisjoint(self.h_members))
        return self.table.elems[hits[0]] if hits else None


def _dedupe(masks: Sequence[int], weights: Sequence[int],
            by_weight: bool) -> list[int]:
    """Positions to keep: one candidate per coverage mask, skipping empties."""
    keep: dict[int, int] = {}
    for pos, mask in enumerate(masks):
        if mask == 0:
            continue
        old = keep.get(mask)
        if old is None:
            keep[mask] = pos
        elif by_weight and weights[pos] < weights[old]:
            keep[mask] = pos
    return sorted(keep.values())


def decide(pair: GroupPair, ell: int, mode: str = "weak",
           work_limit: Optional[int] = None) -> bool:
    """Is every constraint covered by at least one intermediate subgroup?"""
    ctx = _PairContext(pair, ell, mode, work_limit)
    return ctx.first_uncovered() is None


def _exact(pair: GroupPair, ell: int, mode: str,
           work_limit: Optional[int]) -> DivisibilityReport:
    start = time.perf_counter()
    ctx = _PairContext(pair, ell, mode, work_limit)
    bounds = _hint_free_bounds(pair, ell, mode)

    uncovered = ctx.first_uncovered()
    if uncovered is not None:
        return DivisibilityReport(
            pair=pair, prime=ell, divisible=False, delta=None, big_delta=None,
            witnesses=(), bounds=bounds, uncovered=uncovered,
            elapsed=time.perf_counter() - start)

    universe = len(ctx.constraints)
    kept = _dedupe(ctx.masks, ctx.weights, by_weight=(mode == "strong"))
    masks = [ctx.masks[p] for p in kept]
    weights = [ctx.weights[p] for p in kept] if mode == "strong" else None
    chosen_local = solve_cover(universe, masks, weights)
    assert chosen_local is not None
    assignment = cover_assignment(universe, masks, chosen_local)

    witnesses = []
    for li in chosen_local:
        pos = kept[li]
        cand = ctx.candidates[pos]
        covers = []
        for bit, owner in enumerate(assignment):
            if owner != li:
                continue
            entry: dict = {}
            desc = ctx.describe_constraint(bit)
            if mode == "weak":
                entry["class_rep"] = desc.class_rep
                tau = ctx.witness_conjugate(bit, pos)
                if tau is not None:
                    entry["conjugate"] = tau
            else:
                entry["element"] = desc.element
            covers.append(entry)
        gens = cand.gens if cand.gens else ctx.table.small_gens(cand.members)
        witnesses.append(Witness(
            generators=tuple(ctx.table.elems[i] for i in gens),
            order=len(cand.members),
            index=len(cand.members) // pair.H.order,
            covers=tuple(covers)))
    witnesses.sort(key=lambda w: (w.order, w.generators))

    if mode == "weak":
        delta: Optional[int] = len(chosen_local)
        big_delta: Optional[Fraction] = None
        exact: BoundValue = delta
    else:
        delta = None
        big_delta = Fraction(sum(ctx.weights[kept[li]] for li in chosen_local), ell)
        exact = big_delta
    for name, value in bounds.items():
        if value is not None and exact > value:
            raise AssertionError(
                f"structural bound {name}={value} is below the exact value {exact}")
    return DivisibilityReport(
        pair=pair, prime=ell, divisible=True, delta=delta, big_delta=big_delta,
        witnesses=tuple(witnesses), bounds=bounds, uncovered=None,
        elapsed=time.perf_counter() - start)


def delta_exact(pair: GroupPair, ell: int,
                work_limit: Optional[int] = None) -> DivisibilityReport:
    """Exact minimum number of covering intermediate subgroups (weak problem)."""
    return _exact(pair, ell, "weak", work_limit)


def big_delta_exact(pair: GroupPair, ell: int,
                    work_limit: Optional[int] = None) -> DivisibilityReport:
    """Exact minimum of (1/ell) * sum [G':H] over strong covering families."""
    return _exact(pair, ell, "strong", work_limit)


# ---------------------------------------------------------------------------
# structural upper bounds


@dataclass(frozen=True)
class BoundOutcome:
    value: Optional[BoundValue]
    note: Optional[str] = None


_NIL_CACHE: dict[PermGroup, Optional[int]] = {}
_SYLOW_CACHE: dict[tuple[PermGroup, int], PermGroup] = {}


def _nilpotency_class(group: PermGroup) -> Optional[int]:
    if group not in _NIL_CACHE:
        _NIL_CACHE[group] = group.nilpotency_class()
    return _NIL_CACHE[group]


def _sylow(group: PermGroup, ell: int) -> PermGroup:
    key = (group, ell)
    if key not in _SYLOW_CACHE:
        _SYLOW_CACHE[key] = group.sylow_subgroup(ell)
    return _SYLOW_CACHE[key]


def generic_bound(pair: GroupPair, ell: int) -> Fraction:
    """Upper bound 1 + (|H|-1)/(ell-1) on the weak invariant of divisible pairs."""
    return 1 + Fraction(pair.H.order - 1, ell - 1)


def sylow_chain_bound(pair: GroupPair, ell: int) -> Optional[int]:
    """Number of proper containments in H*Z0 <= ... <= H*Zn for the ascending
    central series of the Sylow ell-subgroup; None when that Sylow subgroup is
    not normal in G."""
    syl = _sylow(pair.G, ell)
    if not syl.is_normal_in(pair.G):
        return None
    series, _ = syl.upper_central_series()
    sizes = []
    h_order = pair.H.order
    h_set = pair.H.element_set()
    for term in series:
        meet = len(h_set & term.element_set())
        sizes.append(h_order * term.order // meet)
    return sum(1 for a, b in zip(sizes, sizes[1:]) if b > a)


def galois_strong_bound(pair: GroupPair, ell: int) -> Optional[Fraction]:
    """min(n, |<generators of the n order-ell subgroups>| / ell) when H = 1."""
    if pair.H.order != 1:
        return None
    gens = [a for a in pair.G.elements if a.order() == ell]
    if not gens:
        return None
    n = len(gens) // (ell - 1)
    spanned = PermGroup.generate(pair.G.degree, gens)
    return min(Fraction(n), Fraction(spanned.order, ell))


def _hint_free_bounds(pair: GroupPair, ell: int, mode: str) -> dict[str, Optional[BoundValue]]:
    out: dict[str, Optional[BoundValue]] = {}
    if mode == "weak":
        out["generic"] = generic_bound(pair, ell)
        out["nilpotent"] = _nilpotency_class(pair.G)
        out["sylow_chain"] = sylow_chain_bound(pair, ell)
    else:
        out["galois_strong"] = galois_strong_bound(pair, ell)
    return out


def quotient_pair(pair: GroupPair, normal: PermGroup) -> GroupPair:
    """The induced pair (G/N, H/N) for N normal in G with N <= H."""
    if not normal.is_subgroup_of(pair.H):
        raise ValidationError("normal subgroup must be contained in H")
    quotient, project = pair.G.quotient_action(normal)
    h_image = PermGroup.from_elements(
        quotient.degree, {project(h) for h in pair.H.elements})
    return GroupPair(quotient, h_image)


def _exact_value(pair: GroupPair, ell: int, mode: str) -> Optional[BoundValue]:
    report = _exact(pair, ell, mode, None)
    if not report.divisible:
        return None
    return report.delta if mode == "weak" else report.big_delta


def theorem_bounds(pair: GroupPair, ell: int,
                   hints: Optional[dict] = None) -> dict[str, BoundOutcome]:
    """Every applicable structural upper bound, with failed hypotheses named.

    Hint keys: "chain" (ascending subgroups from H to G), "normal" (a normal
    subgroup of G), "semidirect" (an ActionSpec matching the pair),
    "composite" (list of pairs whose weak invariants are summed),
    "composite_strong" (list of (pair, index weight)), "restriction" (a larger
    pair whose strong invariant restricts).
    """
    require_prime(ell)
    hints = hints or {}
    out: dict[str, BoundOutcome] = {}

    out["generic"] = BoundOutcome(generic_bound(pair, ell))
    nil = _nilpotency_class(pair.G)
    out["nilpotent"] = (BoundOutcome(nil) if nil is not None
                        else BoundOutcome(None, "group is not nilpotent"))
    chain_bound = sylow_chain_bound(pair, ell)
    out["sylow_chain"] = (BoundOutcome(chain_bound) if chain_bound is not None
                          else BoundOutcome(None, "Sylow subgroup is not normal"))
    strong_galois = galois_strong_bound(pair, ell)
    if strong_galois is not None:
        out["galois_strong"] = BoundOutcome(strong_galois)
    elif pair.H.order != 1:
        out["galois_strong"] = BoundOutcome(None, "H is nontrivial")
    else:
        out["galois_strong"] = BoundOutcome(None, "no order-ell elements")

    if "chain" in hints:
        out.update(_chain_bounds(pair, ell, hints["chain"]))
    if "normal" in hints:
        out.update(_normal_bounds(pair, ell, hints["normal"]))
    if "semidirect" in hints:
        out.update(_semidirect_bound(pair, ell, hints["semidirect"]))
    if "composite" in hints:
        out.update(_composite_bound(ell, hints["composite"]))
    if "composite_strong" in hints:
        out.update(_composite_strong_bound(ell, hints["composite_strong"]))
    if "restriction" in hints:
        out.update(_restriction_bound(pair, ell, hints["restriction"]))
    return out


def _chain_bounds(pair: GroupPair, ell: int,
                  chain: Sequence[PermGroup]) -> dict[str, BoundOutcome]:
    groups = list(chain)
    if not groups or groups[0] != pair.H or groups[-1] != pair.G:
        raise ValidationError("chain hint must run from H to G")
    for small, big in zip(groups, groups[1:]):
        if not small.is_subgroup_of(big):
            raise ValidationError("chain hint is not ascending")
    total_weak = 0
    total_strong = Fraction(0)
    weak_note = strong_note = None
    for small, big in zip(groups, groups[1:]):
        step = GroupPair(big, small)
        dv = _exact_value(step, ell, "weak")
        if dv is None:
            weak_note = f"step of order {big.order}/{small.order} is not divisible"
        elif weak_note is None:
            total_weak += dv
        sv = _exact_value(step, ell, "strong")
        if sv is None:
            strong_note = f"step of order {big.order}/{small.order} is not strongly divisible"
        elif strong_note is None:
            total_strong += (small.order // pair.H.order) * sv
    return {
        "tower": BoundOutcome(None, weak_note) if weak_note else BoundOutcome(total_weak),
        "tower_strong": (BoundOutcome(None, strong_note) if strong_note
                         else BoundOutcome(total_strong)),
    }


def _normal_bounds(pair: GroupPair, ell: int,
                   normal: PermGroup) -> dict[str, BoundOutcome]:
    if not normal.is_normal_in(pair.G):
        raise ValidationError("normal hint is not a normal subgroup of G")
    if normal.is_subgroup_of(pair.H):
        quotient = quotient_pair(pair, normal)
        weak = _exact_value(quotient, ell, "weak")
        strong = _exact_value(quotient, ell, "strong")
        return {
            "quotient": (BoundOutcome(weak) if weak is not None
                         else BoundOutcome(None, "quotient pair is not divisible")),
            "quotient_strong": (BoundOutcome(strong) if strong is not None
                                else BoundOutcome(None,
                                                  "quotient pair is not strongly divisible")),
        }
    hn = PermGroup.generate(pair.G.degree,
                            list(pair.H.generators) + list(normal.generators))
    upper = quotient_pair(GroupPair(pair.G, hn), normal)
    lower = GroupPair(hn, pair.H)
    uw, us = _exact_value(upper, ell, "weak"), _exact_value(upper, ell, "strong")
    lw, ls = _exact_value(lower, ell, "weak"), _exact_value(lower, ell, "strong")
    weak = (BoundOutcome(uw + lw) if uw is not None and lw is not None
            else BoundOutcome(None, "a factor pair is not divisible"))
    strong = (BoundOutcome(ls + (hn.order // pair.H.order) * us)
              if us is not None and ls is not None
              else BoundOutcome(None, "a factor pair is not strongly divisible"))
    return {"normal_step": weak, "normal_step_strong": strong}


def _semidirect_bound(pair: GroupPair, ell: int, spec) -> dict[str, BoundOutcome]:
    if pair.G.order != spec.n_group.order * spec.h_group.order or \
            pair.index != spec.n_group.order:
        raise ValidationError("semidirect hint sizes do not match the pair")
    if not semidirect_hypothesis(spec.n_group, spec.h_group, spec.raw_action(), ell):
        return {"semidirect": BoundOutcome(
            None, "restriction to the Sylow subgroup is not injective")}
    image = spec.image_group()
    nil_s = _nilpotency_class(_sylow(image, ell))
    nil_t = _nilpotency_class(_sylow(spec.n_group, ell))
    assert nil_s is not None and nil_t is not None
    return {"semidirect": BoundOutcome(nil_s * nil_t + 1)}


def _composite_bound(ell: int, pairs: Sequence[GroupPair]) -> dict[str, BoundOutcome]:
    total = 0
    for factor in pairs:
        value = _exact_value(factor, ell, "weak")
        if value is None:
            return {"composite": BoundOutcome(None, "a factor pair is not divisible")}
        total += value
    return {"composite": BoundOutcome(total)}


def _composite_strong_bound(ell: int, weighted: Sequence[tuple[GroupPair, int]]
                            ) -> dict[str, BoundOutcome]:
    total = Fraction(0)
    for factor, weight in weighted:
        value = _exact_value(factor, ell, "strong")
        if value is None:
            return {"composite_strong": BoundOutcome(
                None, "a factor pair is not strongly divisible")}
        total += weight * value
    return {"composite_strong": BoundOutcome(total)}


def _restriction_bound(pair: GroupPair, ell: int,
                       big: GroupPair) -> dict[str, BoundOutcome]:
    if not pair.G.is_subgroup_of(big.G):
        raise ValidationError("restriction hint must contain the pair's group")
    meet = big.H.element_set() & pair.G.element_set()
    if meet != pair.H.element_set():
        raise ValidationError("restriction hint: H must equal the intersection")
    value = _exact_value(big, ell, "strong")
    if value is None:
        return {"restriction_strong": BoundOutcome(
            None, "enclosing pair is not strongly divisible")}
    return {"restriction_strong": BoundOutcome(value)}


# ---------------------------------------------------------------------------
# semidirect hypothesis and the all-primes scan


def semidirect_hypothesis(n_group: PermGroup, h_group: PermGroup,
                          action: Sequence[Sequence[Permutation]],
                          ell: int) -> bool:
    """Check: the action image and N both have unique Sylow ell-subgroups S, T
    and no nonidentity element of S restricts to the identity on T."""
    require_prime(ell)
    from .constructors import ActionSpec  # deferred: constructors builds on this module

    spec = action if isinstance(action, ActionSpec) else ActionSpec(
        n_group, h_group, tuple(tuple(m) for m in action))
    image = spec.image_group()
    syl_image = _sylow(image, ell)
    if not syl_image.is_normal_in(image):
        return False
    syl_n = _sylow(n_group, ell)
    if not syl_n.is_normal_in(n_group):
        return False
    n_pos = {a: i for i, a in enumerate(n_group.elements)}
    t_points = [n_pos[a] for a in syl_n.elements]
    for alpha in syl_image.elements:
        if alpha.is_identity():
            continue
        if all(alpha(p) == p for p in t_points):
            return False
    return True


@dataclass(frozen=True)
class ScanRow:
    representative: PermGroup
    verdicts: dict[int, bool]

    @property
    def fully_divisible(self) -> bool:
        return all(self.verdicts.values())


@dataclass(frozen=True)
class ScanResult:
    group: PermGroup
    rows: tuple[ScanRow, ...]
    fully_divisible_count: int


def scan_all_primes(group: PermGroup, work_limit: Optional[int] = None) -> ScanResult:
    """For each conjugacy class of subgroups 1 < H < G, decide divisibility at
    every prime dividing |G| (all other primes are vacuously divisible)."""
    lat = lattice_for(group, work_limit)
    table = lat.table
    primes = prime_divisors(group.order)
    _, classes = lat.partition(lat.whole())
    by_prime: dict[int, list[frozenset[int]]] = {p: [] for p in primes}
    for cls in classes:
        o = table.order_of[min(cls)]
        if o in by_prime:
            by_prime[o].append(cls)

    rows = []
    count = 0
    for rep, _size in lat.idx_class_reps():
        if len(rep.members) in (1, table.n):
            continue
        supersets = lat.supersets_of(rep.members)
        verdicts: dict[int, bool] = {}
        for p in primes:
            verdicts[p] = all(
                _class_covered(lat, cls, rep.members, supersets)
                for cls in by_prime[p] if not cls <= rep.members)
        row = ScanRow(lat.to_group(rep), verdicts)
        rows.append(row)
        if row.fully_divisible:
            count += 1
    return ScanResult(group, tuple(rows), count)


def _class_covered(lat: GroupLattice, cls: frozenset[int],
                   h_members: frozenset[int], supersets) -> bool:
    for cand in supersets:
        hits = cls & cand.members
        if not hits:
            continue
        class_id, classes = lat.partition(cand)
        for tau in hits:
            if classes[class_id[tau]].isdisjoint(h_members):
                return True
    return False


# ---------------------------------------------------------------------------
# serialization


def _frac_dict(value: Fraction) -> dict:
    return {"num": value.numerator, "den": value.denominator}


def _bound_jsonable(value: Optional[BoundValue]):
    if value is None:
        return None
    if isinstance(value, Fraction):
        return _frac_dict(value)
    return value


def _constraint_jsonable(constraint: Constraint) -> dict:
    if isinstance(constraint, WeakConstraint):
        return {"kind": "class", "representative": list(constraint.class_rep.images),
                "size": len(constraint.members)}
    return {"kind": "element", "element": list(constraint.element.images)}


def report_to_dict(report: DivisibilityReport, include_timing: bool = False) -> dict:
    """JSON-ready dict; rationals appear as {"num": ..., "den": ...}."""
    witnesses = []
    for w in report.witnesses:
        covers = []
        for entry in w.covers:
            item = {}
            if "class_rep" in entry:
                item["class_rep"] = list(entry["class_rep"].images)
            if "conjugate" in entry:
                item["conjugate"] = list(entry["conjugate"].images)
            if "element" in entry:
                item["element"] = list(entry["element"].images)
            covers.append(item)
        witnesses.append({
            "generators": [list(g.images) for g in w.generators],
            "order": w.order,
            "index": w.index,
            "covers": covers,
        })
    return {
        "pair": {"G": group_to_literal(report.pair.G),
                 "H": group_to_literal(report.pair.H)},
        "prime": report.prime,
        "divisible": report.divisible,
        "delta": report.delta,
        "big_delta": _bound_jsonable(report.big_delta),
        "witnesses": witnesses,
        "bounds": {name: _bound_jsonable(v) for name, v in sorted(report.bounds.items())},
        "uncovered": (_constraint_jsonable(report.uncovered)
                      if report.uncovered is not None else None),
        "elapsed": report.elapsed if include_timing else None,
    }
