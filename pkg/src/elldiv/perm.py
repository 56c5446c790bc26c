"""Finite permutation groups with fully enumerated, canonically ordered elements.

Permutations act on the points 0..degree-1 and are stored as image tuples, so
lexicographic comparison of tuples doubles as the canonical element order.
Groups are immutable; every derived object (subgroup, quotient, series) is
again a plain PermGroup, and two groups of equal degree are equal exactly when
their element sets are equal.
"""

from __future__ import annotations

import math
import re
from functools import reduce
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .arith import is_prime_power, prime_divisors, require_prime, valuation
from .errors import ElementCapExceeded, ValidationError

DEFAULT_ELEMENT_CAP = 200_000

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """A bijection of {0,...,degree-1}, stored as the tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValidationError(f"not a permutation of 0..{len(images)-1}: {images}")
        object.__setattr__(self, "images", images)

    @staticmethod
    def identity(degree: int) -> "Permutation":
        if degree < 1:
            raise ValidationError("degree must be a positive integer")
        return Permutation(range(degree))

    @staticmethod
    def from_cycles(degree: int, text: str) -> "Permutation":
        """Parse 1-indexed cycle notation like "(1 2 3)(4 5)"; "()" is the identity."""
        if degree < 1:
            raise ValidationError("degree must be a positive integer")
        stripped = text.replace(",", " ").strip()
        if not stripped or stripped == "()":
            return Permutation.identity(degree)
        if stripped != "".join(m.group(0) for m in _CYCLE_RE.finditer(stripped)):
            raise ValidationError(f"malformed cycle notation: {text!r}")
        images = list(range(degree))
        seen: set[int] = set()
        for m in _CYCLE_RE.finditer(stripped):
            body = m.group(1).split()
            if not body:
                continue
            pts = [int(tok) - 1 for tok in body]
            if any(p < 0 or p >= degree for p in pts):
                raise ValidationError(f"cycle point out of range 1..{degree}: {text!r}")
            if len(set(pts)) != len(pts) or seen.intersection(pts):
                raise ValidationError(f"repeated point in cycles: {text!r}")
            seen.update(pts)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a] = b
        return Permutation(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # function composition: (a*b)(x) = a(b(x))
        if len(self.images) != len(other.images):
            raise ValidationError("degree mismatch in composition")
        a = self.images
        return Permutation(a[x] for x in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def __pow__(self, n: int) -> "Permutation":
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate_by(self, g: "Permutation") -> "Permutation":
        return g * self * g.inverse()

    def order(self) -> int:
        return reduce(math.lcm, (len(c) for c in self.cycles()), 1)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each rotated to start at its least point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = self.images[nxt]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        """1-indexed cycle notation; "()" for the identity."""
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cycs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __le__(self, other: "Permutation") -> bool:
        return self.images <= other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


def element_order(a: Permutation) -> int:
    """Least m >= 1 with a**m equal to the identity (lcm of cycle lengths)."""
    return a.order()


def _closure(
    degree: int,
    generators: Sequence[Permutation],
    element_cap: Optional[int],
) -> frozenset[Permutation]:
    cap = DEFAULT_ELEMENT_CAP if element_cap is None else element_cap
    ident = Permutation.identity(degree)
    elements = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = x * g
                if y not in elements:
                    if len(elements) >= cap:
                        raise ElementCapExceeded(
                            f"group on {degree} points exceeds the element cap of {cap}"
                        )
                    elements.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elements)


class PermGroup:
    """A finite permutation group with its full, sorted element list."""

    __slots__ = ("degree", "generators", "elements", "order", "_set", "_hash")

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 _elements: Optional[frozenset[Permutation]] = None,
                 element_cap: Optional[int] = None):
        if degree < 1:
            raise ValidationError("degree must be a positive integer")
        generators = tuple(generators)
        for g in generators:
            if g.degree != degree:
                raise ValidationError(
                    f"generator degree {g.degree} does not match group degree {degree}"
                )
        if _elements is None:
            _elements = _closure(degree, generators, element_cap)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "_set", _elements)
        object.__setattr__(self, "elements", tuple(sorted(_elements)))
        object.__setattr__(self, "order", len(_elements))
        object.__setattr__(self, "_hash", hash((degree, _elements)))

    # -- construction -----------------------------------------------------

    @staticmethod
    def generate(degree: int, generators: Sequence[Permutation],
                 element_cap: Optional[int] = None) -> "PermGroup":
        return PermGroup(degree, generators, element_cap=element_cap)

    @staticmethod
    def trivial(degree: int) -> "PermGroup":
        return PermGroup(degree, ())

    @staticmethod
    def from_elements(degree: int, elements: Iterable[Permutation],
                      generators: Optional[Sequence[Permutation]] = None) -> "PermGroup":
        """Wrap an element set already known to be closed (not re-verified)."""
        elems = frozenset(elements)
        gens = tuple(generators) if generators is not None else None
        if gens is None:
            gens = _small_generating_set(elems, degree)
        return PermGroup(degree, gens, _elements=elems)

    def subgroup(self, generators: Sequence[Permutation]) -> "PermGroup":
        sub = PermGroup(self.degree, generators)
        if not sub._set <= self._set:
            raise ValidationError("generators do not lie in the group")
        return sub

    # -- basic protocol ----------------------------------------------------

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def contains(self, a: Permutation) -> bool:
        if a.degree != self.degree:
            raise ValidationError(
                f"degree mismatch: element on {a.degree} points vs group on {self.degree}"
            )
        return a in self._set

    def __contains__(self, a: Permutation) -> bool:
        return self.contains(a)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, PermGroup) and self.degree == other.degree
                and self._set == other._set)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"

    def element_set(self) -> frozenset[Permutation]:
        return self._set

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and self._set <= other._set

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    # -- conjugacy ----------------------------------------------------------

    def conjugacy_class_of(self, a: Permutation) -> tuple[Permutation, ...]:
        """Orbit of a under conjugation, as a sorted tuple."""
        if not self.contains(a):
            raise ValidationError("element is not a member of the group")
        gens = self.generators
        invs = [g.inverse() for g in gens]
        orbit = {a}
        frontier = [a]
        while frontier:
            nxt = []
            for x in frontier:
                for g, gi in zip(gens, invs):
                    y = g * x * gi
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(orbit))

    def conjugacy_classes(self) -> list[tuple[Permutation, ...]]:
        """Partition of the element set, sorted by class representative."""
        remaining = set(self._set)
        classes = []
        for a in self.elements:
            if a in remaining:
                cls = self.conjugacy_class_of(a)
                classes.append(cls)
                remaining.difference_update(cls)
        return classes

    # -- order-based selections ----------------------------------------------

    def elements_of_order_power(self, ell: int) -> tuple[Permutation, ...]:
        """All elements whose order is a positive power of the prime ell, sorted."""
        require_prime(ell)
        return tuple(a for a in self.elements if is_prime_power(a.order(), ell))

    def elements_of_order(self, n: int) -> tuple[Permutation, ...]:
        return tuple(a for a in self.elements if a.order() == n)

    # -- normalizers and Sylow subgroups --------------------------------------

    def normalizer(self, sub: "PermGroup") -> "PermGroup":
        """N_G(sub), computed by scanning all elements."""
        if not sub.is_subgroup_of(self):
            raise ValidationError("normalizer argument is not a subgroup")
        gens = sub.generators if sub.generators else (self.identity,)
        members = [g for g in self.elements
                   if all(g * h * g.inverse() in sub._set for h in gens)]
        return PermGroup.from_elements(self.degree, members)

    def is_normal_in(self, big: "PermGroup") -> bool:
        if not self.is_subgroup_of(big):
            return False
        gens = self.generators if self.generators else (self.identity,)
        return all(g * h * g.inverse() in self._set
                   for g in big.generators for h in gens)

    def sylow_subgroup(self, ell: int) -> "PermGroup":
        """A Sylow ell-subgroup, grown deterministically by normalizer ascent.

        Seeded with the least element of ell-power order; trivial when ell
        does not divide the group order.
        """
        require_prime(ell)
        target = ell ** valuation(self.order, ell)
        if target == 1:
            return PermGroup.trivial(self.degree)
        seed = self.elements_of_order_power(ell)[0]
        current = self.subgroup([seed])
        while current.order < target:
            norm = self.normalizer(current)
            grown = None
            for x in norm.elements:
                if x in current._set or not is_prime_power(x.order(), ell):
                    continue
                cand = self.subgroup(list(current.generators) + [x])
                if is_prime_power(cand.order, ell):
                    grown = cand
                    break
            if grown is None:  # cannot happen: a proper ell-subgroup grows in its normalizer
                raise AssertionError("Sylow ascent stalled")
            current = grown
        return current

    # -- central series --------------------------------------------------------

    def commutator_with(self, other: "PermGroup") -> "PermGroup":
        """[self, other]: normal closure in self of generator commutators."""
        if not other.is_subgroup_of(self):
            raise ValidationError("commutator argument is not a subgroup")
        bgens = other.generators if other.generators else (self.identity,)
        agens = self.generators if self.generators else (self.identity,)
        seeds = {a * b * a.inverse() * b.inverse() for a in agens for b in bgens}
        conj = [(g, g.inverse()) for g in agens]
        # grow the seed set until it is stable under conjugation; the closure
        # of a conjugation-stable set is normal, hence equals [self, other]
        while True:
            elements = _closure(self.degree, sorted(seeds), element_cap=self.order + 1)
            extra = {g * x * gi for g, gi in conj for x in seeds} - elements
            if not extra:
                return PermGroup.from_elements(self.degree, elements)
            seeds |= extra

    def lower_central_series(self) -> tuple[list["PermGroup"], Optional[int]]:
        """Descending series G = g1 >= [G,g1] >= [G,g2] >= ... until stable.

        Returns (series, c) with c the nilpotency class when the series hits
        the trivial group, else None.
        """
        series = [self]
        while True:
            nxt = self.commutator_with(series[-1])
            if nxt.order == series[-1].order:
                break
            series.append(nxt)
            if nxt.order == 1:
                break
        if series[-1].order == 1:
            return series, len(series) - 1
        return series, None

    def upper_central_series(self) -> tuple[list["PermGroup"], Optional[int]]:
        """Ascending series 1 = Z0 <= Z1 <= ... until stable; same return shape."""
        series = [PermGroup.trivial(self.degree)]
        gens = self.generators if self.generators else (self.identity,)
        while True:
            prev = series[-1]._set
            members = [g for g in self.elements
                       if all(g * h * g.inverse() * h.inverse() in prev for h in gens)]
            nxt = PermGroup.from_elements(self.degree, members)
            if nxt.order == series[-1].order:
                break
            series.append(nxt)
            if nxt.order == self.order:
                break
        if series[-1].order == self.order:
            return series, len(series) - 1
        return series, None

    def nilpotency_class(self) -> Optional[int]:
        return self.lower_central_series()[1]

    def center(self) -> "PermGroup":
        gens = self.generators if self.generators else (self.identity,)
        members = [g for g in self.elements if all(g * h == h * g for h in gens)]
        return PermGroup.from_elements(self.degree, members)

    # -- coset actions -----------------------------------------------------------

    def left_cosets(self, sub: "PermGroup") -> list[Permutation]:
        """Canonical (lexicographically least) representatives of left cosets."""
        if not sub.is_subgroup_of(self):
            raise ValidationError("coset argument is not a subgroup")
        assigned: dict[Permutation, Permutation] = {}
        reps = []
        for g in self.elements:
            if g in assigned:
                continue
            reps.append(g)
            for h in sub.elements:
                assigned[g * h] = g
        return reps

    def _coset_lookup(self, sub: "PermGroup") -> tuple[list[Permutation], dict[Permutation, int]]:
        reps = self.left_cosets(sub)
        pos = {r: i for i, r in enumerate(reps)}
        lookup = {}
        for i, r in enumerate(reps):
            for h in sub.elements:
                lookup[r * h] = i
        return reps, lookup

    def quotient_action(self, normal: "PermGroup") -> tuple["PermGroup", Callable[[Permutation], Permutation]]:
        """Permutation image of G on the left cosets of a normal subgroup.

        Returns (Q, project) where project is a surjective homomorphism with
        kernel exactly the given subgroup. Coset indices follow the sorted
        order of the least coset representatives.
        """
        if not normal.is_subgroup_of(self):
            raise ValidationError("quotient argument is not a subgroup")
        if not normal.is_normal_in(self):
            raise ValidationError("quotient argument is not normal")
        reps, lookup = self._coset_lookup(normal)
        q = len(reps)
        table: dict[Permutation, Permutation] = {}
        images = set()
        for g in self.elements:
            img = Permutation(lookup[g * reps[i]] for i in range(q))
            table[g] = img
            images.add(img)
        quotient = PermGroup.from_elements(
            q, images, generators=[table[g] for g in self.generators])

        def project(a: Permutation) -> Permutation:
            if a not in table:
                raise ValidationError("element is not a member of the group")
            return table[a]

        return quotient, project

    def coset_orbit_count(self, sub: "PermGroup", sigma: Permutation) -> int:
        """Number of <sigma>-orbits on the left cosets of sub."""
        if not self.contains(sigma):
            raise ValidationError("element is not a member of the group")
        reps, lookup = self._coset_lookup(sub)
        step = [lookup[sigma * r] for r in reps]
        seen = [False] * len(reps)
        orbits = 0
        for start in range(len(reps)):
            if seen[start]:
                continue
            orbits += 1
            i = start
            while not seen[i]:
                seen[i] = True
                i = step[i]
        return orbits

    # -- misc -----------------------------------------------------------------

    def small_generating_set(self) -> tuple[Permutation, ...]:
        return _small_generating_set(self._set, self.degree)

    def prime_divisors_of_order(self) -> list[int]:
        return prime_divisors(self.order) if self.order > 1 else []


def _small_generating_set(elements: frozenset[Permutation], degree: int) -> tuple[Permutation, ...]:
    """Greedy generating set: scan canonical order, keep strict enlargers."""
    if len(elements) == 1:
        return ()
    gens: list[Permutation] = []
    have: frozenset[Permutation] = frozenset([Permutation.identity(degree)])
    for a in sorted(elements):
        if a in have:
            continue
        gens.append(a)
        have = _closure(degree, gens, element_cap=len(elements) + 1)
        if len(have) == len(elements):
            break
    return tuple(gens)


def extend_homomorphism(domain: PermGroup, images: Sequence[Permutation],
                        codomain_degree: int) -> Optional[dict[Permutation, Permutation]]:
    """Extend generator images to a homomorphism on all of domain.

    images[i] is the target of domain.generators[i]. Returns the full map, or
    None when the images violate some relation of the domain (every edge of
    the Cayley graph is checked, which is sufficient).
    """
    if len(images) != len(domain.generators):
        raise ValidationError("one image per generator is required")
    for im in images:
        if im.degree != codomain_degree:
            raise ValidationError("image degree mismatch")
    phi = {domain.identity: Permutation.identity(codomain_degree)}
    frontier = [domain.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, mg in zip(domain.generators, images):
                y = x * g
                im = phi[x] * mg
                known = phi.get(y)
                if known is None:
                    phi[y] = im
                    nxt.append(y)
                elif known != im:
                    return None
        frontier = nxt
    return phi


def automorphism_index_perm(group: PermGroup, gen_images: Sequence[Permutation]) -> Permutation:
    """The automorphism of ``group`` sending generators to the given images,
    encoded as a permutation of the canonical element list.

    Raises when the images do not define an automorphism.
    """
    for im in gen_images:
        if im not in group:
            raise ValidationError("automorphism images must lie in the group")
    phi = extend_homomorphism(group, gen_images, group.degree)
    if phi is None:
        raise ValidationError("generator images do not respect the group relations")
    if set(phi.values()) != set(group.elements):
        raise ValidationError("generator images define a non-bijective endomorphism")
    pos = {a: i for i, a in enumerate(group.elements)}
    return Permutation(pos[phi[a]] for a in group.elements)


def group_from_literal(obj: object, element_cap: Optional[int] = None) -> PermGroup:
    """Build a group from the shared literal format.

    Accepts {"degree": n, "generators": [...]} where each generator is either
    a 0-indexed image array or a 1-indexed cycle string like "(1 2 3)(4 5)".
    """
    if not isinstance(obj, dict):
        raise ValidationError("group literal must be a JSON object")
    try:
        degree = obj["degree"]
        raw_gens = obj["generators"]
    except KeyError as exc:
        raise ValidationError(f"group literal is missing key {exc}") from exc
    if not isinstance(degree, int) or degree < 1:
        raise ValidationError("group literal degree must be a positive integer")
    if not isinstance(raw_gens, list):
        raise ValidationError("group literal generators must be a list")
    gens = []
    for item in raw_gens:
        if isinstance(item, str):
            gens.append(Permutation.from_cycles(degree, item))
        elif isinstance(item, list) and all(isinstance(v, int) for v in item):
            if len(item) != degree:
                raise ValidationError(
                    f"image array of length {len(item)} does not match degree {degree}")
            gens.append(Permutation(item))
        else:
            raise ValidationError(f"unsupported generator encoding: {item!r}")
    return PermGroup.generate(degree, gens, element_cap=element_cap)


def group_to_literal(group: PermGroup) -> dict:
    gens = group.generators if group.generators else group.small_generating_set()
    return {"degree": group.degree, "generators": [list(g.images) for g in gens]}
