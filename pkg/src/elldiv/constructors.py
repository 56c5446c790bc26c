"""Standard groups and pairings: cyclic, dihedral, symmetric, alternating,
direct and semidirect products, and the small named pairs used throughout.

Dihedral convention: r is the n-cycle (0 1 ... n-1) and s is the reflection
x -> -x mod n, so <r, s | r^n, s^2, (rs)^2> holds on the nose and <s> is the
canonical point-0-fixing reflection subgroup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .divisibility import GroupPair
from .errors import ValidationError
from .perm import (PermGroup, Permutation, automorphism_index_perm,
                   extend_homomorphism)

_NAMES = ("cyclic", "dihedral", "symmetric", "alternating")


def named_group(name: str, n: int, element_cap: Optional[int] = None) -> PermGroup:
    """cyclic(n), dihedral(n) of order 2n, symmetric(n), alternating(n)."""
    if name not in _NAMES:
        raise ValidationError(f"unknown group family {name!r}; expected one of {_NAMES}")
    if n < 1:
        raise ValidationError(f"{name} group requires n >= 1, got {n}")
    if name == "cyclic":
        if n == 1:
            return PermGroup.trivial(1)
        return PermGroup.generate(n, [_ncycle(n)], element_cap=element_cap)
    if name == "dihedral":
        if n == 1:  # order 2, realized regularly
            return PermGroup.generate(2, [Permutation([1, 0])])
        if n == 2:  # Klein four, realized regularly
            return PermGroup.generate(
                4, [Permutation([1, 0, 3, 2]), Permutation([2, 3, 0, 1])])
        return PermGroup.generate(n, [_ncycle(n), _reflection(n)],
                                  element_cap=element_cap)
    if name == "symmetric":
        if n == 1:
            return PermGroup.trivial(1)
        if n == 2:
            return PermGroup.generate(2, [Permutation([1, 0])])
        return PermGroup.generate(n, [_ncycle(n), _transposition(n)],
                                  element_cap=element_cap)
    # alternating
    if n <= 2:
        return PermGroup.trivial(max(n, 1))
    if n == 3:
        return PermGroup.generate(3, [Permutation([1, 2, 0])])
    three_cycle = Permutation([1, 2, 0] + list(range(3, n)))
    if n % 2 == 1:
        big = _ncycle(n)
    else:
        big = Permutation([0] + [i % (n - 1) + 1 for i in range(1, n)])
    return PermGroup.generate(n, [three_cycle, big], element_cap=element_cap)


def _ncycle(n: int) -> Permutation:
    return Permutation([(i + 1) % n for i in range(n)])


def _reflection(n: int) -> Permutation:
    return Permutation([(-i) % n for i in range(n)])


def _transposition(n: int) -> Permutation:
    return Permutation([1, 0] + list(range(2, n)))


def dihedral_pair(n: int) -> GroupPair:
    """The dihedral group of order 2n over its point-0-fixing reflection."""
    if n < 3:
        raise ValidationError("dihedral pair requires n >= 3")
    group = named_group("dihedral", n)
    return GroupPair(group, group.subgroup([_reflection(n)]))


_KLEIN_GENS = ("(1 2)(3 4)", "(1 3)(2 4)")


def klein_in_s5_pair() -> GroupPair:
    s5 = named_group("symmetric", 5)
    klein = s5.subgroup([Permutation.from_cycles(5, c) for c in _KLEIN_GENS])
    return GroupPair(s5, klein)


def klein_in_s4_pair() -> GroupPair:
    s4 = named_group("symmetric", 4)
    klein = s4.subgroup([Permutation.from_cycles(4, c) for c in _KLEIN_GENS])
    return GroupPair(s4, klein)


def direct_product(a: PermGroup, b: PermGroup,
                   element_cap: Optional[int] = None) -> PermGroup:
    """A x B acting on the disjoint union of the two point sets."""
    da, db = a.degree, b.degree
    gens = [Permutation(list(g.images) + list(range(da, da + db)))
            for g in a.generators]
    gens += [Permutation(list(range(da)) + [da + i for i in g.images])
             for g in b.generators]
    out = PermGroup.generate(da + db, gens, element_cap=element_cap)
    if out.order != a.order * b.order:
        raise AssertionError("direct product closure has the wrong order")
    return out


@dataclass(frozen=True)
class ActionSpec:
    """A homomorphism from h_group into the automorphisms of n_group.

    h_generator_images[i][j] is the image of n_group.generators[j] under the
    automorphism assigned to h_group.generators[i]. Construction verifies that
    each assignment extends to an automorphism and that the assignment on
    h_group's generators respects all of its relations.
    """

    n_group: PermGroup
    h_group: PermGroup
    h_generator_images: tuple[tuple[Permutation, ...], ...]

    def __post_init__(self):
        if len(self.h_generator_images) != len(self.h_group.generators):
            raise ValidationError("one automorphism per h_group generator is required")
        auts = [automorphism_index_perm(self.n_group, images)
                for images in self.h_generator_images]
        phi = extend_homomorphism(self.h_group, auts, self.n_group.order)
        if phi is None:
            raise ValidationError("action does not respect the relations of h_group")
        object.__setattr__(self, "_phi", phi)

    def action_of(self, h: Permutation) -> Permutation:
        """The automorphism of h, as a permutation of n_group's element list."""
        phi: dict = getattr(self, "_phi")
        if h not in phi:
            raise ValidationError("element is not a member of h_group")
        return phi[h]

    def kernel_size(self) -> int:
        phi: dict = getattr(self, "_phi")
        return sum(1 for v in phi.values() if v.is_identity())

    def image_group(self) -> PermGroup:
        """phi(H) as a permutation group on n_group's element list."""
        phi: dict = getattr(self, "_phi")
        return PermGroup.from_elements(
            self.n_group.order if self.n_group.order > 1 else 1,
            set(phi.values()),
        )

    def raw_action(self) -> tuple[tuple[Permutation, ...], ...]:
        return self.h_generator_images


def trivial_action(n_group: PermGroup, h_group: PermGroup) -> ActionSpec:
    images = tuple(tuple(n_group.generators) for _ in h_group.generators)
    return ActionSpec(n_group, h_group, images)


def inversion_action(n_group: PermGroup) -> ActionSpec:
    """Order-2 group acting on an abelian n_group by inversion."""
    if not n_group.is_abelian():
        raise ValidationError("inversion is only an automorphism of abelian groups")
    c2 = PermGroup.generate(2, [Permutation([1, 0])])
    images = (tuple(g.inverse() for g in n_group.generators),)
    return ActionSpec(n_group, c2, images)


def power_action(n_group: PermGroup, h_group: PermGroup, k: int) -> ActionSpec:
    """h_group's generators all act on an abelian n_group by x -> x**k."""
    if not n_group.is_abelian():
        raise ValidationError("powering is only an automorphism of abelian groups")
    images = tuple(tuple(g ** k for g in n_group.generators)
                   for _ in h_group.generators)
    return ActionSpec(n_group, h_group, images)


def semidirect_product(spec: ActionSpec, element_cap: Optional[int] = None
                       ) -> tuple[PermGroup,
                                  Callable[[Permutation], Permutation],
                                  Callable[[Permutation], Permutation]]:
    """Faithful permutation realization of n_group x| h_group.

    Acts on n_group's element list when the action is faithful there (trivial
    kernel), otherwise on the |N| x |H| regular points. Returns the group and
    the two embeddings.
    """
    n_group, h_group = spec.n_group, spec.h_group
    n_elems = n_group.elements
    n_pos = {a: i for i, a in enumerate(n_elems)}

    if spec.kernel_size() == 1:
        degree = max(n_group.order, 1)

        def embed_n(a: Permutation) -> Permutation:
            if a not in n_group:
                raise ValidationError("element is not a member of n_group")
            return Permutation(n_pos[a * n_elems[x]] for x in range(degree))

        def embed_h(h: Permutation) -> Permutation:
            return spec.action_of(h)

    else:
        h_elems = h_group.elements
        h_pos = {a: i for i, a in enumerate(h_elems)}
        nh = len(h_elems)
        degree = n_group.order * h_group.order

        def embed_n(a: Permutation) -> Permutation:
            if a not in n_group:
                raise ValidationError("element is not a member of n_group")
            images = []
            for i in range(n_group.order):
                base = n_pos[a * n_elems[i]] * nh
                images.extend(base + j for j in range(nh))
            return Permutation(images)

        def embed_h(h: Permutation) -> Permutation:
            act = spec.action_of(h)
            images = [0] * degree
            for i in range(n_group.order):
                base = act(i) * nh
                for j in range(nh):
                    images[i * nh + j] = base + h_pos[h * h_elems[j]]
            return Permutation(images)

    gens = [embed_n(g) for g in n_group.generators]
    gens += [embed_h(g) for g in h_group.generators]
    group = PermGroup.generate(degree, gens, element_cap=element_cap)
    if group.order != n_group.order * h_group.order:
        raise AssertionError("semidirect closure has the wrong order")
    return group, embed_n, embed_h


def semidirect_pair(spec: ActionSpec) -> GroupPair:
    """The pair (N x| H) / H in its faithful permutation realization."""
    group, _, embed_h = semidirect_product(spec)
    h_image = PermGroup.from_elements(
        group.degree, {embed_h(h) for h in spec.h_group.elements})
    return GroupPair(group, h_image)


def frobenius20() -> PermGroup:
    """Order-20 group: C5 extended by C4 acting as squaring."""
    c5 = named_group("cyclic", 5)
    c4 = named_group("cyclic", 4)
    group, _, _ = semidirect_product(power_action(c5, c4, 2))
    return group
