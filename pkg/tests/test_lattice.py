import itertools

import pytest

from elldiv.constructors import named_group
from elldiv.errors import ValidationError
from elldiv.lattice import (all_subgroups, intermediate_subgroups,
                            intermediate_subgroups_idx,
                            subgroup_conjugacy_classes)
from elldiv.perm import PermGroup, Permutation

from library import compact_library


def brute_force_subgroups_by_subsets(group):
    """Exhaustive oracle: every subset that is closed is a subgroup.

    Only viable for tiny groups (2^|G| subsets)."""
    elems = list(group.elements)
    found = set()
    for r in range(1, len(elems) + 1):
        for combo in itertools.combinations(elems, r):
            s = frozenset(combo)
            if group.identity not in s:
                continue
            if all(a * b in s for a in s for b in s):
                found.add(s)
    return found


def brute_force_subgroups_two_generated(group):
    """Oracle via closures of all generator pairs; complete whenever every
    subgroup of the group is 2-generated (true for S4 and the other small
    cases it is used on)."""
    elems = list(group.elements)
    found = {frozenset([group.identity])}
    for a in elems:
        for b in elems:
            found.add(PermGroup.generate(group.degree, [a, b]).element_set())
    return found


def test_trivial_group_has_one_subgroup():
    assert len(all_subgroups(PermGroup.trivial(1))) == 1


def test_klein_four_against_subset_oracle():
    klein = named_group("dihedral", 2)
    subs = all_subgroups(klein)
    assert len(subs) == 5
    oracle = brute_force_subgroups_by_subsets(klein)
    assert {g.element_set() for g in subs} == oracle


def test_c6_against_subset_oracle():
    c6 = named_group("cyclic", 6)
    subs = all_subgroups(c6)
    oracle = brute_force_subgroups_by_subsets(c6)
    assert {g.element_set() for g in subs} == oracle
    assert len(subs) == 4


def test_s4_against_join_closure_oracle():
    s4 = named_group("symmetric", 4)
    subs = all_subgroups(s4)
    assert len(subs) == 30
    oracle = brute_force_subgroups_two_generated(s4)
    assert {g.element_set() for g in subs} == oracle


def test_subgroup_list_is_canonical():
    s4 = named_group("symmetric", 4)
    subs = list(all_subgroups(s4))
    keys = [(g.order, g.elements) for g in subs]
    assert keys == sorted(keys)
    assert subs[0].order == 1 and subs[-1] == s4
    assert len({g.element_set() for g in subs}) == len(subs)


def test_lagrange_and_membership():
    for _, group in compact_library():
        if group.order > 30:
            continue
        for sub in all_subgroups(group):
            assert group.order % sub.order == 0
            assert sub.is_subgroup_of(group)


def test_lattice_invariant_under_conjugation():
    s4 = named_group("symmetric", 4)
    subs = {g.element_set() for g in all_subgroups(s4)}
    for g in s4.elements[:8]:
        moved = {frozenset(g * a * g.inverse() for a in s) for s in subs}
        assert moved == subs


def test_intermediate_examples():
    s4 = named_group("symmetric", 4)
    assert [g.order for g in intermediate_subgroups(s4, s4)] == [24]
    stab = s4.subgroup([Permutation.from_cycles(4, "(2 3)"),
                        Permutation.from_cycles(4, "(2 3 4)")])
    assert [g.order for g in intermediate_subgroups(s4, stab)] == [6, 24]
    d4 = named_group("dihedral", 4)
    s = d4.subgroup([Permutation([0, 3, 2, 1])])
    got = intermediate_subgroups(d4, s)
    assert [g.order for g in got] == [2, 4, 8]
    # cross-check by filtering the full lattice of D4 (10 subgroups)
    full = all_subgroups(d4)
    assert len(full) == 10
    expected = [g for g in full if s.is_subgroup_of(g)]
    assert list(got) == expected


def test_intermediate_of_trivial_is_everything():
    for _, group in compact_library():
        if group.order > 24:
            continue
        trivial = PermGroup.trivial(group.degree)
        assert list(intermediate_subgroups(group, trivial)) == \
            list(all_subgroups(group))


def test_intermediate_requires_subgroup():
    s4 = named_group("symmetric", 4)
    c5 = named_group("cyclic", 5)
    with pytest.raises(ValidationError):
        intermediate_subgroups(s4, c5)


def test_join_ascent_agrees_with_superset_filter():
    # forces the ascent path by clearing the lattice cache association:
    # intermediate_subgroups_idx consults the cache only through the group
    # object, so a freshly generated twin uses the same cache; instead the
    # filter answer is recomputed here and compared against the ascent result
    # obtained before the lattice existed.
    import elldiv.lattice as lattice_mod

    for name, group in compact_library():
        if group.order > 24:
            continue
        for sub in list(all_subgroups(group))[:12]:
            lattice_mod._INTERMEDIATE_CACHE.clear()
            lat = lattice_mod._LATTICE_CACHE.pop(group)
            try:
                by_ascent = intermediate_subgroups(group, sub)
            finally:
                lattice_mod._LATTICE_CACHE[group] = lat
            lattice_mod._INTERMEDIATE_CACHE.clear()
            by_filter = intermediate_subgroups(group, sub)
            assert list(by_ascent) == list(by_filter), (name, sub.order)


def test_subgroup_classes_abelian_all_singletons():
    klein = named_group("dihedral", 2)
    classes = subgroup_conjugacy_classes(klein)
    assert len(classes) == 5
    assert all(size == 1 for _, size in classes)


def test_subgroup_classes_s3():
    s3 = named_group("symmetric", 3)
    classes = subgroup_conjugacy_classes(s3)
    assert sorted(rep.order for rep, _ in classes) == [1, 2, 3, 6]


def test_subgroup_classes_a5():
    a5 = named_group("alternating", 5)
    subs = all_subgroups(a5)
    assert len(subs) == 59
    classes = subgroup_conjugacy_classes(a5)
    assert len(classes) == 9
    assert sum(size for _, size in classes) == 59


def test_class_sizes_match_normalizer_index():
    for name, group in compact_library():
        if group.order > 24:
            continue
        for rep, size in subgroup_conjugacy_classes(group):
            normalizer = group.normalizer(rep)
            assert size == group.order // normalizer.order, name


def test_class_partition_against_conjugation_oracle():
    a4 = named_group("alternating", 4)
    subs = [g.element_set() for g in all_subgroups(a4)]
    seen = set()
    oracle_classes = 0
    for s in subs:
        if s in seen:
            continue
        orbit = {frozenset(g * a * g.inverse() for a in s) for g in a4}
        seen.update(orbit)
        oracle_classes += 1
    assert oracle_classes == len(subgroup_conjugacy_classes(a4))
