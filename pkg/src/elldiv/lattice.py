"""Complete subgroup lattices of small groups.

The enumeration is exact: starting from the cyclic subgroups of prime-power
order, conjugacy-class representatives are repeatedly joined with cyclic
subgroups until no new subgroup appears, and each discovery is expanded into
its full conjugation orbit. Every subgroup of a finite group arises by
adjoining one prime-power element to a smaller subgroup, so the fixpoint is
the whole lattice. Work is metered by a step budget rather than silently
truncated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .arith import is_prime_power
from .errors import ValidationError
from .perm import PermGroup
from .table import MulTable, WorkBudget, table_for


@dataclass(frozen=True)
class SubgroupList:
    """All subgroups of ``parent`` within some bounds, canonically ordered."""

    parent: PermGroup
    subgroups: tuple[PermGroup, ...]

    def __len__(self) -> int:
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)


class _IdxSub:
    __slots__ = ("members", "gens")

    def __init__(self, members: frozenset[int], gens: tuple[int, ...]):
        self.members = members
        self.gens = gens


def _prime_power_cyclics(table: MulTable) -> list[_IdxSub]:
    """One cyclic subgroup per distinct <x> with x of prime-power order."""
    seen: dict[frozenset[int], int] = {}
    out = []
    for x in range(table.n):
        o = table.order_of[x]
        if o == 1 or not _is_prime_power_order(o):
            continue
        members = _cyclic_members(table, x)
        if members not in seen:
            seen[members] = x
            out.append(_IdxSub(members, (x,)))
    return out


def _is_prime_power_order(o: int) -> bool:
    p = 2
    while p * p <= o:
        if o % p == 0:
            return is_prime_power(o, p)
        p += 1
    return True  # o is prime


def _cyclic_members(table: MulTable, x: int) -> frozenset[int]:
    members = {table.e}
    y = x
    while y != table.e:
        members.add(y)
        y = table.rows[y][x]
    return frozenset(members)


def _sort_key(sub: _IdxSub):
    return (len(sub.members), sorted(sub.members))


class GroupLattice:
    """Cached full lattice of a group: all subgroups plus conjugacy classes."""

    def __init__(self, group: PermGroup, work_limit: Optional[int] = None):
        self.group = group
        table = table_for(group)
        self.table = table
        budget = WorkBudget(work_limit)

        cyclics = _prime_power_cyclics(table)
        trivial = _IdxSub(frozenset([table.e]), ())
        whole = _IdxSub(frozenset(range(table.n)), table.gen_idx)
        conj_maps = [table.conj_map(g) for g in table.gen_idx]

        known: dict[frozenset[int], _IdxSub] = {}
        class_reps: list[_IdxSub] = []
        class_sizes: list[int] = []
        worklist: list[_IdxSub] = []

        def register(sub: _IdxSub) -> None:
            if sub.members in known:
                return
            orbit = {sub.members: sub}
            frontier = [sub.members]
            while frontier:
                nxt = []
                for mem in frontier:
                    for cmap in conj_maps:
                        img = frozenset(cmap[x] for x in mem)
                        if img not in orbit:
                            orbit[img] = _IdxSub(img, ())
                            nxt.append(img)
                frontier = nxt
            rep_members = min(orbit, key=sorted)
            rep = orbit[rep_members]
            if not rep.gens:
                rep = _IdxSub(rep_members, table.small_gens(rep_members))
                orbit[rep_members] = rep
            known.update(orbit)
            class_reps.append(rep)
            class_sizes.append(len(orbit))
            worklist.append(rep)

        register(trivial)
        for cyc in cyclics:
            register(cyc)
        register(whole)
        while worklist:
            base = worklist.pop()
            for cyc in cyclics:
                if cyc.members <= base.members:
                    continue
                joined = table.close(base.gens + cyc.gens, budget)
                if joined not in known:
                    register(_IdxSub(joined, base.gens + cyc.gens))

        order = sorted(range(len(class_reps)), key=lambda i: _sort_key(class_reps[i]))
        self._class_reps = [class_reps[i] for i in order]
        self._class_sizes = [class_sizes[i] for i in order]
        self._subs = sorted(known.values(), key=_sort_key)
        for sub in self._subs:
            if not sub.gens and len(sub.members) > 1:
                sub.gens = table.small_gens(sub.members)
        self._by_members = {s.members: s for s in self._subs}

    # -- idx-level views used by the divisibility solver -------------------

    def idx_subgroups(self) -> list[_IdxSub]:
        return self._subs

    def idx_class_reps(self) -> list[tuple[_IdxSub, int]]:
        return list(zip(self._class_reps, self._class_sizes))

    def members_index(self) -> dict[frozenset[int], _IdxSub]:
        return self._by_members

    def whole(self) -> _IdxSub:
        return self._subs[-1]

    def partition(self, sub: _IdxSub) -> tuple[dict[int, int], list[frozenset[int]]]:
        return self.table.partition_cached(sub.members, sub.gens)

    def supersets_of(self, members: frozenset[int]) -> list[_IdxSub]:
        return [s for s in self._subs if members <= s.members]

    # -- PermGroup-level views ----------------------------------------------

    def to_group(self, sub: _IdxSub) -> PermGroup:
        return self.table.subgroup_from(sub.members, sub.gens)

    def subgroup_list(self) -> SubgroupList:
        return SubgroupList(self.group, tuple(self.to_group(s) for s in self._subs))

    def conjugacy_classes(self) -> list[tuple[PermGroup, int]]:
        return [(self.to_group(rep), size)
                for rep, size in zip(self._class_reps, self._class_sizes)]


_LATTICE_CACHE: dict[PermGroup, GroupLattice] = {}
_INTERMEDIATE_CACHE: dict[tuple[PermGroup, frozenset[int]], list[_IdxSub]] = {}


def lattice_for(group: PermGroup, work_limit: Optional[int] = None) -> GroupLattice:
    lat = _LATTICE_CACHE.get(group)
    if lat is None:
        lat = GroupLattice(group, work_limit)
        _LATTICE_CACHE[group] = lat
    return lat


def cached_lattice(group: PermGroup) -> Optional[GroupLattice]:
    """The group's lattice if it has already been computed, without computing it."""
    return _LATTICE_CACHE.get(group)


def all_subgroups(group: PermGroup, work_limit: Optional[int] = None) -> SubgroupList:
    """The complete subgroup lattice, including the trivial subgroup and group."""
    return lattice_for(group, work_limit).subgroup_list()


def subgroup_conjugacy_classes(group: PermGroup,
                               work_limit: Optional[int] = None) -> list[tuple[PermGroup, int]]:
    """Conjugacy classes of subgroups as (canonical representative, class size)."""
    return lattice_for(group, work_limit).conjugacy_classes()


def intermediate_subgroups_idx(group: PermGroup, sub: PermGroup,
                               work_limit: Optional[int] = None) -> list[_IdxSub]:
    """Index-level intermediates between sub and group, canonically ordered.

    Uses the full lattice as a filter when it is already cached; otherwise
    runs a join-ascent from sub. Every intermediate subgroup is reached by the
    ascent because any step up can be made by adjoining a single element of
    prime-power order.
    """
    if not sub.is_subgroup_of(group):
        raise ValidationError("not a subgroup of the given group")
    table = table_for(group)
    start_members = table.idx_set(sub.element_set())
    key = (group, start_members)
    cached = _INTERMEDIATE_CACHE.get(key)
    if cached is not None:
        return cached
    lat = cached_lattice(group)
    if lat is not None:
        subs = lat.supersets_of(start_members)
    else:
        budget = WorkBudget(work_limit)
        cyclics = _prime_power_cyclics(table)
        start = _IdxSub(start_members, tuple(table.index[g] for g in sub.generators))
        known: dict[frozenset[int], _IdxSub] = {start.members: start}
        worklist = [start]
        while worklist:
            base = worklist.pop()
            for cyc in cyclics:
                if cyc.members <= base.members:
                    continue
                joined = table.close(base.gens + cyc.gens, budget)
                if joined not in known:
                    sub_new = _IdxSub(joined, base.gens + cyc.gens)
                    known[joined] = sub_new
                    worklist.append(sub_new)
        subs = sorted(known.values(), key=_sort_key)
    _INTERMEDIATE_CACHE[key] = subs
    return subs


def intermediate_subgroups(group: PermGroup, sub: PermGroup,
                           work_limit: Optional[int] = None) -> SubgroupList:
    """All subgroups between sub and group, inclusive, canonically ordered."""
    table = table_for(group)
    subs = intermediate_subgroups_idx(group, sub, work_limit)
    return SubgroupList(group, tuple(table.subgroup_from(s.members, s.gens) for s in subs))
