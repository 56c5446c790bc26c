"""Index-space multiplication tables for the heavy subgroup-search loops.

Everything downstream of the lattice and cover searches works on element
indices into the group's canonical element list: subgroups are frozensets of
ints, multiplication is one list lookup, and conjugation by a fixed element
is an int-to-int array. The table rows are built with numpy gathers (row of
g*x is the row of g composed with the row of x) and then converted to plain
lists, which are faster for scalar access.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import WorkLimitExceeded
from .perm import PermGroup, Permutation

DEFAULT_WORK_LIMIT = 10**9


class WorkBudget:
    """Counts closure/join steps; raises once the configured limit is passed."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: Optional[int] = None):
        self.limit = DEFAULT_WORK_LIMIT if limit is None else limit
        self.used = 0

    def charge(self, amount: int) -> None:
        self.used += amount
        if self.used > self.limit:
            raise WorkLimitExceeded(
                f"subgroup search exceeded the work limit of {self.limit} steps")


class MulTable:
    """Cayley table of a PermGroup over canonical element indices."""

    def __init__(self, group: PermGroup):
        self.group = group
        self.elems = list(group.elements)
        self.index = {a: i for i, a in enumerate(self.elems)}
        n = group.order
        self.n = n
        self.e = self.index[group.identity]

        rows = np.empty((n, n), dtype=np.int32)
        rows[self.e] = np.arange(n, dtype=np.int32)
        gen_rows = {}
        for g in set(group.generators):
            gi = self.index[g]
            gen_rows[gi] = np.fromiter(
                (self.index[g * b] for b in self.elems), dtype=np.int32, count=n)
            rows[gi] = gen_rows[gi]
        known = {self.e} | set(gen_rows)
        frontier = list(known)
        while frontier:
            nxt = []
            for x in frontier:
                for gi, grow in gen_rows.items():
                    y = int(grow[x])  # y = g*x, so row_y = row_g o row_x
                    if y not in known:
                        rows[y] = grow[rows[x]]
                        known.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(known) != n:  # generators must reach every element
            raise AssertionError("table construction did not reach all elements")
        self.rows: list[Sequence[int]] = [r.tolist() for r in rows]

        inv = [0] * n
        for i, a in enumerate(self.elems):
            inv[self.index[a.inverse()]] = i
        self.inv = inv
        self.order_of = [a.order() for a in self.elems]
        self.gen_idx = tuple(self.index[g] for g in group.generators)
        self._partitions: dict[frozenset[int], tuple[dict[int, int], list[frozenset[int]]]] = {}

    # -- conversions -----------------------------------------------------

    def idx_set(self, elements: Iterable[Permutation]) -> frozenset[int]:
        return frozenset(self.index[a] for a in elements)

    def subgroup_from(self, members: frozenset[int],
                      gens: Optional[Sequence[int]] = None) -> PermGroup:
        perms = [self.elems[i] for i in members]
        gen_perms = [self.elems[i] for i in gens] if gens is not None else None
        return PermGroup.from_elements(self.group.degree, perms, generators=gen_perms)

    # -- index-space group operations --------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def conj(self, g: int, x: int) -> int:
        return self.rows[self.rows[g][x]][self.inv[g]]

    def conj_map(self, g: int) -> list[int]:
        row_g = self.rows[g]
        gi = self.inv[g]
        return [self.rows[row_g[x]][gi] for x in range(self.n)]

    def close(self, gens: Sequence[int], budget: Optional[WorkBudget] = None) -> frozenset[int]:
        """Subgroup generated by the given element indices."""
        members = {self.e}
        frontier = [self.e]
        rows = self.rows
        while frontier:
            nxt = []
            for x in frontier:
                row_x = rows[x]
                for g in gens:
                    y = row_x[g]
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            if budget is not None:
                budget.charge(len(frontier) * len(gens))
            frontier = nxt
        return frozenset(members)

    def conjugate_set(self, members: frozenset[int], g: int) -> frozenset[int]:
        row_g = self.rows[g]
        gi = self.inv[g]
        rows = self.rows
        return frozenset(rows[row_g[x]][gi] for x in members)

    def class_of(self, x: int, gens: Sequence[int]) -> frozenset[int]:
        """Conjugacy class of x under the subgroup generated by gens."""
        orbit = {x}
        frontier = [x]
        rows = self.rows
        inv = self.inv
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = rows[rows[g][a]][inv[g]]
                    if b not in orbit:
                        orbit.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(orbit)

    def partition_into_classes(self, members: frozenset[int],
                               gens: Sequence[int]) -> tuple[dict[int, int], list[frozenset[int]]]:
        """Conjugacy classes of the subgroup (members, gens).

        Returns (class id by element, classes); ids follow ascending class
        representatives.
        """
        class_id: dict[int, int] = {}
        classes: list[frozenset[int]] = []
        for x in sorted(members):
            if x in class_id:
                continue
            cls = self.class_of(x, gens)
            cid = len(classes)
            classes.append(cls)
            for y in cls:
                class_id[y] = cid
        return class_id, classes

    def partition_cached(self, members: frozenset[int],
                         gens: Sequence[int]) -> tuple[dict[int, int], list[frozenset[int]]]:
        cached = self._partitions.get(members)
        if cached is None:
            cached = self.partition_into_classes(members, gens)
            self._partitions[members] = cached
        return cached

    def small_gens(self, members: frozenset[int]) -> tuple[int, ...]:
        """Greedy small generating set for a subgroup given by its members."""
        if len(members) == 1:
            return ()
        gens: list[int] = []
        have: frozenset[int] = frozenset([self.e])
        for x in sorted(members):
            if x in have:
                continue
            gens.append(x)
            have = self.close(gens)
            if len(have) == len(members):
                break
        return tuple(gens)


_TABLE_CACHE: dict[PermGroup, MulTable] = {}


def table_for(group: PermGroup) -> MulTable:
    tab = _TABLE_CACHE.get(group)
    if tab is None:
        tab = MulTable(group)
        _TABLE_CACHE[group] = tab
    return tab


def clear_caches() -> None:
    _TABLE_CACHE.clear()
