"""Fixed group library shared by the property and acceptance suites.

Everything here is built from the package's own constructors and has order at
most 63, plus the named extras (S4 is already included). The library mixes
abelian, dihedral, symmetric/alternating, direct-product, and semidirect
realizations so that both branches of the unique-Sylow dichotomy are heavily
populated at several primes.
"""

from __future__ import annotations

from functools import lru_cache

from elldiv.constructors import (ActionSpec, direct_product, frobenius20,
                                 inversion_action, named_group, power_action,
                                 semidirect_product)
from elldiv.perm import PermGroup


@lru_cache(maxsize=1)
def small_library() -> tuple[tuple[str, PermGroup], ...]:
    entries: list[tuple[str, PermGroup]] = []
    for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16, 20):
        entries.append((f"C{n}", named_group("cyclic", n)))
    for n in (2, 3, 4, 5, 6, 8, 9, 10, 12):
        entries.append((f"D{n}", named_group("dihedral", n)))
    entries.append(("S3", named_group("symmetric", 3)))
    entries.append(("S4", named_group("symmetric", 4)))
    entries.append(("A4", named_group("alternating", 4)))
    entries.append(("A5", named_group("alternating", 5)))

    c2 = named_group("cyclic", 2)
    c3 = named_group("cyclic", 3)
    c4 = named_group("cyclic", 4)
    d4 = named_group("dihedral", 4)
    entries.append(("C2xC2", direct_product(c2, c2)))
    entries.append(("C2xC4", direct_product(c2, c4)))
    entries.append(("C2xC2xC2", direct_product(direct_product(c2, c2), c2)))
    entries.append(("C3xC3", direct_product(c3, c3)))
    entries.append(("D4xC2", direct_product(d4, c2)))
    entries.append(("A4xC2", direct_product(named_group("alternating", 4), c2)))
    entries.append(("S3xS3", direct_product(named_group("symmetric", 3),
                                            named_group("symmetric", 3))))

    entries.append(("C4:C2", semidirect_product(inversion_action(c4))[0]))
    entries.append(("C8:C2", semidirect_product(
        inversion_action(named_group("cyclic", 8)))[0]))
    entries.append(("C3:C4", semidirect_product(
        power_action(c3, c4, -1))[0]))
    entries.append(("C7:C3", semidirect_product(
        power_action(named_group("cyclic", 7), c3, 2))[0]))
    entries.append(("F20", frobenius20()))
    return tuple(entries)


@lru_cache(maxsize=1)
def compact_library() -> tuple[tuple[str, PermGroup], ...]:
    """A smaller slice for the more expensive exhaustive properties."""
    keep = {"C1", "C2", "C4", "C6", "C8", "C12", "D3", "D4", "D6", "D8",
            "S3", "S4", "A4", "C2xC2", "C2xC4", "D4xC2", "C4:C2", "C3:C4", "F20"}
    return tuple((name, group) for name, group in small_library() if name in keep)
