"""Exact set cover by branch and bound, in both unweighted and weighted form.

Instances here are tiny (constraint counts in the dozens), so the solver
favors a transparent exact search: a greedy incumbent, a fractional-share
lower bound computed in exact rationals, and depth-first branching on the
least-coverable element. Candidates are always scanned in input order, which
makes the chosen witness family deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


def _greedy(universe: int, masks: Sequence[int], weights: Sequence[int]) -> list[int]:
    uncovered = (1 << universe) - 1
    chosen: list[int] = []
    while uncovered:
        best = -1
        best_score = None
        for i, m in enumerate(masks):
            gain = (m & uncovered).bit_count()
            if gain == 0:
                continue
            score = (Fraction(weights[i], gain), weights[i], i)
            if best_score is None or score < best_score:
                best_score = score
                best = i
        if best < 0:
            raise AssertionError("greedy called on a non-cover")
        chosen.append(best)
        uncovered &= ~masks[best]
    return chosen


def solve_cover(universe: int, masks: Sequence[int],
                weights: Optional[Sequence[int]] = None) -> Optional[list[int]]:
    """Minimum-weight exact cover of elements 0..universe-1 by the given masks.

    weights default to 1 each (minimum cardinality). Returns the sorted list
    of chosen candidate indices, or None when the masks do not cover the
    universe. Ties are broken toward the family found first when branching in
    input order.
    """
    if universe == 0:
        return []
    full = (1 << universe) - 1
    covered_all = 0
    for m in masks:
        covered_all |= m
    if covered_all != full:
        return None
    if weights is None:
        weights = [1] * len(masks)

    incumbent = _greedy(universe, masks, weights)
    best_weight = sum(weights[i] for i in incumbent)
    best_choice = sorted(incumbent)

    element_candidates: list[list[int]] = [[] for _ in range(universe)]
    for i, m in enumerate(masks):
        mm = m
        while mm:
            bit = mm & -mm
            element_candidates[bit.bit_length() - 1].append(i)
            mm ^= bit

    def share_bound(uncovered: int, banned: frozenset[int]) -> Fraction:
        """Each uncovered element pays at least its cheapest per-element share."""
        total = Fraction(0)
        m = uncovered
        while m:
            bit = m & -m
            m ^= bit
            e = bit.bit_length() - 1
            best: Optional[Fraction] = None
            for i in element_candidates[e]:
                if i in banned:
                    continue
                share = Fraction(weights[i], (masks[i] & uncovered).bit_count())
                if best is None or share < best:
                    best = share
            if best is None:
                return Fraction(-1)  # element no longer coverable
            total += best
        return total

    def branch(uncovered: int, weight: int, chosen: list[int], banned: frozenset[int]) -> None:
        nonlocal best_weight, best_choice
        if not uncovered:
            if weight < best_weight:
                best_weight = weight
                best_choice = sorted(chosen)
            return
        bound = share_bound(uncovered, banned)
        if bound < 0 or weight + bound >= best_weight:
            return
        # branch on the uncovered element with the fewest usable candidates
        pick_cands: Optional[list[int]] = None
        mm = uncovered
        while mm:
            bit = mm & -mm
            mm ^= bit
            e = bit.bit_length() - 1
            cands = [i for i in element_candidates[e] if i not in banned]
            if pick_cands is None or len(cands) < len(pick_cands):
                pick_cands = cands
                if len(cands) <= 1:
                    break
        assert pick_cands is not None
        tried: set[int] = set()
        for i in pick_cands:
            # covers through earlier-tried candidates were already explored
            branch(uncovered & ~masks[i], weight + weights[i], chosen + [i],
                   banned | tried)
            tried.add(i)

    branch(full, 0, [], frozenset())
    return best_choice


def cover_assignment(universe: int, masks: Sequence[int], chosen: Sequence[int]) -> list[int]:
    """Map each element to the first chosen candidate covering it."""
    out = []
    for e in range(universe):
        bit = 1 << e
        for i in chosen:
            if masks[i] & bit:
                out.append(i)
                break
        else:
            raise AssertionError("assignment requested for a non-cover")
    return out
