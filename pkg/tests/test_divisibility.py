import json
from fractions import Fraction

import pytest

from elldiv.constructors import (dihedral_pair, direct_product, inversion_action,
                                 klein_in_s4_pair, klein_in_s5_pair, named_group,
                                 power_action, semidirect_pair, trivial_action)
from elldiv.divisibility import (GroupPair, StrongConstraint, WeakConstraint,
                                 big_delta_exact, covers_strong, covers_weak,
                                 decide, delta_exact, quotient_pair,
                                 report_to_dict, scan_all_primes,
                                 semidirect_hypothesis, strong_constraints,
                                 theorem_bounds, weak_constraints)
from elldiv.errors import ValidationError
from elldiv.lattice import intermediate_subgroups
from elldiv.perm import PermGroup, Permutation

from library import compact_library


def cyc(degree, text):
    return Permutation.from_cycles(degree, text)


def pair_over_trivial(group):
    return GroupPair(group, PermGroup.trivial(group.degree))


def dihedral_elements(n):
    d = named_group("dihedral", n)
    r = Permutation([(i + 1) % n for i in range(n)])
    s = Permutation([(-i) % n for i in range(n)])
    return d, r, s


# -- pair validation ------------------------------------------------------------

def test_pair_requires_subgroup():
    with pytest.raises(ValidationError):
        GroupPair(named_group("cyclic", 4), named_group("cyclic", 3))
    with pytest.raises(ValidationError):
        GroupPair(named_group("alternating", 4),
                  named_group("symmetric", 4))


# -- constraint extraction --------------------------------------------------------

def test_weak_constraints_examples():
    assert weak_constraints(pair_over_trivial(named_group("cyclic", 3)), 2) == ()

    d4, r, s = dihedral_elements(4)
    pair = GroupPair(d4, d4.subgroup([s]))
    cons = weak_constraints(pair, 2)
    assert len(cons) == 3
    reps = {c.class_rep for c in cons}
    assert r * r in reps  # the central rotation
    # the class of s meets G - H through r^2 s
    s_class = next(c for c in cons if s in c.members)
    assert r * r * s in s_class.members

    s3 = named_group("symmetric", 3)
    pair3 = GroupPair(s3, s3.subgroup([cyc(3, "(1 2)")]))
    cons3 = weak_constraints(pair3, 3)
    assert len(cons3) == 1 and len(cons3[0].members) == 2


def test_weak_constraints_have_member_outside_h():
    for _, group in compact_library():
        if group.order > 24:
            continue
        for ell in (2, 3):
            for sub in [PermGroup.trivial(group.degree), group]:
                for c in weak_constraints(GroupPair(group, sub), ell):
                    assert any(m not in sub for m in c.members)
                    assert all(m.order() == ell for m in c.members)


def test_strong_constraints_examples():
    c4 = named_group("cyclic", 4)
    cons = strong_constraints(pair_over_trivial(c4), 2)
    assert len(cons) == 1 and cons[0].element.order() == 2

    klein = named_group("dihedral", 2)
    assert len(strong_constraints(pair_over_trivial(klein), 2)) == 3

    c6 = named_group("cyclic", 6)
    c2 = c6.subgroup([c6.elements[3]])
    assert strong_constraints(GroupPair(c6, c2), 2) == ()


# -- covering predicates ------------------------------------------------------------

def test_covers_weak_h_itself_never_covers():
    d4, r, s = dihedral_elements(4)
    h = d4.subgroup([s])
    pair = GroupPair(d4, h)
    for c in weak_constraints(pair, 2):
        assert not covers_weak(h, h, c)


def test_covers_weak_d8_example():
    d8, r, s = dihedral_elements(8)
    h = d8.subgroup([s])
    pair = GroupPair(d8, h)
    s_class = next(c for c in weak_constraints(pair, 2) if s in c.members)
    candidate = d8.subgroup([r * r, s])
    assert covers_weak(candidate, h, s_class)


def test_covers_weak_s5_transpositions():
    pair = klein_in_s5_pair()
    transpositions = next(c for c in weak_constraints(pair, 2)
                          if len(c.members) == 10)
    assert covers_weak(pair.G, pair.H, transpositions)


def test_covers_strong_examples():
    c4 = named_group("cyclic", 4)
    trivial = PermGroup.trivial(4)
    sigma = strong_constraints(pair_over_trivial(c4), 2)[0]
    assert covers_strong(c4, trivial, sigma)
    c2 = c4.subgroup([sigma.element])
    assert covers_strong(c2, trivial, sigma)

    d8, r, s = dihedral_elements(8)
    h = d8.subgroup([s])
    rotations = d8.subgroup([r])
    outside = StrongConstraint(r ** 4 * s)
    with pytest.raises(ValidationError):
        covers_strong(rotations, h, outside)  # <r> does not contain H


def test_covering_predicates_match_solver_on_small_pairs():
    """decide() must agree with a direct evaluation of the definition using
    only the public predicates and the intermediate-subgroup list."""
    checked = 0
    for _, group in compact_library():
        if group.order > 16:
            continue
        for sub in intermediate_subgroups(group, PermGroup.trivial(group.degree)):
            pair = GroupPair(group, sub)
            pool = list(intermediate_subgroups(group, sub))
            for ell in (2, 3):
                weak_direct = all(
                    any(covers_weak(g2, sub, c) for g2 in pool)
                    for c in weak_constraints(pair, ell))
                assert decide(pair, ell, "weak") == weak_direct
                strong_direct = all(
                    any(covers_strong(g2, sub, c) for g2 in pool)
                    for c in strong_constraints(pair, ell))
                assert decide(pair, ell, "strong") == strong_direct
                checked += 1
    assert checked > 50


# -- decisions and exact invariants ---------------------------------------------------

def test_decide_dihedral_two():
    for n in range(3, 17):
        assert decide(dihedral_pair(n), 2, "weak") == (n % 4 == 0)


def test_decide_klein_pairs():
    assert decide(klein_in_s5_pair(), 2, "weak") is False
    assert decide(klein_in_s4_pair(), 2, "weak") is True


def test_decide_over_trivial_subgroup():
    for _, group in compact_library():
        for ell in (2, 3, 5):
            if group.order % ell == 0:
                assert decide(pair_over_trivial(group), ell, "weak")


def test_delta_exact_examples():
    assert delta_exact(dihedral_pair(8), 2).delta == 2
    d6 = dihedral_pair(6)
    assert delta_exact(d6, 3).delta == 1
    report = delta_exact(d6, 5)
    assert report.divisible and report.delta == 0
    s3 = named_group("symmetric", 3)
    assert delta_exact(pair_over_trivial(s3), 2).delta == 1


def test_big_delta_examples():
    c2 = named_group("cyclic", 2)
    assert big_delta_exact(pair_over_trivial(c2), 2).big_delta == 1
    klein = named_group("dihedral", 2)
    assert big_delta_exact(pair_over_trivial(klein), 2).big_delta == 2


def test_report_invariants():
    failing = delta_exact(klein_in_s5_pair(), 2)
    assert failing.divisible is False
    assert failing.delta is None and failing.big_delta is None
    assert failing.uncovered is not None
    assert isinstance(failing.uncovered, WeakConstraint)

    empty = delta_exact(dihedral_pair(5), 3)
    assert empty.divisible and empty.delta == 0 and not empty.witnesses

    report = delta_exact(dihedral_pair(8), 2)
    for value in report.bounds.values():
        if value is not None:
            assert report.delta <= value


def test_witnesses_certify_the_cover():
    report = delta_exact(dihedral_pair(8), 2)
    pair = dihedral_pair(8)
    cons = {c.class_rep: c for c in weak_constraints(pair, 2)}
    covered = set()
    assert len(report.witnesses) == report.delta
    for witness in report.witnesses:
        subgroup = pair.G.subgroup(list(witness.generators))
        assert subgroup.order == witness.order
        assert pair.H.is_subgroup_of(subgroup)
        for entry in witness.covers:
            constraint = cons[entry["class_rep"]]
            assert covers_weak(subgroup, pair.H, constraint)
            covered.add(entry["class_rep"])
    assert covered == set(cons)


def test_strong_witnesses_certify():
    klein = named_group("dihedral", 2)
    pair = pair_over_trivial(klein)
    report = big_delta_exact(pair, 2)
    total = 0
    for witness in report.witnesses:
        subgroup = pair.G.subgroup(list(witness.generators))
        total += witness.index
        for entry in witness.covers:
            assert covers_strong(subgroup, pair.H, StrongConstraint(entry["element"]))
    assert Fraction(total, 2) == report.big_delta


def test_distinct_witness_subgroups():
    report = delta_exact(dihedral_pair(8), 2)
    sets = [frozenset(w.generators) for w in report.witnesses]
    assert len(sets) == len(set(sets))


def test_delta_zero_iff_no_constraints():
    for _, group in compact_library():
        if group.order > 20:
            continue
        pair = pair_over_trivial(group)
        for ell in (2, 3, 5):
            report = delta_exact(pair, ell)
            assert (report.delta == 0) == (not weak_constraints(pair, ell))


def test_conjugation_invariance():
    s4 = named_group("symmetric", 4)
    h = s4.subgroup([cyc(4, "(1 2)")])
    pair = GroupPair(s4, h)
    for g in [cyc(4, "(1 2 3)"), cyc(4, "(1 4)"), cyc(4, "(1 2 3 4)")]:
        moved = pair.conjugated(g)
        for ell in (2, 3):
            assert delta_exact(pair, ell).delta == delta_exact(moved, ell).delta
            a = big_delta_exact(pair, ell)
            b = big_delta_exact(moved, ell)
            assert a.big_delta == b.big_delta and a.divisible == b.divisible


def test_strong_implies_weak():
    for _, group in compact_library():
        if group.order > 24:
            continue
        for sub in list(intermediate_subgroups(group, PermGroup.trivial(group.degree)))[:10]:
            pair = GroupPair(group, sub)
            for ell in (2, 3):
                if big_delta_exact(pair, ell).divisible:
                    assert decide(pair, ell, "weak")


# -- quotient transport ----------------------------------------------------------------

def test_quotient_transport_exact_values():
    """Sound transport under quotients by a normal N <= H: the strong
    invariant is preserved exactly; the weak invariant is preserved when ell
    does not divide |N| (order-ell elements of the quotient then lift to
    order-ell elements), and is bounded by the quotient value in general."""
    s4 = named_group("symmetric", 4)
    klein = s4.subgroup([cyc(4, "(1 2)(3 4)"), cyc(4, "(1 3)(2 4)")])
    a4 = named_group("alternating", 4)
    cases = [(s4, klein, klein), (s4, a4, klein)]
    c12 = named_group("cyclic", 12)
    c6 = c12.subgroup([c12.elements[2]])
    c2 = c12.subgroup([c12.elements[6]])
    c3 = c12.subgroup([c12.elements[4]])
    cases.append((c12, c6, c2))
    cases.append((c12, c6, c3))
    for group, sub, normal in cases:
        pair = GroupPair(group, sub)
        quotient = quotient_pair(pair, normal)
        for ell in (2, 3):
            a2, b2 = big_delta_exact(pair, ell), big_delta_exact(quotient, ell)
            assert a2.divisible == b2.divisible and a2.big_delta == b2.big_delta
            a, b = delta_exact(pair, ell), delta_exact(quotient, ell)
            if b.divisible:
                assert a.divisible
                assert a.delta <= b.delta
            if normal.order % ell != 0:
                assert a.divisible == b.divisible and a.delta == b.delta


def test_quotient_transport_weak_counterexample():
    """The weak invariant is NOT preserved when ell divides |N|: for
    C12 over its index-2 subgroup, quotienting by the order-2 center image
    turns a vacuous instance (the only involution lies in H) into one with a
    genuine constraint (the image of the order-4 rotation)."""
    c12 = named_group("cyclic", 12)
    sub = c12.subgroup([c12.elements[2]])
    normal = c12.subgroup([c12.elements[6]])
    pair = GroupPair(c12, sub)
    quotient = quotient_pair(pair, normal)
    assert delta_exact(pair, 2).delta == 0
    assert delta_exact(quotient, 2).delta == 1
    # the strong invariant still transports exactly
    assert big_delta_exact(pair, 2).big_delta == \
        big_delta_exact(quotient, 2).big_delta == 1


def test_quotient_pair_requires_containment():
    s4 = named_group("symmetric", 4)
    klein = s4.subgroup([cyc(4, "(1 2)(3 4)"), cyc(4, "(1 3)(2 4)")])
    with pytest.raises(ValidationError):
        quotient_pair(GroupPair(s4, s4.subgroup([cyc(4, "(1 2)")])), klein)


# -- theorem bounds ----------------------------------------------------------------------

def test_generic_bound_value():
    pair = dihedral_pair(8)
    bounds = theorem_bounds(pair, 2)
    assert bounds["generic"].value == 2  # 1 + (2-1)/(2-1)


def test_nilpotent_bound():
    d4, r, s = dihedral_elements(4)
    pair = GroupPair(d4, d4.subgroup([s]))
    bounds = theorem_bounds(pair, 2)
    assert bounds["nilpotent"].value == 2
    s3 = named_group("symmetric", 3)
    bounds3 = theorem_bounds(pair_over_trivial(s3), 2)
    assert bounds3["nilpotent"].value is None
    assert "nilpotent" in bounds3["nilpotent"].note


def test_sylow_chain_bound_matches_series():
    pair = dihedral_pair(4)
    bounds = theorem_bounds(pair, 2)
    assert bounds["sylow_chain"].value == 2
    a5 = named_group("alternating", 5)
    nb = theorem_bounds(pair_over_trivial(a5), 2)
    assert nb["sylow_chain"].value is None


def test_semidirect_bound_and_hypothesis():
    spec8 = inversion_action(named_group("cyclic", 8))
    assert semidirect_hypothesis(spec8.n_group, spec8.h_group,
                                 spec8.raw_action(), 2)
    spec6 = inversion_action(named_group("cyclic", 6))
    assert not semidirect_hypothesis(spec6.n_group, spec6.h_group,
                                     spec6.raw_action(), 2)
    pair = semidirect_pair(spec8)
    bounds = theorem_bounds(pair, 2, hints={"semidirect": spec8})
    assert bounds["semidirect"].value == 2  # nil(S) * nil(T) + 1 = 1*1+1
    assert delta_exact(pair, 2).delta <= bounds["semidirect"].value

    pair6 = semidirect_pair(spec6)
    bounds6 = theorem_bounds(pair6, 2, hints={"semidirect": spec6})
    assert bounds6["semidirect"].value is None


def test_semidirect_hypothesis_trivial_action():
    c6 = named_group("cyclic", 6)
    c4 = named_group("cyclic", 4)
    spec = trivial_action(c6, c4)
    # image of the action is trivial, so its Sylow subgroup is trivial and
    # the injectivity requirement is vacuous
    assert semidirect_hypothesis(c6, c4, spec.raw_action(), 2)


def test_chain_bounds():
    s4 = named_group("symmetric", 4)
    klein = s4.subgroup([cyc(4, "(1 2)(3 4)"), cyc(4, "(1 3)(2 4)")])
    a4 = named_group("alternating", 4)
    pair = GroupPair(s4, klein)
    bounds = theorem_bounds(pair, 2, hints={"chain": [klein, a4, s4]})
    exact = delta_exact(pair, 2).delta
    assert bounds["tower"].value is not None and exact <= bounds["tower"].value
    strong_exact = big_delta_exact(pair, 2).big_delta
    assert bounds["tower_strong"].value is not None
    assert strong_exact <= bounds["tower_strong"].value
    with pytest.raises(ValidationError):
        theorem_bounds(pair, 2, hints={"chain": [klein, s4, a4]})


def test_normal_step_bounds():
    d12 = named_group("dihedral", 12)
    r = Permutation([(i + 1) % 12 for i in range(12)])
    s = Permutation([(-i) % 12 for i in range(12)])
    pair = GroupPair(d12, d12.subgroup([s]))
    rot3 = d12.subgroup([r ** 4])  # order-3 rotation subgroup, normal
    bounds = theorem_bounds(pair, 3, hints={"normal": rot3})
    exact = delta_exact(pair, 3)
    assert exact.divisible
    assert bounds["normal_step"].value is not None
    assert exact.delta <= bounds["normal_step"].value


def test_quotient_hint_equals_exact():
    s4 = named_group("symmetric", 4)
    klein = s4.subgroup([cyc(4, "(1 2)(3 4)"), cyc(4, "(1 3)(2 4)")])
    pair = GroupPair(s4, klein)
    bounds = theorem_bounds(pair, 2, hints={"normal": klein})
    assert bounds["quotient"].value == delta_exact(pair, 2).delta


def test_composite_bounds():
    s3 = named_group("symmetric", 3)
    pair = pair_over_trivial(s3)
    bounds = theorem_bounds(pair, 2, hints={
        "composite": [pair, pair],
        "composite_strong": [(pair, 1), (pair, 6)],
    })
    d = delta_exact(pair, 2).delta
    bd = big_delta_exact(pair, 2).big_delta
    assert bounds["composite"].value == 2 * d
    assert bounds["composite_strong"].value == (1 + 6) * bd


def test_restriction_bound():
    d8, r, s = dihedral_elements(8)
    h = d8.subgroup([s])
    big = GroupPair(d8, h)
    small_g = d8.subgroup([r ** 2, s])
    small = GroupPair(small_g, h)
    bounds = theorem_bounds(small, 2, hints={"restriction": big})
    value = bounds["restriction_strong"].value
    exact = big_delta_exact(small, 2)
    if value is not None and exact.divisible:
        assert exact.big_delta <= value


# -- scans ------------------------------------------------------------------------------

def test_scan_a5():
    result = scan_all_primes(named_group("alternating", 5))
    assert result.fully_divisible_count == 1
    winners = [row for row in result.rows if row.fully_divisible]
    assert len(winners) == 1 and winners[0].representative.order == 2
    for row in result.rows:
        assert set(row.verdicts) == {2, 3, 5}
        assert 1 < row.representative.order < 60


def test_scan_rows_match_decide():
    s4 = named_group("symmetric", 4)
    result = scan_all_primes(s4)
    for row in result.rows:
        pair = GroupPair(s4, row.representative)
        for ell, verdict in row.verdicts.items():
            assert decide(pair, ell, "weak") == verdict


# -- serialization ------------------------------------------------------------------------

def test_report_to_dict_round_trip():
    report = big_delta_exact(pair_over_trivial(named_group("dihedral", 2)), 2)
    payload = report_to_dict(report)
    text = json.dumps(payload, sort_keys=True)
    parsed = json.loads(text)
    assert parsed["big_delta"] == {"num": 2, "den": 1}
    assert parsed["divisible"] is True
    assert parsed["delta"] is None
    assert parsed["elapsed"] is None
    timed = report_to_dict(report, include_timing=True)
    assert isinstance(timed["elapsed"], float)


def test_report_to_dict_uncovered():
    payload = report_to_dict(delta_exact(klein_in_s5_pair(), 2))
    assert payload["uncovered"]["kind"] == "class"
    assert payload["witnesses"] == []
