"""Tambara instances and the relation checker."""

import random

import pytest

from gwitt.errors import EquivarianceError
from gwitt.groups import cyclic, subconjugacy_poset, symmetric
from gwitt.gsets import (
    GMap,
    coset_space,
    disjoint_union,
    empty_gset,
    identity_map,
    natural_gset,
    point_gset,
    regular_gset,
)
from gwitt.tambara import (
    BurnsideOverInstance,
    InvariantRingInstance,
    MutatedInstance,
    check_tambara_axioms,
    invariant_norm,
    invariant_restriction,
    invariant_transfer,
    small_gsets,
)

C2 = cyclic(2)
S3 = symmetric(3)


def test_invariant_structure_maps_examples():
    base = regular_gset(C2)
    inst = InvariantRingInstance(C2, base)
    free = regular_gset(C2)
    pt = point_gset(C2)
    f = GMap(free, pt, (0, 0))
    ident = identity_map(free)
    v = ((1, 0), (0, 1))  # x -> indicator of x, equivariant
    inst.check_value(free, v)
    assert inst.restrict(ident, v) == v
    assert inst.transfer(ident, v) == v
    assert inst.norm(ident, v) == v
    # transfer = fiber sums, norm = fiber products
    assert inst.transfer(f, v) == ((1, 1),)
    assert inst.norm(f, v) == ((0, 0),)
    inst.check_value(pt, inst.norm(f, v))
    # empty fibers: transfer gives 0, norm gives 1
    empty = empty_gset(C2)
    emap = GMap(empty, pt, ())
    assert inst.transfer(emap, ()) == ((0, 0),)
    assert inst.norm(emap, ()) == ((1, 1),)


def test_invariant_free_functions_match_instance():
    base = regular_gset(C2)
    inst = InvariantRingInstance(C2, base)
    free = regular_gset(C2)
    pt = point_gset(C2)
    f = GMap(free, pt, (0, 0))
    v = ((2, 1), (1, 2))
    inst.check_value(free, v)
    assert invariant_restriction(f, inst.transfer(f, v)) == \
        inst.restrict(f, inst.transfer(f, v))
    assert invariant_transfer(f, v) == inst.transfer(f, v)
    assert invariant_norm(f, v) == inst.norm(f, v)
    assert invariant_transfer(GMap(empty_gset(C2), pt, ()), (), width=2) == ((0, 0),)


def test_invariant_values_reject_non_equivariant():
    inst = InvariantRingInstance(C2, regular_gset(C2))
    with pytest.raises(EquivarianceError):
        inst.check_value(regular_gset(C2), ((1, 0), (1, 0)))


def test_level_rank_matches_orbit_count():
    # rank of the level at G/H = number of H-orbits of the base
    for group, base in ((C2, regular_gset(C2)), (S3, natural_gset(S3))):
        inst = InvariantRingInstance(group, base)
        poset = subconjugacy_poset(group)
        for cls in poset.classes:
            level = coset_space(group, cls.rep)
            h_elems = cls.rep.elements
            seen, orbits = set(), 0
            for pt in base.points():
                if pt in seen:
                    continue
                orbit = {pt}
                frontier = [pt]
                while frontier:
                    new = []
                    for u in frontier:
                        for g in h_elems:
                            w = base.act_table[g][u]
                            if w not in orbit:
                                orbit.add(w)
                                new.append(w)
                    frontier = new
                seen |= orbit
                orbits += 1
            assert inst.level_rank(level) == orbits


def test_sampled_values_are_equivariant():
    rng = random.Random(0)
    inst = InvariantRingInstance(S3, natural_gset(S3))
    for x in small_gsets(S3, 4):
        for v in inst.sample_values(x, rng, 3):
            inst.check_value(x, v)


def test_burnside_instance_operations():
    inst = BurnsideOverInstance(C2)
    free = regular_gset(C2)
    pt = point_gset(C2)
    f = GMap(free, pt, (0, 0))
    one = inst.one(free)
    # restriction of the unit is the unit
    assert inst.eq(free, inst.restrict(f, inst.one(pt)), one)
    # norm of (2 points over each fiber) along C2/e -> pt = Map(C2, 2) : 4 points
    a, _ = disjoint_union([free, free])
    v = (a, GMap(a, free, (0, 1, 0, 1)))
    normed = inst.norm(f, v)
    assert normed[0].size == 4
    # additive/multiplicative units behave
    zero = inst.zero(free)
    assert inst.eq(free, inst.add(free, v, zero), v)
    assert inst.eq(free, inst.mul(free, v, one), v)


def test_checker_passes_for_both_instances_small_budget():
    inst = InvariantRingInstance(C2, regular_gset(C2))
    report = check_tambara_axioms(inst, budget=3, seed=1)
    assert report.ok
    assert {c.relation for c in report.checks} == {
        "restriction-functorial", "transfer-functorial", "norm-functorial",
        "restriction-ring-homomorphism", "transfer-additive",
        "norm-multiplicative", "transfer-base-change", "norm-base-change",
        "exponential-distributivity",
    }
    binst = BurnsideOverInstance(C2)
    report2 = check_tambara_axioms(binst, budget=3, seed=1)
    assert report2.ok


def test_mutated_instance_fails_with_witness():
    inst = InvariantRingInstance(C2, regular_gset(C2))
    mutated = MutatedInstance(inst)
    report = check_tambara_axioms(
        mutated, budget=3, seed=1, relations=("exponential-distributivity",)
    )
    assert not report.ok
    (check,) = [c for c in report.checks if c.status == "fail"]
    assert check.relation == "exponential-distributivity"
    assert check.witness is not None
    assert {"diagram", "value", "lhs", "rhs"} <= set(check.witness)


def test_report_json_is_sorted_and_complete():
    inst = InvariantRingInstance(C2, regular_gset(C2))
    report = check_tambara_axioms(inst, budget=2, seed=0)
    payload = report.to_json()
    assert payload["schema"] == 1
    names = [c["relation"] for c in payload["checks"]]
    assert names == sorted(names)
    assert payload["ok"] is True


def test_burnside_instance_is_functorial_through_bispan_composition():
    # applying R_p, N_q, T_r of a composite bispan agrees with applying the
    # two factors in turn; exercises the composition pipeline at the level
    # of actual G-sets-over-X, where the group action is visible
    import random as _random

    from randgen import random_bispan

    from gwitt.bispans import compose

    def apply_bispan(inst, phi, value):
        return inst.transfer(
            phi.r, inst.norm(phi.q, inst.restrict(phi.p, value))
        )

    rng = _random.Random(23)
    for group in (C2, S3):
        inst = BurnsideOverInstance(group)
        done = 0
        while done < 12:
            phi = random_bispan(group, rng, 3)
            psi = random_bispan(group, rng, 3, source=phi.y)
            comp = compose(psi, phi)
            for value in inst.sample_values(phi.x, rng, 2):
                stepwise = apply_bispan(inst, psi, apply_bispan(inst, phi, value))
                direct = apply_bispan(inst, comp, value)
                assert inst.eq(comp.y, stepwise, direct)
            done += 1


def test_small_gsets_enumeration_counts():
    # C2 orbits have sizes 1 and 2: multisets with total <= 4
    assert len(small_gsets(C2, 4)) == 9
    sizes = sorted(x.size for x in small_gsets(C2, 2))
    assert sizes == [0, 1, 2, 2]
