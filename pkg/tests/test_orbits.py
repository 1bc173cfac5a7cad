import random

import pytest

from transvect.orbits import (GroupSpec, check_dim0_transitivity,
                              check_orbit_equality, enumerate_unimodular,
                              generators_for, kernel_membership_test,
                              orbit_partition, square_ideal_inclusion_test,
                              subgroup_closure)
from transvect.rings import Ideal, RingError, Zmod
from transvect.words import GeneratorWord, lin, se


def test_unimodular_counts():
    assert len(enumerate_unimodular(Zmod(3), 2)) == 8
    assert len(enumerate_unimodular(Zmod(9), 4)) == 6480
    I = Ideal.principal(Zmod(9), 3)
    assert len(enumerate_unimodular(Zmod(9), 4, I)) == 81


def test_unimodular_budget():
    with pytest.raises(RingError):
        enumerate_unimodular(Zmod(9), 8, budget=10 ** 6)


def test_generator_families():
    R = Zmod(3)
    lin_gens = generators_for(GroupSpec("linear-E", 2, R))
    assert len(lin_gens) == 2  # E_12(1), E_21(1)
    sp_gens = generators_for(GroupSpec("symplectic-ESp", 4, R))
    assert all(g.shape == (4, 4) for g in sp_gens)
    I = Ideal.principal(Zmod(9), 3)
    rel = generators_for(GroupSpec("symplectic-ESp-relative", 4, Zmod(9), I))
    assert rel  # deduplicated triple evaluations


def test_additive_reduction_gives_same_partition():
    """Single additive generator vs all ring elements: same orbits."""
    R = Zmod(5)
    universe = enumerate_unimodular(R, 2)
    reduced = generators_for(GroupSpec("linear-E", 2, R))
    full = []
    for i, j in ((1, 2), (2, 1)):
        for a in range(1, 5):
            full.append(GeneratorWord(R, 2, [lin(i, j, R.element(a))]).eval())
    p1 = orbit_partition(universe, reduced, ring=R)
    p2 = orbit_partition(universe, full, ring=R)
    assert p1.same_partition(p2)


def test_empty_generators_give_singletons():
    R = Zmod(3)
    universe = enumerate_unimodular(R, 2)
    part = orbit_partition(universe, [], ring=R)
    assert part.orbit_count() == len(universe)


def test_partition_chunk_independent():
    R = Zmod(9)
    I = Ideal.principal(R, 3)
    universe = enumerate_unimodular(R, 4, I)
    gens = generators_for(GroupSpec("linear-E-relative", 4, R, I))
    p1 = orbit_partition(universe, gens, ring=R, chunk=4096)
    p2 = orbit_partition(universe, gens, ring=R, chunk=7)
    assert p1.same_partition(p2)


def test_sp4_f3_closure_order():
    R = Zmod(3)
    gens = generators_for(GroupSpec("symplectic-ESp", 4, R))
    closure = subgroup_closure(gens, R, cap=10 ** 6)
    assert len(closure) == 51840  # |Sp_4(F_3)|


def test_closure_cap_reported():
    R = Zmod(3)
    gens = generators_for(GroupSpec("symplectic-ESp", 4, R))
    with pytest.raises(RingError):
        subgroup_closure(gens, R, cap=100)


def test_orbit_equality_small():
    rep = check_orbit_equality(Zmod(3), 4)
    assert rep["equal"] and rep["linear_orbits"] == 1
    rep = check_orbit_equality(Zmod(9), 4, Ideal.principal(Zmod(9), 3))
    assert rep["equal"] and rep["universe_size"] == 81


def test_orbit_equality_trivial_ideal():
    rep = check_orbit_equality(Zmod(9), 4, Ideal.zero(Zmod(9)))
    assert rep["equal"]
    assert rep["linear_orbits"] == rep["universe_size"] == 1


def test_transitivity_reports():
    rep = check_dim0_transitivity(Zmod(9), 4, Ideal.principal(Zmod(9), 3))
    assert rep["transitive"] and rep["orbit_count"] == 1
    rep = check_dim0_transitivity(Zmod(9), 4)
    assert rep["transitive"] and rep["orbit_count"] == 1


def test_transitivity_full_universe():
    rep = check_dim0_transitivity(Zmod(9), 4, Ideal.principal(Zmod(9), 3),
                                  full_universe=True)
    assert rep["transitive"]
    assert rep["orbit_count"] == rep["congruence_classes"] == 80


def test_kernel_membership_sampled():
    rep = kernel_membership_test(Zmod(9), 4, Ideal.principal(Zmod(9), 3),
                                 samples=100, seed=7)
    assert rep["ok"] and rep["members"] == 100
    assert rep["closure_size"] == 3 ** 10  # mod-3 congruence kernel


def test_square_ideal_sampled():
    rep = square_ideal_inclusion_test(Zmod(9), 4, Ideal.principal(Zmod(9), 3),
                                      samples=60, seed=1)
    assert rep["ok"]
    assert rep["factored_members"] == rep["factored"] > 0


def test_spot_check_closed():
    R = Zmod(9)
    I = Ideal.principal(R, 3)
    universe = enumerate_unimodular(R, 4, I)
    gens = generators_for(GroupSpec("symplectic-ESp-relative", 4, R, I))
    part = orbit_partition(universe, gens, ring=R)
    assert part.spot_check_closed(gens, R.m, trials=500, seed=3)
