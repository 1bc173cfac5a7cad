import random

import pytest

from transvect.matrices import standard_form
from transvect.normalforms import (LocalRingWitness, _embed_one_perp,
                                   complete_unimodular_local,
                                   reduce_alternating_local,
                                   reduce_alternating_semilocal)
from transvect.rings import GF, Ideal, RingError, Zmod
from transvect.words import GeneratorWord, lin


def random_form(ring, n, rng, ideal=None):
    """An eps-generated Pfaffian-1 alternating form (the test oracle)."""
    m = 2 * n
    atoms = []
    if m > 2:
        for _ in range(rng.randrange(1, 6)):
            i, j = rng.sample(range(1, m), 2)
            a = ring.element(rng.randrange(ring.m))
            if ideal is not None and not ideal.is_full():
                g = ideal.additive_generators()[0]
                x = g * ring.element(rng.randrange(ring.m))
                atoms += [lin(i, j, a), lin(j, i, x), lin(i, j, -a)]
            else:
                atoms.append(lin(i, j, a))
    big = _embed_one_perp(GeneratorWord(ring, m - 1, atoms).eval())
    return big.transpose() * standard_form(ring, n) * big


def test_witness_validation():
    LocalRingWitness(GF(5))
    LocalRingWitness(Zmod(27))
    with pytest.raises(RingError):
        LocalRingWitness(Zmod(15))
    with pytest.raises(RingError):
        Zmod(8)  # even moduli are rejected at the ring level


@pytest.mark.parametrize("m", [3, 5, 9, 27])
def test_completion_absolute(m):
    ring = Zmod(m) if m in (9, 27) else GF(m)
    L = LocalRingWitness(ring)
    rng = random.Random(m)
    for n in (2, 3, 4):
        for _ in range(60):
            v = [rng.randrange(m) for _ in range(n)]
            if not any(ring.is_unit(ring.element(x)) for x in v):
                with pytest.raises(RingError):
                    complete_unimodular_local(v, L)
                continue
            beta = complete_unimodular_local(v, L)
            assert len(beta) <= 2 * n
            assert list(beta.eval().row(0)) == [ring.element(x) for x in v]


def test_completion_deterministic_lowest_pivot():
    L = LocalRingWitness(GF(3))
    b1 = complete_unimodular_local([0, 1, 2], L)
    b2 = complete_unimodular_local([0, 1, 2], L)
    assert b1.atoms == b2.atoms


def test_completion_e1_is_empty():
    L = LocalRingWitness(GF(3))
    assert len(complete_unimodular_local([1, 0, 0], L)) == 0


def test_completion_relative():
    for m, p in ((9, 3), (27, 3)):
        ring = Zmod(m)
        L = LocalRingWitness(ring)
        I = Ideal.principal(ring, p)
        rng = random.Random(p * m)
        for n in (2, 4):
            for _ in range(60):
                v = [(1 + p * rng.randrange(m)) % m] + \
                    [p * rng.randrange(m) % m for _ in range(n - 1)]
                beta = complete_unimodular_local(v, L, I)
                assert beta.validate_tag(I)
                assert list(beta.eval().row(0)) == [ring.element(x) for x in v]


def test_completion_relative_example():
    ring = Zmod(9)
    beta = complete_unimodular_local([1 + 3, 3, 0, 3], LocalRingWitness(ring),
                                     Ideal.principal(ring, 3))
    assert beta.validate_tag(Ideal.principal(ring, 3))
    assert [x.value for x in beta.eval().row(0)] == [4, 3, 0, 3]


def test_completion_relative_congruence_enforced():
    ring = Zmod(9)
    with pytest.raises(RingError):
        complete_unimodular_local([2, 3, 0, 0], LocalRingWitness(ring),
                                  Ideal.principal(ring, 3))


@pytest.mark.parametrize("m", [3, 5, 9, 27])
def test_reduction_roundtrip_absolute(m):
    ring = Zmod(m) if m in (9, 27) else GF(m)
    L = LocalRingWitness(ring)
    rng = random.Random(41 + m)
    psi2 = standard_form(ring, 2)
    for n in (1, 2, 3):
        for _ in range(20):
            phi = random_form(ring, n, rng)
            eps = reduce_alternating_local(phi, L)  # postcondition asserted
            assert eps.size == 2 * n - 1
    assert len(reduce_alternating_local(psi2, L)) == 0


def test_reduction_relative():
    for m in (9, 27):
        ring = Zmod(m)
        L = LocalRingWitness(ring)
        I = Ideal.principal(ring, 3)
        rng = random.Random(m)
        for n in (1, 2, 3):
            for _ in range(20):
                phi = random_form(ring, n, rng, I)
                eps = reduce_alternating_local(phi, L, I)
                assert eps.validate_tag(I)


def test_reduction_rejects_bad_pfaffian():
    ring = GF(5)
    psi = standard_form(ring, 1) * ring.element(2)
    with pytest.raises(RingError):
        reduce_alternating_local(psi, LocalRingWitness(ring))


def test_semilocal_table():
    R15 = Zmod(15)
    table = reduce_alternating_semilocal(standard_form(R15, 2))
    assert sorted(table) == [3, 5]
    assert all(len(rec["epsilon"]) == 0 for rec in table.values())
    rng = random.Random(7)
    R45 = Zmod(45)
    phi = random_form(R45, 2, rng)
    table = reduce_alternating_semilocal(phi)
    assert sorted(table) == [3, 5]
    assert all(rec["verified"] for rec in table.values())


def test_semilocal_prime_case_defers_to_local():
    table = reduce_alternating_semilocal(standard_form(Zmod(7), 2))
    assert sorted(table) == [7]
