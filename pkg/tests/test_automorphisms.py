from __future__ import annotations

import pytest

from gcg.automorphisms import (
    automorphism_from_perm,
    classify_dihedral_involutions,
    decompose_cyclic_sylow,
    decompose_odd_abelian,
    enumerate_automorphisms,
    enumerate_involutory_automorphisms,
    fix_set,
    identity_automorphism,
    inversion_map,
    is_prime,
    omega_set,
)
from gcg.errors import DescriptorError
from gcg.groups import make_group

from oracles.brute import group_automorphisms_brute


def test_identity_and_inversion_maps(caps):
    g = make_group("Z6", caps)
    e = identity_automorphism(g)
    assert e.perm == (0, 1, 2, 3, 4, 5)
    assert e.order2
    i = inversion_map(g)
    assert i.perm == (0, 5, 4, 3, 2, 1)
    assert i.order2


def test_automorphism_from_perm_validates(caps):
    g = make_group("Z4", caps)
    with pytest.raises(DescriptorError):
        automorphism_from_perm(g, (0, 2, 1, 3))  # not multiplicative
    with pytest.raises(DescriptorError):
        automorphism_from_perm(g, (1, 0, 3, 2))  # moves the identity
    a = automorphism_from_perm(g, (0, 3, 2, 1))
    assert a.order2


def test_enumeration_matches_brute_force(caps):
    # the brute oracle scans all (order-1)! candidate bijections
    for name in ("Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "D4", "D6"):
        g = make_group(name, caps)
        ours = {a.perm for a in enumerate_automorphisms(g)}
        brute = set(group_automorphisms_brute(g.mul, g.order))
        assert ours == brute, name


def test_identity_is_always_first(caps):
    for name in ("Z1", "Z8", "D6", "A4", "Z2xZ2xZ3"):
        g = make_group(name, caps)
        autos = enumerate_involutory_automorphisms(g)
        assert autos[0].perm == tuple(range(g.order))


def test_z8_involutory_automorphisms_are_multipliers(caps):
    g = make_group("Z8", caps)
    autos = enumerate_involutory_automorphisms(g)
    perms = {a.perm for a in autos}
    expected = {tuple((k * x) % 8 for x in range(8)) for k in (1, 3, 5, 7)}
    assert perms == expected


def test_a4_involutory_count_and_nonsubgroup_omega(caps):
    g = make_group("A4", caps)
    autos = enumerate_involutory_automorphisms(g)
    assert len(autos) == 10
    # some involutory map fixes only a 2-element subgroup, and its omega image
    # (6 elements) is not closed under multiplication
    hits = []
    for a in autos:
        f = fix_set(g, a)
        if len(f) == 2:
            w = omega_set(g, a)
            assert len(w.set) == 6
            assert not w.is_subgroup
            hits.append(a)
    assert hits


def test_fix_and_omega_for_cyclic_inversion(caps):
    g = make_group("Z6", caps)
    i = inversion_map(g)
    assert fix_set(g, i).members() == (0, 3)
    w = omega_set(g, i)
    assert w.set.members() == (0, 2, 4)
    assert w.is_subgroup


def test_fix_times_omega_counts(caps):
    # |Fix(a)| * |omega(G)| = |G| for involutory maps on abelian groups
    for name in ("Z2", "Z4", "Z6", "Z8", "Z12", "Z2xZ2xZ3"):
        g = make_group(name, caps)
        for a in enumerate_involutory_automorphisms(g):
            assert len(fix_set(g, a)) * len(omega_set(g, a).set) == g.order


def test_decompose_odd_abelian(caps):
    g = make_group("Z3xZ9", caps)
    a = inversion_map(g)
    dec = decompose_odd_abelian(g, a)
    assert len(dec.fix) == 1
    assert len(dec.omega) == 27
    for x in range(g.order):
        f, w = dec.pair_of[x]
        assert f in dec.fix.members()
        assert w in dec.omega.members()
        assert g.mul[f][w] == x


def test_decompose_cyclic_sylow(caps):
    g = make_group("Z12", caps)
    a = inversion_map(g)
    dec = decompose_cyclic_sylow(g, a)
    assert dec.n == 2
    assert len(dec.h1) * len(dec.h2) == 3
    two_part = 1 << dec.n
    assert g.element_orders[dec.z] == two_part
    for x in range(g.order):
        e, y1, y2 = dec.coords[x]
        # z^e * y1 * y2 recombines to x, and alpha acts coordinatewise
        z_pow = 0
        for _ in range(e):
            z_pow = g.mul[z_pow][dec.z]
        assert g.mul[g.mul[z_pow][y1]][y2] == x
        az_pow = 0
        for _ in range((dec.a * e) % two_part):
            az_pow = g.mul[az_pow][dec.z]
        assert g.mul[g.mul[az_pow][y1]][g.inv[y2]] == a.perm[x]


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_classify_dihedral_involutions(caps):
    for p, want in ((3, 4), (5, 6), (7, 8)):
        params = classify_dihedral_involutions(p)
        assert len(params) == want
        g = make_group(f"D{2 * p}", caps)
        perms = {q.to_automorphism(g).perm for q in params}
        listed = {a.perm for a in enumerate_involutory_automorphisms(g)}
        assert perms == listed
        for q in params:
            if q.halfshift is not None:
                assert (2 * q.halfshift) % p == q.l % p

    with pytest.raises(Exception):
        classify_dihedral_involutions(4)
