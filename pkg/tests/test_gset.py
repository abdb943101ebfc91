from __future__ import annotations

import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gck.errors import NoRightAction, NotASubgroup, NotContaining, NotTransitive, SizeCapExceeded
from gck.group_core import Perm, group_from_generators, subgroups_up_to_conjugacy
from gck.gset import (
    alternating_quotient,
    discriminant_is_square,
    first_point_stabilizer,
    g_closure,
    gset_from_action,
    gset_from_stabilizers,
    isomorphic_gsets,
    natural_gset,
    permutation_character,
    point_stabilizer_in,
    quotient_by_right_subgroup,
    sn_closure,
)
from gck.named import alternating, cyclic, dihedral, group_by_name, symmetric


def _random_gset(G, rng, blocks=3):
    subs = subgroups_up_to_conjugacy(G)
    stabs = [rng.choice(subs) for _ in range(rng.randint(1, blocks))]
    # conjugate some stabilizers to exercise non-canonical blocks
    stabs = [H.conjugate(rng.randrange(G.order)) for H in stabs]
    return gset_from_stabilizers(G, stabs)


def test_coset_space_structure(s3ex):
    S = s3ex.S
    assert S.size == 8
    assert [len(b.points) for b in S.blocks] == [3, 3, 2]
    for b in S.blocks:
        assert S.stabilizer(b.base) == b.stabilizer
        for x in b.points:
            assert S.act(S.point_reps[x], b.base) == x


def test_pinned_ordering_must_start_in_stabilizer(S3):
    g = Perm.from_cycles("(0 1 2)", 3)
    H = S3.subgroup([Perm.from_cycles("(0 1)", 3)])
    with pytest.raises(NotASubgroup):
        gset_from_stabilizers(S3, [H], orderings=[[g, g * g, Perm.identity(3)]])
    with pytest.raises(NotASubgroup):
        gset_from_stabilizers(S3, [H], orderings=[[Perm.identity(3), Perm.from_cycles("(0 1)", 3), g]])


@pytest.mark.parametrize("name", ["S3", "D4", "A4", "S4", "Q8", "C2xC2xC2", "Dic3", "D6"])
def test_burnside_orbit_counts(name):
    G = group_by_name(name)
    rng = random.Random(name)
    for _ in range(5):
        S = _random_gset(G, rng)
        total = sum(S.fixed_points(g) for g in range(G.order))
        assert Fraction(total, G.order) == len(S.orbits())
        assert len(S.orbits()) == len(S.blocks)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_burnside_on_random_actions(seed):
    rng = random.Random(seed)
    G = group_by_name(rng.choice(["S3", "A4", "D4", "C6"]))
    S = _random_gset(G, rng, blocks=4)
    chi = permutation_character(S)
    assert sum(S.fixed_points(g) for g in range(G.order)) == G.order * len(S.orbits())
    assert chi.degree == S.size


def test_gset_from_action_validates():
    G = symmetric(3)
    S = gset_from_action(G, [g.images for g in G.generators])
    assert S.size == 3
    # sending every generator (including a 3-cycle) to a swap is not a homomorphism
    assert any(g.order() == 3 for g in G.generators)
    with pytest.raises(NotASubgroup):
        gset_from_action(G, [(1, 0) for _ in G.generators])


def test_isomorphism_detects_conjugate_stabilizers():
    G = symmetric(3)
    H1 = G.subgroup([Perm.from_cycles("(0 1)", 3)])
    H2 = G.subgroup([Perm.from_cycles("(1 2)", 3)])
    C = G.subgroup([Perm.from_cycles("(0 1 2)", 3)])
    assert isomorphic_gsets(gset_from_stabilizers(G, [H1]), gset_from_stabilizers(G, [H2]))
    assert not isomorphic_gsets(gset_from_stabilizers(G, [H1]), gset_from_stabilizers(G, [C]))


@pytest.mark.parametrize(
    "G",
    [symmetric(3), cyclic(4), dihedral(4), alternating(4), symmetric(4), cyclic(5), dihedral(5),
     group_from_generators(5, ["(0 1 2 3 4)", "(1 2 4 3)"])],
    ids=["S3", "C4", "D4", "A4", "S4", "C5", "D5", "F20"],
)
def test_sn_closure_quotient_round_trip(G):
    S = natural_gset(G)
    T = sn_closure(S)
    assert T.size == factorial(S.size)
    R = T.right.group
    Q = quotient_by_right_subgroup(T, first_point_stabilizer(R))
    assert Q.size == S.size
    assert isomorphic_gsets(Q, S)
    # the left action commutes with the right action
    for g in G.generator_indices:
        left = T.element_images(g)
        for r in range(R.order):
            right = T.right_element_images(r)
            assert all(left[right[x]] == right[left[x]] for x in range(T.size))


def test_sn_closure_orbits_for_regular_like_actions():
    # a faithful transitive action acts freely on bijections
    G = dihedral(4)
    T = sn_closure(natural_gset(G))
    assert sorted(len(o) for o in T.orbits()) == [G.order] * (24 // G.order)


def test_sn_closure_cap():
    G = cyclic(8)
    with pytest.raises(SizeCapExceeded):
        sn_closure(natural_gset(G))


def test_quotient_requires_right_action():
    G = symmetric(3)
    with pytest.raises(NoRightAction):
        quotient_by_right_subgroup(natural_gset(G), G.trivial())


@pytest.mark.parametrize(
    "G,square",
    [(alternating(4), True), (symmetric(4), False), (cyclic(3), True), (cyclic(4), False),
     (dihedral(5), True), (alternating(5), True), (symmetric(3), False)],
    ids=["A4", "S4", "C3", "C4", "D5", "A5", "S3"],
)
def test_discriminant_and_alternating_quotient(G, square):
    S = natural_gset(G)
    assert discriminant_is_square(S) is square
    assert alternating_quotient(S) == ("split" if square else "nonsplit")


class TestGClosure:
    def test_round_trip_and_orbits(self):
        G = cyclic(4)
        C = dihedral(4)
        S = natural_gset(G)
        T = g_closure(S, C)
        assert T.size == C.order
        Q = quotient_by_right_subgroup(T, point_stabilizer_in(C, 0))
        assert isomorphic_gsets(Q, S)
        assert sorted(len(o) for o in T.orbits()) == [4, 4]

    def test_full_symmetric_container_matches_sn_closure(self):
        G = symmetric(3)
        S = natural_gset(G)
        T = g_closure(S, symmetric(3))
        U = sn_closure(S)
        assert sorted(len(o) for o in T.orbits()) == sorted(len(o) for o in U.orbits())

    def test_not_containing(self):
        G = symmetric(4)
        with pytest.raises(NotContaining):
            g_closure(natural_gset(G), alternating(4))
        with pytest.raises(NotContaining):
            g_closure(natural_gset(G), symmetric(5))

    def test_not_transitive(self):
        G = symmetric(3)
        S = gset_from_stabilizers(G, [G.whole(), G.trivial()])
        with pytest.raises(NotTransitive):
            g_closure(S, symmetric(7))
        # the Klein four group acting regularly is its own closure
        C = group_from_generators(4, ["(0 1)(2 3)", "(0 2)(1 3)"])
        T = natural_gset(C)
        assert g_closure(T, C).size == 4
        # orbits {0, 1}, {2}, {3}
        with pytest.raises(NotTransitive):
            g_closure(natural_gset(group_from_generators(4, ["(0 1)"])), symmetric(4))
