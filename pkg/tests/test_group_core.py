from __future__ import annotations

import random
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gck.errors import InvalidPermutation, NotASubgroup, OrderCapExceeded
from gck.group_core import (
    Perm,
    all_subgroups,
    conjugacy_classes,
    double_cosets,
    group_from_generators,
    left_transversal,
    subgroups_up_to_conjugacy,
)
from gck.named import SWEEP_GROUP_NAMES_24, SWEEP_GROUP_NAMES_48, group_by_name, symmetric

perm5 = st.permutations(list(range(5))).map(Perm)


class TestPerm:
    def test_cycle_parsing(self):
        p = Perm.from_cycles("(0 1 2)(3 4)", 5)
        assert p.images == (1, 2, 0, 4, 3)
        assert str(p) == "(0 1 2)(3 4)"
        assert Perm.from_cycles("()", 3).is_identity()

    def test_composition_is_right_to_left(self):
        g = Perm.from_cycles("(0 1 2)", 3)
        h = Perm.from_cycles("(0 1)", 3)
        # (g h)(0) = g(h(0)) = g(1) = 2
        assert (g * h)(0) == 2

    @pytest.mark.parametrize("text", ["(0 1 1)", "(0 5)", "(0 a)", "0 1"])
    def test_rejects_bad_cycles(self, text):
        with pytest.raises(InvalidPermutation):
            Perm.from_cycles(text, 3)

    def test_rejects_non_bijection(self):
        with pytest.raises(InvalidPermutation):
            Perm([0, 0, 1])

    @given(perm5, perm5, perm5)
    def test_associativity(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @given(perm5)
    def test_inverse_and_order(self, a):
        assert a * a.inverse() == Perm.identity(5)
        assert (a ** a.order()).is_identity()
        assert a ** -1 == a.inverse()

    @given(perm5, perm5)
    def test_sign_is_multiplicative(self, a, b):
        assert (a * b).is_even() == (a.is_even() == b.is_even())


@pytest.mark.parametrize(
    "name,order,classes",
    [("S3", 6, 3), ("S4", 24, 5), ("A4", 12, 4), ("D4", 8, 5), ("Q8", 8, 5), ("C6", 6, 6),
     ("SL(2,3)", 24, 7), ("GL(2,3)", 48, 8), ("Dic3", 12, 6), ("S3xS3", 36, 9), ("C2xA4", 24, 8)],
)
def test_named_groups(name, order, classes):
    G = group_by_name(name)
    assert G.order == order
    assert len(G.classes) == classes
    assert sum(len(c) for c in G.classes) == order


def test_sweep_lists_are_bounded():
    assert len(SWEEP_GROUP_NAMES_24) >= 10
    assert all(group_by_name(n).order <= 24 for n in SWEEP_GROUP_NAMES_24)
    assert all(group_by_name(n).order <= 48 for n in SWEEP_GROUP_NAMES_48)


def test_identity_is_index_zero_and_schreier_words():
    G = symmetric(4)
    assert G.elements[0].is_identity()
    for i in range(G.order):
        x = Perm.identity(4)
        for k in G.word(i):
            x = x * G.generators[k]
        assert x == G.elements[i]


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        group_from_generators(8, ["(0 1 2 3 4 5 6 7)", "(0 1)"], cap=1000)


def test_classes_are_conjugation_orbits():
    G = group_by_name("D4")
    for cls in conjugacy_classes(G):
        x = cls[0]
        assert set(cls) == {g * x * g.inverse() for g in G.elements}


@pytest.mark.parametrize("name,count", [("S3", 4), ("S4", 11), ("A4", 5), ("D4", 8), ("Q8", 6), ("C2xC2", 5), ("C6", 4)])
def test_subgroup_classes(name, count):
    assert len(subgroups_up_to_conjugacy(group_by_name(name))) == count


def test_subgroup_counts():
    assert len(all_subgroups(symmetric(4))) == 30
    assert len(all_subgroups(group_by_name("Q8"))) == 6


def test_subgroup_from_other_group_rejected():
    G, K = symmetric(3), symmetric(4)
    with pytest.raises(NotASubgroup):
        double_cosets(G, K.trivial(), G.trivial())


def test_subgroup_predicates():
    G = symmetric(4)
    V = G.subgroup([Perm.from_cycles("(0 1)(2 3)", 4), Perm.from_cycles("(0 2)(1 3)", 4)])
    C4 = G.subgroup([Perm.from_cycles("(0 1 2 3)", 4)])
    assert V.is_normal() and not V.is_cyclic() and V.order == 4
    assert C4.is_cyclic() and not C4.is_normal()
    assert C4.intersection(V).order == 2
    assert V.canonical_conjugate.mask == V.mask


@pytest.mark.parametrize("name", SWEEP_GROUP_NAMES_24)
def test_double_cosets_partition(name):
    G = group_by_name(name)
    subs = subgroups_up_to_conjugacy(G)
    rng = random.Random(len(subs))
    for H in subs:
        K = rng.choice(subs)
        dcs = double_cosets(G, H, K)
        union = 0
        for D in dcs:
            assert union & D.mask == 0
            union |= D.mask
            # |HgK| = |H||K| / |H ∩ gKg^-1|
            g = D.rep_index
            assert D.size * H.intersection(K.conjugate(g)).order == H.order * K.order
        assert union == (1 << G.order) - 1


def test_transversal_sizes():
    G = symmetric(4)
    for H in subgroups_up_to_conjugacy(G):
        reps = left_transversal(G, H)
        assert len(reps) == factorial(4) // H.order
        assert reps[0].is_identity()
