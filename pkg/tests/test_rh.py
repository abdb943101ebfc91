from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gck.chars import character_table
from gck.errors import InconsistentBranchData, NonCyclicStabilizer, NotASubgroup
from gck.group_core import Perm
from gck.named import group_by_name, symmetric
from gck.rh import CoverData, component_genus, equivariant_rh, random_cover, rh_consistency


def _s3_cover():
    G = symmetric(3)
    C3 = G.subgroup([Perm.from_cycles("(0 1 2)", 3)])
    return CoverData(G, C3, 0, (C3, C3, C3))


def test_s3_worked_cover():
    c = _s3_cover()
    V = equivariant_rh(c)
    assert V.format() == "2·2a"
    assert V.degree == 4
    assert component_genus(c) == 1
    assert rh_consistency(c)


def test_full_group_cover_of_a_line():
    # S3 acting on a genus 0 curve with inertia C2, C2, C3: trivial Jacobian
    G = symmetric(3)
    C2 = G.subgroup([Perm.from_cycles("(0 1)", 3)])
    C3 = G.subgroup([Perm.from_cycles("(0 1 2)", 3)])
    c = CoverData(G, G.whole(), 0, (C2, C2, C3))
    assert component_genus(c) == 0
    assert equivariant_rh(c).format() == "0"


def test_unramified_cover_of_elliptic_curve():
    G = group_by_name("C3")
    c = CoverData(G, G.whole(), 1, ())
    V = equivariant_rh(c)
    assert list(V.multiplicities) == [2, 0, 0]
    assert component_genus(c) == 1


def test_odd_riemann_hurwitz_is_rejected():
    G = symmetric(3)
    C2 = G.subgroup([Perm.from_cycles("(0 1)", 3)])
    c = CoverData(G, C2, 0, (C2,))
    with pytest.raises(InconsistentBranchData):
        component_genus(c)
    with pytest.raises(InconsistentBranchData):
        rh_consistency(c)


def test_validation():
    G = symmetric(3)
    C2 = G.subgroup([Perm.from_cycles("(0 1)", 3)])
    C3 = G.subgroup([Perm.from_cycles("(0 1 2)", 3)])
    with pytest.raises(NotASubgroup):
        CoverData(G, C3, 0, (C2,))
    with pytest.raises(InconsistentBranchData):
        CoverData(G, C3, -1, ())
    V4 = group_by_name("V4")
    with pytest.raises(NonCyclicStabilizer):
        CoverData(V4, V4.whole(), 0, (V4.whole(),))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["S3", "A4", "D4", "C6", "Q8", "C5"]))
def test_random_realizable_covers_are_consistent(seed, name):
    rng = random.Random(seed)
    G = group_by_name(name)
    c = random_cover(G, rng)
    assert rh_consistency(c)
    V = equivariant_rh(c)
    # G-invariants of the Tate module have rank 2 g(X/G) = 2 g(Y)
    assert V.multiplicities[0] == 2 * c.base_genus
    assert V.degree == 2 * (G.order // c.component_stabilizer.order) * component_genus(c)
    # the Tate module is self-dual
    dual = character_table(G).dual_index
    assert all(V.multiplicities[i] == V.multiplicities[dual[i]] for i in range(len(dual)))
