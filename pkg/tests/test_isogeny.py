from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import S3_HOM_MATRIX
from gck.chars import VirtualCharacter, brauer_relations, character_table
from gck.errors import GroupMismatch, NotEquivariant
from gck.group_core import subgroups_up_to_conjugacy
from gck.gset import gset_from_stabilizers
from gck.isogeny import (
    Namer,
    dual_expression,
    expression_json,
    f_phi_expression,
    format_expression,
    isogeny_criterion,
    relation_hom,
    simplify_expression,
)
from gck.linalg import is_invertible
from gck.named import group_by_name, symmetric
from gck.permmod import dual_hom, hom_from_images, hom_from_matrix, hom_space_basis, identity_hom, zero_hom


def _namer(ex) -> Namer:
    return Namer(ex.G, {"g": ex.g, "h": ex.h}, {"E": ex.E, "D": ex.D})


def _rho_twice(G):
    T = character_table(G)
    return VirtualCharacter(T, [0, 0, 2])


class TestCriterion:
    def test_worked_example_is_certified(self, s3ex):
        verdict = isogeny_criterion(s3ex.phi, _rho_twice(s3ex.G))
        assert verdict.certified and verdict.status == "isogeny_certified"
        (block,) = verdict.blocks
        assert block.irreducible == "2a"
        assert (block.rows, block.cols, block.rank) == (4, 4, 4)
        assert block.to_json()["normalized_shape"] == [2, 2]

    def test_identified_rows_fail_at_rho(self, s3ex):
        pt, e, g, h = s3ex.point, s3ex.G.elements[0], s3ex.g, s3ex.h
        images = [{pt(e): 1, pt(h): 1}, {pt(e): 1, pt(h): 1}, {pt(e): 1, pt(g): 1, pt(g * g): 1}]
        degenerate = hom_from_images(s3ex.S, s3ex.S2, images)
        verdict = isogeny_criterion(degenerate, _rho_twice(s3ex.G))
        assert verdict.status == "not_certified"
        assert verdict.witness.irreducible == "2a"
        assert verdict.witness.rank == 2

    def test_single_entry_mutations_are_rejected(self, s3ex):
        for r in range(6):
            for c in range(8):
                m = [list(row) for row in S3_HOM_MATRIX]
                m[r][c] = 1 - m[r][c]
                with pytest.raises(NotEquivariant):
                    hom_from_matrix(s3ex.S, s3ex.S2, m)

    def test_only_constituents_of_v_are_checked(self, s3ex):
        T = character_table(s3ex.G)
        # the sign block is 1x1 (only D and e fix the sign), the trivial block is 3x1
        assert isogeny_criterion(s3ex.phi, VirtualCharacter(T, [0, 1, 0])).certified
        trivial = isogeny_criterion(s3ex.phi, VirtualCharacter(T, [1, 0, 0]))
        assert not trivial.certified
        assert (trivial.witness.rows, trivial.witness.cols) == (3, 1)

    def test_zero_hom_not_certified(self, s3ex):
        assert not isogeny_criterion(zero_hom(s3ex.S, s3ex.S2), _rho_twice(s3ex.G)).certified

    def test_group_mismatch(self, s3ex):
        T = character_table(group_by_name("C6"))
        with pytest.raises(GroupMismatch):
            isogeny_criterion(s3ex.phi, VirtualCharacter(T, [1] * 6))

    def test_json_is_serializable(self, s3ex):
        data = isogeny_criterion(s3ex.phi, _rho_twice(s3ex.G)).to_json()
        assert json.loads(json.dumps(data)) == data


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 100_000))
def test_all_irreducibles_certified_iff_invertible(seed):
    # a hom of permutation modules is a Q-isomorphism exactly when it is so on
    # every isotypic piece of the invariants
    rng = random.Random(seed)
    G = group_by_name(rng.choice(["S3", "C2xC2", "D4"]))
    rels = brauer_relations(G, max_blocks=4)
    if rels and rng.random() < 0.6:
        rel = rng.choice(rels)
        S, S2 = rel.left, rel.right
    else:
        subs = subgroups_up_to_conjugacy(G)
        S = gset_from_stabilizers(G, rng.sample(subs, 2))
        S2 = S
    phi = zero_hom(S, S2)
    for _, h in hom_space_basis(S, S2):
        phi = phi + h * rng.randint(-2, 2)
    T = character_table(G)
    verdict = isogeny_criterion(phi, VirtualCharacter(T, [1] * len(T)))
    assert verdict.certified == is_invertible([list(r) for r in phi.matrix])


@pytest.mark.parametrize("name", ["C2xC2", "S3", "D4"])
def test_relation_hom_is_invertible(name):
    G = group_by_name(name)
    for rel in brauer_relations(G, max_blocks=4)[:3]:
        phi = relation_hom(rel.left, rel.right)
        assert phi is not None
        assert is_invertible([list(r) for r in phi.matrix])


class TestExpressions:
    def test_worked_example_golden(self, s3ex):
        e = simplify_expression(f_phi_expression(s3ex.phi))
        assert format_expression(e, _namer(s3ex)).splitlines() == [
            "[0 <- 0] X/E <- X/e: (π_E)_*",
            "[1 <- 0] X/E <- X/e: (π_E)_* ∘ g_*",
            "[2 <- 0] X/D <- X/e: (π_D)_*",
        ]
        dual = dual_expression(e)
        assert format_expression(dual, _namer(s3ex)).splitlines() == [
            "[0 <- 0] X/e <- X/E: π_E^*",
            "[0 <- 1] X/e <- X/E: g^* ∘ π_E^*",
            "[0 <- 2] X/e <- X/D: π_D^*",
        ]

    def test_raw_blocks_carry_double_coset_sums(self, s3ex):
        raw = f_phi_expression(s3ex.phi)
        assert not raw.simplified
        b = raw.block(0, 0)
        assert b.prefactor == Fraction(1, 2)
        assert sorted(b.element_dict().values()) == [1, 1]
        assert "divisibility" in raw.metadata

    def test_identity_simplifies_to_id(self, s3ex):
        e = simplify_expression(f_phi_expression(identity_hom(s3ex.S)))
        text = format_expression(e, _namer(s3ex))
        assert [line.rsplit(": ", 1)[1] for line in text.splitlines()] == ["id", "id", "id"]

    def test_simplify_is_idempotent(self, s3ex):
        e = simplify_expression(f_phi_expression(s3ex.phi))
        assert simplify_expression(e) is e
        assert e.normal_form() == f_phi_expression(s3ex.phi).normal_form()

    def test_json_output_is_deterministic(self, s3ex):
        e = simplify_expression(f_phi_expression(s3ex.phi))
        a = expression_json(e, _namer(s3ex))
        assert a == expression_json(simplify_expression(f_phi_expression(s3ex.phi)), _namer(s3ex))
        assert json.loads(a)["display"][1] == "(π_E)_* ∘ g_*"


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 100_000))
def test_dual_expression_matches_dual_hom(seed):
    rng = random.Random(seed)
    G = group_by_name(rng.choice(["S3", "D4", "A4", "Q8"]))
    subs = subgroups_up_to_conjugacy(G)
    S = gset_from_stabilizers(G, rng.sample(subs, rng.randint(1, 2)))
    S2 = gset_from_stabilizers(G, rng.sample(subs, rng.randint(1, 2)))
    phi = zero_hom(S, S2)
    for _, h in hom_space_basis(S, S2):
        phi = phi + h * rng.randint(-2, 2)
    e = simplify_expression(f_phi_expression(phi))
    assert dual_expression(e).normal_form() == simplify_expression(f_phi_expression(dual_hom(phi))).normal_form()
    assert dual_expression(dual_expression(e)).normal_form() == e.normal_form()


def test_symmetric_four_relation_hom_is_certified():
    G = symmetric(4)
    T = character_table(G)
    rel = brauer_relations(G, max_blocks=4)[0]
    phi = relation_hom(rel.left, rel.right)
    assert isogeny_criterion(phi, VirtualCharacter(T, [1] * len(T))).certified
    e = simplify_expression(f_phi_expression(phi))
    assert len(format_expression(e).splitlines()) == len(e.blocks)
