"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line (with its wall time) that is printed in the
pytest terminal summary, or directly when this file is run as a script.
"""

from __future__ import annotations

import random
import time
from contextlib import contextmanager
from fractions import Fraction
from math import factorial

import pytest

from conftest import PRINTED_S3_MATRIX, S3_HOM_MATRIX, make_s3_example
from gck.chars import VirtualCharacter, brauer_relations, character_table
from gck.descent import RankObservation, rank_solver, selmer_decomposition
from gck.errors import NotEquivariant
from gck.group_core import Perm, all_subgroups, double_cosets
from gck.gset import (
    first_point_stabilizer,
    gset_from_stabilizers,
    isomorphic_gsets,
    natural_gset,
    permutation_character,
    quotient_by_right_subgroup,
    sn_closure,
)
from gck.isogeny import dual_expression, f_phi_expression, isogeny_criterion, simplify_expression
from gck.named import SWEEP_GROUP_NAMES_24, SWEEP_GROUP_NAMES_48, alternating, cyclic, dihedral, group_by_name, symmetric
from gck.permmod import coset_identity_sides, dual_hom, equivariance_solution_dimension, hom_basis, hom_from_images, hom_from_matrix
from gck.rh import CoverData, component_genus, equivariant_rh, random_cover, rh_consistency
from gck.sha_parity import SquareClass, make_place, mu_place, sha_two_class

RESULTS: dict[int, str] = {}


@contextmanager
def criterion(number: int, title: str, limit: float):
    start = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f}s, limit {limit:g}s)"
        RESULTS[number] = line
        print(line)


def _sweep_groups():
    groups = [group_by_name(n) for n in SWEEP_GROUP_NAMES_24]
    assert len(groups) >= 10 and all(G.order <= 24 for G in groups)
    return groups


def test_criterion_01_matrix_reproduction():
    with criterion(1, "worked example matrix from generator images equals the printed matrix", 1):
        ex = make_s3_example()
        assert ex.phi.matrix == PRINTED_S3_MATRIX


def test_criterion_02_equivariant_rh():
    with criterion(2, "S3 cover with three C3 stabilizers gives 2·rho of degree 4", 1):
        G = symmetric(3)
        C3 = G.subgroup([Perm.from_cycles("(0 1 2)", 3)])
        V = equivariant_rh(CoverData(G, C3, 0, (C3, C3, C3)))
        assert list(V.multiplicities) == [0, 0, 2]
        assert V.degree == 4


def test_criterion_03_duality_sweep():
    with criterion(3, "dual of each double-coset hom is the inverse double-coset hom", 60):
        for G in _sweep_groups():
            subs = all_subgroups(G)
            for H in subs:
                for H2 in subs:
                    back = {h.double_coset.mask: h for h in hom_basis(G, H2, H)}
                    for phi in hom_basis(G, H, H2):
                        inv = 0
                        for t in phi.double_coset.indices:
                            inv |= 1 << G.inv(t)
                        assert dual_hom(phi).matrix == back[inv].matrix


def test_criterion_04_dimension_sweep():
    with criterion(4, "basis size = double cosets = rank of equivariance system", 60):
        for G in _sweep_groups():
            subs = all_subgroups(G)
            for H in subs:
                for H2 in subs:
                    homs = hom_basis(G, H, H2)
                    n = len(double_cosets(G, H, H2))
                    assert len(homs) == n
                    assert equivariance_solution_dimension(homs[0].domain, homs[0].codomain) == n


def test_criterion_05_isogeny_certification():
    with criterion(5, "worked example certified, mutations rejected, degenerate hom fails at rho", 1):
        ex = make_s3_example()
        T = character_table(ex.G)
        V = VirtualCharacter(T, [0, 0, 2])
        assert isogeny_criterion(ex.phi, V).status == "isogeny_certified"
        for r in range(6):
            for c in range(8):
                m = [list(row) for row in S3_HOM_MATRIX]
                m[r][c] = 1 - m[r][c]
                with pytest.raises(NotEquivariant):
                    hom_from_matrix(ex.S, ex.S2, m)
        pt, e = ex.point, ex.G.elements[0]
        degenerate = hom_from_images(ex.S, ex.S2, [
            {pt(e): 1, pt(ex.h): 1},
            {pt(e): 1, pt(ex.h): 1},
            {pt(e): 1, pt(ex.g): 1, pt(ex.g * ex.g): 1},
        ])
        verdict = isogeny_criterion(degenerate, V)
        assert verdict.status == "not_certified"
        assert verdict.witness.irreducible == "2a"


def test_criterion_06_f_phi_golden():
    with criterion(6, "f_phi blocks are (π_E)_*, (π_E)_*∘g_*, (π_D)_* and the dual matches", 1):
        ex = make_s3_example()
        G = ex.G
        g = G.index(ex.g)
        e = simplify_expression(f_phi_expression(ex.phi))
        expected = {
            (0, 0): (ex.E, 0),
            (1, 0): (ex.E, g),
            (2, 0): (ex.D, 0),
        }
        assert [(b.target, b.source) for b in e.blocks] == list(expected)
        for b in e.blocks:
            H, t = expected[(b.target, b.source)]
            assert e.target_subgroups[b.target] == H
            assert e.source_subgroups[b.source].order == 1
            # one double coset H t with total coefficient 1
            ((rep, coeff),) = b.element
            assert rep in {G.mul(h, t) for h in H.indices}
            assert b.prefactor * coeff == 1
        assert dual_expression(e) == simplify_expression(f_phi_expression(dual_hom(ex.phi)))
        assert dual_expression(f_phi_expression(ex.phi)) == f_phi_expression(dual_hom(ex.phi))


def test_criterion_07_klein_four_brauer_relation():
    with criterion(7, "C2xC2 relation: three C2 quotients vs regular plus two trivial", 5):
        G = group_by_name("C2xC2")
        rels = brauer_relations(G, max_blocks=4)
        assert len(rels) == 1
        rel = rels[0]
        assert sorted(b.stabilizer.order for b in rel.left.blocks) == [2, 2, 2]
        assert len({b.stabilizer.mask for b in rel.left.blocks}) == 3
        assert sorted(b.stabilizer.order for b in rel.right.blocks) == [1, 4, 4]
        assert permutation_character(rel.left).values == permutation_character(rel.right).values
        assert [int(v) for v in permutation_character(rel.left).values] == [6, 2, 2, 2]
        assert not isomorphic_gsets(rel.left, rel.right)


def test_criterion_08_descent():
    with criterion(8, "S3 descent gives n = 0, r = rkE, m = rkD and the Selmer analogue", 1):
        G = symmetric(3)
        D = G.subgroup([Perm.from_cycles("(0 1 2)", 3)])
        E = G.subgroup([Perm.from_cycles("(0 1)", 3)])
        sol = rank_solver(G, [RankObservation(G.whole(), 0), RankObservation(E, "rkE"), RankObservation(D, "rkD")])
        assert sol.status == "determined"
        assert str(sol.multiplicity("1a")) == "0"
        assert str(sol.multiplicity("2a")) == "rkE"
        assert str(sol.multiplicity("1b")) == "rkD"
        sel = selmer_decomposition(G, [
            RankObservation(G.whole(), 0, "p_selmer", 3),
            RankObservation(E, "rkpE", "p_selmer", 3),
            RankObservation(D, "rkpD", "p_selmer", 3),
        ])
        assert sel.format({"1b": "ε", "2a": "ρ"}) == "ε^⊕(rkpD) ⊕ ρ^⊕(rkpE)"


def test_criterion_09_property_suite():
    with criterion(9, "orthogonality, RH identities, coset identity, closure round trip, Burnside", 300):
        for name in SWEEP_GROUP_NAMES_48:
            G = group_by_name(name)
            T = character_table(G)
            assert G.order <= 48 and T.is_orthonormal() and len(T) == len(G.classes)

        rng = random.Random(2024)
        rh_groups = [group_by_name(n) for n in ("S3", "A4", "D4", "Q8", "C6", "D5", "S4")]
        for _ in range(200):
            G = rng.choice(rh_groups)
            c = random_cover(G, rng)
            V = equivariant_rh(c)
            assert V.degree == 2 * (G.order // c.component_stabilizer.order) * component_genus(c)
            assert V.is_effective() and rh_consistency(c)

        for G in _sweep_groups():
            subs = all_subgroups(G)
            for H in subs:
                for H2 in subs:
                    for D in double_cosets(G, H, H2):
                        left, middle, right = coset_identity_sides(G, H, D.rep_index, H2)
                        assert left == middle == right

        for G in (cyclic(3), symmetric(3), cyclic(4), dihedral(4), alternating(4), symmetric(4), cyclic(5), dihedral(5)):
            S = natural_gset(G)
            Tc = sn_closure(S)
            assert Tc.size == factorial(S.size)
            Q = quotient_by_right_subgroup(Tc, first_point_stabilizer(Tc.right.group))
            assert isomorphic_gsets(Q, S)

        for G in _sweep_groups():
            subs = all_subgroups(G)
            for _ in range(3):
                S = gset_from_stabilizers(G, rng.sample(subs, min(3, len(subs))))
                assert Fraction(sum(S.fixed_points(g) for g in range(G.order)), G.order) == len(S.orbits())


def test_criterion_10_sha_parity():
    with criterion(10, "single deficient place gives class 2, splitting preserves parity", 1):
        one = make_place("v", [("Y", [("w1", True), ("w2", False)])])
        assert sha_two_class([one]) == SquareClass(2)
        rng = random.Random(10)
        for _ in range(200):
            comps = [(f"Y{k}", [(f"w{j}", rng.random() < 0.5) for j in range(rng.randint(1, 4))]) for k in range(rng.randint(2, 5))]
            d = make_place("v", comps)
            a, b = d.split(rng.randint(1, len(comps) - 1))
            assert mu_place(a) * mu_place(b) == mu_place(d)
            assert sha_two_class([a, b]) == sha_two_class([d])


if __name__ == "__main__":  # pragma: no cover
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
