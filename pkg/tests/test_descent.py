from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gck.chars import VirtualCharacter, character_table
from gck.descent import (
    LinearForm,
    RankObservation,
    fixed_dimensions,
    rank_solver,
    selmer_decomposition,
    self_duality_check,
    solution_from_multiplicities,
    vanishing_constraints,
)
from gck.errors import MixedKinds, NotASubgroup, UnderdeterminedInput
from gck.group_core import Perm, subgroups_up_to_conjugacy
from gck.named import cyclic, group_by_name, symmetric

NAMES = {"1a": "1", "1b": "ε", "2a": "ρ"}


@pytest.fixture
def s3_parts(S3):
    D = S3.subgroup([Perm.from_cycles("(0 1 2)", 3)])
    E = S3.subgroup([Perm.from_cycles("(0 1)", 3)])
    return S3, E, D


class TestLinearForm:
    def test_arithmetic_and_parse(self):
        a = LinearForm.parse("rkE")
        b = LinearForm.parse("rkD")
        c = (a - b) * 2 + LinearForm(3)
        assert str(c) == "-2*rkD + 2*rkE + 3"
        assert c.substitute({"rkE": 1, "rkD": 1}) == LinearForm(3)
        assert LinearForm.parse(4) == 4
        assert (a - a).is_zero()

    def test_bad_input(self):
        with pytest.raises(ValueError):
            LinearForm.parse("2 rk")
        with pytest.raises(ValueError):
            RankObservation(symmetric(3).whole(), -1)
        with pytest.raises(ValueError):
            RankObservation(symmetric(3).whole(), 1, kind="analytic")


def test_symbolic_s3_descent(s3_parts):
    G, E, D = s3_parts
    obs = [RankObservation(G.whole(), 0), RankObservation(E, "rkE"), RankObservation(D, "rkD")]
    sol = rank_solver(G, obs)
    assert sol.status == "determined"
    assert [str(m) for m in sol.multiplicities] == ["0", "rkD", "rkE"]
    assert sol.format(NAMES) == "ε^⊕(rkD) ⊕ ρ^⊕(rkE)"
    # equations are listed from the largest subgroup down
    assert [e.origin.split(",")[0] for e in sol.equations] == ["rank of X/H"] * 3
    assert sol.equations[0].coeffs == (1, 0, 0)


def test_numeric_s3_descent(s3_parts):
    G, E, D = s3_parts
    obs = [RankObservation(G.whole(), 1), RankObservation(E, 3), RankObservation(D, 1)]
    sol = rank_solver(G, obs)
    assert [int(m.const) for m in sol.multiplicities] == [1, 0, 2]
    assert sol.to_json(NAMES)["decomposition"] == "1 ⊕ ρ^⊕(2)"


def test_selmer_decomposition(s3_parts):
    G, E, D = s3_parts
    obs = [RankObservation(G.whole(), 0, "p_selmer", 3), RankObservation(E, "rkpE", "p_selmer", 3),
           RankObservation(D, "rkpD", "p_selmer", 3)]
    assert selmer_decomposition(G, obs).format(NAMES) == "ε^⊕(rkpD) ⊕ ρ^⊕(rkpE)"


def test_mixed_kinds(s3_parts):
    G, E, _ = s3_parts
    obs = [RankObservation(G.whole(), 0), RankObservation(E, 1, "p_selmer", 2)]
    with pytest.raises(MixedKinds):
        rank_solver(G, obs)
    two_primes = [RankObservation(G.whole(), 0, "p_selmer", 2), RankObservation(E, 1, "p_selmer", 3)]
    with pytest.raises(MixedKinds):
        selmer_decomposition(G, two_primes)


def test_foreign_subgroup(s3_parts):
    G, _, _ = s3_parts
    with pytest.raises(NotASubgroup):
        rank_solver(G, [RankObservation(cyclic(3).whole(), 0)])


def test_underdetermined_with_vanishing(s3_parts):
    G, _, _ = s3_parts
    T = character_table(G)
    V = VirtualCharacter(T, [0, 0, 2])
    assert vanishing_constraints(V) == frozenset({0, 1})
    sol = rank_solver(G, [RankObservation(G.whole(), 0)], V=V)
    assert sol.status == "underdetermined"
    assert sol.free_parameters == ("m[2a]",)
    assert str(sol.multiplicity("2a")) == "m[2a]"
    with pytest.raises(UnderdeterminedInput):
        self_duality_check(sol)


def test_inconsistent_negative_multiplicity():
    G = cyclic(2)
    sol = rank_solver(G, [RankObservation(G.trivial(), 3), RankObservation(G.whole(), 5)])
    assert sol.status == "inconsistent"
    assert sol.witness == "m[1b] = -2 is negative"
    assert sol.format().startswith("inconsistent")
    ok = rank_solver(G, [RankObservation(G.trivial(), 5), RankObservation(G.whole(), 3)])
    assert [int(m.const) for m in ok.multiplicities] == [3, 2]


def test_self_duality_forces_equal_conjugates():
    G = cyclic(3)
    obs = [RankObservation(G.trivial(), 1), RankObservation(G.whole(), 0)]
    sol = rank_solver(G, obs, self_dual=True)
    assert sol.status == "inconsistent"
    assert sol.witness == "m[1b] = 1/2 is not an integer"
    obs[0] = RankObservation(G.trivial(), 2)
    assert rank_solver(G, obs, self_dual=True).format() == "1b ⊕ 1c"
    free = rank_solver(G, obs, self_dual=False)
    assert free.status == "underdetermined" and free.free_parameters == ("m[1c]",)


def test_contradictory_equations():
    G = cyclic(2)
    obs = [RankObservation(G.whole(), 2), RankObservation(G.whole(), 3)]
    sol = rank_solver(G, obs)
    assert sol.status == "inconsistent"


def test_symbolic_condition():
    G = cyclic(2)
    sol = rank_solver(G, [RankObservation(G.whole(), "a"), RankObservation(G.whole(), "b")])
    assert [str(c) for c in sol.conditions] == ["-a + b"]


def test_self_duality_check():
    T = character_table(cyclic(3))
    assert self_duality_check(solution_from_multiplicities(T, [1, 2, 2]))
    assert not self_duality_check(solution_from_multiplicities(T, [0, 1, 2]))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_recovers_multiplicities_for_rational_groups(seed):
    # permutation characters span the rational characters, so the full set of
    # subgroup ranks pins down every multiplicity
    rng = random.Random(seed)
    G = group_by_name(rng.choice(["S3", "S4", "D4", "Q8", "C2xC2"]))
    T = character_table(G)
    m = [rng.randint(0, 3) for _ in T]
    obs = []
    for H in subgroups_up_to_conjugacy(G):
        dims = fixed_dimensions(G, H, T)
        obs.append(RankObservation(H, int(sum(d * x for d, x in zip(dims, m)))))
    sol = rank_solver(G, obs)
    assert sol.status == "determined"
    assert [m_.const for m_ in sol.multiplicities] == [Fraction(x) for x in m]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_self_dual_data_is_consistent(seed):
    rng = random.Random(seed)
    G = group_by_name(rng.choice(["C3", "A4", "C6", "C3xC3"]))
    T = character_table(G)
    m = [0] * len(T)
    for i, j in enumerate(T.dual_index):
        if i <= j:
            m[i] = m[j] = rng.randint(0, 2)
    obs = []
    for H in subgroups_up_to_conjugacy(G):
        dims = fixed_dimensions(G, H, T)
        obs.append(RankObservation(H, int(sum(d * x for d, x in zip(dims, m))), "p_selmer", 2))
    sol = selmer_decomposition(G, obs)
    assert sol.status == "determined"
    assert [x.const for x in sol.multiplicities] == m
    assert self_duality_check(sol)
