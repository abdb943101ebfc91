"""Equivariant Riemann-Hurwitz.

For a G-cover X -> Y whose connected component Γ has stabilizer H, with
branch points q_1..q_r of Γ -> Y and inertia groups S_i = Stab_H(t_i), the
Tate module of Jac_X has character

    2·Ind_H^G 1 + (2g(Y) - 2)·Ind_e^G 1 + Σ_i (Ind_e^G 1 - Ind_{S_i}^G 1).

All outputs are complex virtual characters.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .chars import ClassFunction, VirtualCharacter, character_table, decompose, induce_trivial
from .errors import InconsistentBranchData, NonCyclicStabilizer, NotASubgroup
from .group_core import Group, Subgroup, all_subgroups


@dataclass(frozen=True)
class CoverData:
    group: Group
    component_stabilizer: Subgroup
    base_genus: int
    branch_stabilizers: tuple[Subgroup, ...]

    def __post_init__(self):
        object.__setattr__(self, "branch_stabilizers", tuple(self.branch_stabilizers))
        validate_cover(self)


def validate_cover(c: CoverData) -> None:
    G, H = c.group, c.component_stabilizer
    if H.parent != G:
        raise NotASubgroup("component stabilizer is not a subgroup of the group")
    if c.base_genus < 0:
        raise InconsistentBranchData("base genus must be non-negative", base_genus=c.base_genus)
    for k, S in enumerate(c.branch_stabilizers):
        if S.parent != G or not S.is_subgroup_of(H):
            raise NotASubgroup(f"branch stabilizer {k} is not a subgroup of H", branch_point=k)
        if not S.is_cyclic():
            raise NonCyclicStabilizer(f"branch stabilizer {k} is not cyclic", branch_point=k, order=S.order)


def equivariant_rh_class_function(c: CoverData) -> ClassFunction:
    G, H = c.group, c.component_stabilizer
    reg = induce_trivial(G.trivial(), G)
    chi = induce_trivial(H, G) * 2 + reg * (2 * c.base_genus - 2)
    for S in c.branch_stabilizers:
        chi = chi + reg - induce_trivial(S.canonical_conjugate, G)
    return chi


def equivariant_rh(c: CoverData) -> VirtualCharacter:
    return decompose(equivariant_rh_class_function(c), character_table(c.group))


def component_genus(c: CoverData) -> int:
    """Genus of Γ from the ordinary Riemann-Hurwitz formula for Γ -> Y."""
    h = c.component_stabilizer.order
    twice = h * (2 * c.base_genus - 2) + sum(h - h // S.order for S in c.branch_stabilizers) + 2
    if twice % 2 or twice < 0:
        raise InconsistentBranchData(
            f"Riemann-Hurwitz gives 2g = {twice}, which is not a non-negative even integer",
            twice_genus=twice,
        )
    return twice // 2


def rh_consistency(c: CoverData) -> bool:
    g = component_genus(c)
    V = equivariant_rh(c)
    index = c.group.order // c.component_stabilizer.order
    return V.degree == 2 * index * g and V.is_effective()


# -- random realizable covers ----------------------------------------------


def _commutator(G: Group, a: int, b: int) -> int:
    return G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)))


def random_cover(G: Group, rng: random.Random, max_genus: int = 2, max_branch: int = 5, attempts: int = 200) -> CoverData:
    """Cover data realized by an explicit generating vector.

    Pick H ≤ G, a base genus and elements a_i, b_i, c_j of H with
    Π[a_i, b_i] Π c_j = 1, c_j ≠ 1 and generating H; the branch stabilizers
    are the cyclic groups ⟨c_j⟩.  Such data come from an actual cover, so the
    character is effective.
    """
    subs = all_subgroups(G)
    for _ in range(attempts):
        H = rng.choice(subs)
        gY = rng.randint(0, max_genus)
        r = rng.randint(0, max_branch) if H.order > 1 else 0
        if gY == 0 and r == 1:
            continue
        elems = list(H.indices)
        nontriv = [x for x in elems if x != 0]
        ab = [(rng.choice(elems), rng.choice(elems)) for _ in range(gY)]
        cs = [rng.choice(nontriv) for _ in range(max(r - 1, 0))] if nontriv else []
        prod = 0
        for a, b in ab:
            prod = G.mul(prod, _commutator(G, a, b))
        for x in cs:
            prod = G.mul(prod, x)
        if r >= 1:
            last = G.inv(prod)
            if last == 0:
                continue
            cs.append(last)
        elif prod != 0:
            continue
        gens = [x for pair in ab for x in pair] + cs
        if G.subgroup(gens).mask != H.mask:
            continue
        branch = tuple(G.subgroup([x]) for x in cs)
        return CoverData(G, H, gY, branch)
    return CoverData(G, G.trivial(), 1, ())


def cover_from_generating_vector(G: Group, H: Subgroup, base_genus: int, hyperbolic: Sequence[tuple[int, int]], elliptic: Sequence[int]) -> CoverData:
    return CoverData(G, H, base_genus, tuple(G.subgroup([x]) for x in elliptic))


__all__ = [
    "CoverData", "component_genus", "equivariant_rh", "equivariant_rh_class_function",
    "random_cover", "rh_consistency", "validate_cover",
]
