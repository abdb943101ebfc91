"""Isogeny criterion on isotypic invariants and symbolic f_phi expressions.

For ``phi: Z[S] -> Z[S']`` with ``S = ⊔ G/H_i`` and ``S' = ⊔ G/H'_j``, the
map ``f_phi`` goes from ``⊕_j Jac_{X/H'_j}`` to ``⊕_i Jac_{X/H_i}``.  Its
``(i, j)`` block is

    1/(|H_i||H'_j|) (π_{H_i})_* ∘ [Σ_D c_D Σ_{t∈D} t_*] ∘ (π_{H'_j})^*

where ``D`` runs over ``H_i \\ G / H'_j`` and ``c_D`` are the double-coset
coordinates of the block of ``phi``.  Since ``(π_H)_* h_* = (π_H)_*`` for
``h ∈ H`` and ``h'_* π_{H'}^* = π_{H'}^*`` for ``h' ∈ H'``, every ``t ∈ D``
collapses to one representative, which gives the simplified normal form
``{D: q_D}``.  The factor ``|H_i|`` relating ``f_phi`` to the unnormalized
composite is a standing guarantee (recorded as expression metadata).
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Sequence

from .chars import VirtualCharacter, character_table
from .errors import GroupMismatch, NotInBasisSpan
from .group_core import Group, Perm, Subgroup
from .gset import GSet
from .linalg import is_invertible, rank
from .permmod import PermModuleHom, _pullback_matrix, hom_space_basis, stabilizer_orbits, zero_hom
from .realized import (
    RealizedModule,
    invariants_basis,
    isotypic_basis,
    isotypic_component,
    regular_module,
)


# -- criterion -------------------------------------------------------------


@dataclass(frozen=True)
class BlockReport:
    irreducible: str
    rows: int
    cols: int
    rank: int
    dim: int

    @property
    def invertible(self) -> bool:
        return self.rows == self.cols and self.rank == self.rows

    def to_json(self) -> dict:
        return {
            "irreducible": self.irreducible,
            "rows": self.rows,
            "cols": self.cols,
            "rank": self.rank,
            "irreducible_dim": self.dim,
            "invertible": self.invertible,
            "normalized_shape": [self.rows // self.dim, self.cols // self.dim],
        }


@dataclass(frozen=True)
class IsogenyVerdict:
    certified: bool
    blocks: tuple[BlockReport, ...]
    witness: BlockReport | None = None

    @property
    def status(self) -> str:
        return "isogeny_certified" if self.certified else "not_certified"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "blocks": [b.to_json() for b in self.blocks],
            "witness": self.witness.to_json() if self.witness else None,
        }


def _isotypic_regular(G: Group, i: int) -> RealizedModule:
    cache = _ISO_CACHE.setdefault(G.key, {})
    if i not in cache:
        table = character_table(G)
        cache[i] = isotypic_component(regular_module(G), table[i])
    return cache[i]


_ISO_CACHE: dict[str, dict[int, RealizedModule]] = {}


def isogeny_criterion(phi: PermModuleHom, V: VirtualCharacter) -> IsogenyVerdict:
    """Test invertibility of ``phi^*`` on ``(e_rho Q[G])``-invariants for each rho in V.

    Each relevant block is ``⊕_j W^{H'_j} -> ⊕_i W^{H_i}`` with
    ``W = e_rho Q[G] ≅ rho^{dim rho}``; its size is ``dim rho`` times the size
    of the multiplicity-free block.
    """
    G = phi.domain.group
    if V.group != G:
        raise GroupMismatch("character and hom belong to different groups")
    table = V.table
    reports = []
    witness = None
    for i, m in enumerate(V.multiplicities):
        if m <= 0:
            continue
        W = _isotypic_regular(G, i)
        dom = [invariants_basis(W, b.stabilizer) for b in phi.domain.blocks]
        cod = [invariants_basis(W, b.stabilizer) for b in phi.codomain.blocks]
        mat = _pullback_matrix(phi, W, dom, cod)
        rows = sum(b.dim for b in dom)
        cols = sum(b.dim for b in cod)
        r = rank(mat) if rows and cols else 0
        rep = BlockReport(table.labels[i], rows, cols, r, table.degrees[i])
        reports.append(rep)
        if witness is None and not rep.invertible:
            witness = rep
    return IsogenyVerdict(witness is None, tuple(reports), witness)


def module_with_character(V: VirtualCharacter) -> RealizedModule:
    """A realized module with character ``V`` (V effective), built from isotypic parts.

    ``e_rho Q[G]`` has character ``dim(rho) rho``; one copy of rho is cut out as
    the span of the orbit of a single vector of ``e_rho Q[G]``'s minimal left
    ideal.  Multiplicities are then realized by direct sums.
    """
    G = V.group
    blocks: list[RealizedModule] = []
    for i, m in enumerate(V.multiplicities):
        if m <= 0:
            continue
        irr = irreducible_module(G, i)
        blocks.extend([irr] * m)
    return direct_sum(G, blocks)


def irreducible_module(G: Group, i: int) -> RealizedModule:
    """A realization of the ``i``-th irreducible as a left ideal of ``Q(zeta)[G]``.

    ``e_rho Q[G]`` is a two-sided ideal, and right multiplication by any
    element of the group algebra commutes with the left action, so its
    images are submodules.  Right multiplication by the idempotents of the
    cyclic subgroups ``(1/o) sum_l zeta^{-jl} r^l`` cuts the ideal down until
    one copy of rho is left.
    """
    from .cyclotomic import Cyclotomic
    from .group_core import cyclic_subgroups
    from .linalg import SubspaceBasis

    table = character_table(G)
    d = table.degrees[i]
    R = regular_module(G)
    U = isotypic_basis(R, table[i])
    idempotents = []
    for C in cyclic_subgroups(G):
        if C.order == 1:
            continue
        r = G.index(C.generators[0])
        o = C.order
        powers = [0]
        for _ in range(o - 1):
            powers.append(G.mul(powers[-1], r))
        for j in range(o):
            idempotents.append([(powers[l], Cyclotomic.zeta(o, -j * l) / o) for l in range(o)])
    progress = True
    while U.dim > d and progress:
        progress = False
        for eps in idempotents:
            imgs = [_right_multiply(G, u, eps) for u in U.vectors]
            V = SubspaceBasis.span(G.order, imgs)
            if 0 < V.dim < U.dim:
                U, progress = V, True
                break
    if U.dim != d:
        raise RuntimeError("could not isolate an irreducible constituent")
    return R.restrict_to(U)


def _right_multiply(G: Group, u, element) -> list:
    from .cyclotomic import as_scalar

    out = [Fraction(0)] * G.order
    for g, x in enumerate(u):
        if x == 0:
            continue
        for t, c in element:
            k = G.mul(g, t)
            out[k] = out[k] + x * c
    return [as_scalar(v) for v in out]


def direct_sum(G: Group, parts: Sequence[RealizedModule]) -> RealizedModule:
    dim = sum(p.dim for p in parts)
    mats = []
    for k in range(len(G.generators)):
        m = [[Fraction(0)] * dim for _ in range(dim)]
        off = 0
        for p in parts:
            pm = p.generator_matrices[k]
            for r in range(p.dim):
                for c in range(p.dim):
                    m[off + r][off + c] = pm[r][c]
            off += p.dim
        mats.append(m)
    return RealizedModule(G, mats, validate=False, dim=dim)


def full_invariants_map(phi: PermModuleHom, M: RealizedModule) -> list[list]:
    dom = [invariants_basis(M, b.stabilizer) for b in phi.domain.blocks]
    cod = [invariants_basis(M, b.stabilizer) for b in phi.codomain.blocks]
    return _pullback_matrix(phi, M, dom, cod)


# -- symbolic expressions --------------------------------------------------


@dataclass(frozen=True)
class ExpressionBlock:
    """``prefactor · (π_{H_i})_* ∘ [Σ m_t t_*] ∘ (π_{H'_j})^*``."""

    target: int
    source: int
    prefactor: Fraction
    element: tuple[tuple[int, int], ...]  # sorted (group element index, coefficient)

    def element_dict(self) -> dict[int, int]:
        return dict(self.element)


@dataclass(frozen=True)
class IsogenyExpression:
    group: Group
    target_subgroups: tuple[Subgroup, ...]
    source_subgroups: tuple[Subgroup, ...]
    blocks: tuple[ExpressionBlock, ...]
    simplified: bool = False
    metadata: Mapping[str, str] = field(default_factory=dict, compare=False)

    def block(self, i: int, j: int) -> ExpressionBlock | None:
        for b in self.blocks:
            if b.target == i and b.source == j:
                return b
        return None

    def normal_form(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        """``{(i, j): {double-coset mask: coefficient}}`` after simplification."""
        e = self if self.simplified else simplify_expression(self)
        out = {}
        G = self.group
        for b in e.blocks:
            Hi, Hj = e.target_subgroups[b.target], e.source_subgroups[b.source]
            terms = {}
            for t, c in b.element:
                terms[_double_coset_mask(G, Hi, t, Hj)] = b.prefactor * c
            out[(b.target, b.source)] = terms
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, IsogenyExpression):
            return NotImplemented
        return (
            self.group == other.group
            and [H.mask for H in self.target_subgroups] == [H.mask for H in other.target_subgroups]
            and [H.mask for H in self.source_subgroups] == [H.mask for H in other.source_subgroups]
            and self.simplified == other.simplified
            and self.blocks == other.blocks
        )

    def __hash__(self) -> int:
        return hash(self.blocks)

    def to_json(self, names: Mapping[str, Perm] | None = None) -> dict:
        G = self.group
        blocks = []
        for b in self.blocks:
            blocks.append(
                {
                    "target": b.target,
                    "source": b.source,
                    "prefactor": {"num": b.prefactor.numerator, "den": b.prefactor.denominator},
                    "element": {str(G.elements[t]): c for t, c in b.element},
                }
            )
        return {
            "simplified": self.simplified,
            "target_subgroups": [[str(p) for p in _gens(H)] for H in self.target_subgroups],
            "source_subgroups": [[str(p) for p in _gens(H)] for H in self.source_subgroups],
            "blocks": blocks,
            "metadata": dict(self.metadata),
        }


def _gens(H: Subgroup) -> list[Perm]:
    from .gset import _generators_of

    return _generators_of(H)


def _double_coset_mask(G: Group, H: Subgroup, g: int, H2: Subgroup) -> int:
    mask = 0
    for h in H.indices:
        hg = G.mul(h, g)
        for k in H2.indices:
            mask |= 1 << G.mul(hg, k)
    return mask


_DIVISIBILITY_NOTE = "|H_i| f_phi equals the unnormalized composite (π_H)_* ∘ φ̃ ∘ π_{H'}^*"


def f_phi_expression(phi: PermModuleHom) -> IsogenyExpression:
    """Raw block expression of ``f_phi`` (unions of double-coset sums)."""
    S, S2 = phi.domain, phi.codomain
    G = S.group
    blocks = []
    for i, blk in enumerate(S.blocks):
        Hi = blk.stabilizer
        col = phi.column(blk.base)
        for j, blk2 in enumerate(S2.blocks):
            Hj = blk2.stabilizer
            element: dict[int, int] = {}
            for orbit in stabilizer_orbits(S2, Hi, blk2.points):
                vals = {col[y] for y in orbit}
                if len(vals) != 1:
                    raise NotInBasisSpan("block is not constant on a double coset", target=i, source=j)
                c = vals.pop()
                if not c:
                    continue
                # points y = t.y_j in the orbit correspond to t in the double coset
                t0 = _carrier(S2, blk2, orbit[0])
                for t in range(G.order):
                    if _double_coset_mask(G, Hi, t0, Hj) >> t & 1:
                        element[t] = element.get(t, 0) + c
            if element:
                pref = Fraction(1, Hi.order * Hj.order)
                blocks.append(ExpressionBlock(i, j, pref, tuple(sorted(element.items()))))
    return IsogenyExpression(
        G,
        tuple(b.stabilizer for b in S.blocks),
        tuple(b.stabilizer for b in S2.blocks),
        tuple(blocks),
        simplified=False,
        metadata={"divisibility": _DIVISIBILITY_NOTE},
    )


def _carrier(S2, blk2, y: int) -> int:
    """An element carrying the base point of ``blk2`` to ``y``."""
    return S2.point_reps[y]


def _rational_gcd(values: Sequence[Fraction]) -> Fraction:
    num = 0
    den = 1
    for v in values:
        num = gcd(num, v.numerator)
        den = lcm(den, v.denominator)
    return Fraction(num, den)


def simplify_expression(e: IsogenyExpression) -> IsogenyExpression:
    """Collapse each double coset to its minimal element and extract a prefactor."""
    if e.simplified:
        return e
    G = e.group
    blocks = []
    for b in e.blocks:
        Hi, Hj = e.target_subgroups[b.target], e.source_subgroups[b.source]
        mass: dict[int, Fraction] = {}
        rep_of: dict[int, int] = {}
        for t, c in b.element:
            mask = _double_coset_mask(G, Hi, t, Hj)
            if mask not in rep_of:
                rep_of[mask] = (mask & -mask).bit_length() - 1
            r = rep_of[mask]
            mass[r] = mass.get(r, Fraction(0)) + b.prefactor * c
        mass = {r: q for r, q in mass.items() if q}
        if not mass:
            continue
        pref = _rational_gcd(list(mass.values()))
        lead = mass[min(mass)]
        if lead < 0:
            pref = -pref
        element = tuple(sorted((r, int(q / pref)) for r, q in mass.items()))
        blocks.append(ExpressionBlock(b.target, b.source, pref, element))
    return IsogenyExpression(G, e.target_subgroups, e.source_subgroups, tuple(blocks), True, e.metadata)


def dual_expression(e: IsogenyExpression) -> IsogenyExpression:
    """Swap source and target, invert group elements and swap π_* with π^*."""
    G = e.group
    blocks = []
    for b in e.blocks:
        inv = {}
        for t, c in b.element:
            inv[G.inv(t)] = inv.get(G.inv(t), 0) + c
        blocks.append(ExpressionBlock(b.source, b.target, b.prefactor, tuple(sorted(inv.items()))))
    out = IsogenyExpression(G, e.source_subgroups, e.target_subgroups, tuple(sorted(blocks, key=_block_order)), False, e.metadata)
    return simplify_expression(out) if e.simplified else out


def _block_order(b: ExpressionBlock):
    return (b.target, b.source)


def relation_hom(S: GSet, T: GSet, seed: int = 0, attempts: int = 64) -> PermModuleHom | None:
    """An integral G-hom ``Z[S] -> Z[T]`` that is invertible over Q, or None.

    Tries random small combinations of the double-coset basis; for a Brauer
    relation such homs form a dense open set, so few attempts are needed.
    """
    if S.size != T.size:
        return None
    basis = [h for _, h in hom_space_basis(S, T)]
    if not basis:
        return None
    rng = random.Random(seed)
    for _ in range(attempts):
        phi = zero_hom(S, T)
        for h in basis:
            phi = phi + h * rng.randint(-3, 3)
        if is_invertible([list(r) for r in phi.matrix]):
            return phi
    return None


# -- pretty printing -----------------------------------------------------


class Namer:
    """Shortest words in user-named elements and names for subgroups."""

    def __init__(self, G: Group, elements: Mapping[str, Perm] | None = None, subgroups: Mapping[str, Subgroup] | None = None):
        self.G = G
        self.elements = dict(elements or {})
        self.subgroups = dict(subgroups or {})
        self._words = self._shortest_words()

    def _shortest_words(self) -> dict[int, tuple[tuple[str, int], ...]]:
        G = self.G
        letters = []
        for name in sorted(self.elements):
            i = G.index(self.elements[name])
            letters.append(((name, 1), i))
            letters.append(((name, -1), G.inv(i)))
        words: dict[int, tuple] = {0: ()}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for letter, i in letters:
                y = G.mul(x, i)
                if y not in words:
                    words[y] = words[x] + (letter,)
                    queue.append(y)
        return words

    def word(self, t: int) -> tuple[tuple[str, int], ...] | None:
        return self._words.get(t)

    def element(self, t: int) -> str:
        w = self.word(t)
        if w is None:
            return str(self.G.elements[t])
        if not w:
            return "e"
        out = []
        for name, exp in _collapse(w):
            out.append(name if exp == 1 else f"{name}^{exp}")
        return "".join(out)

    def subgroup(self, H: Subgroup) -> str:
        for name in sorted(self.subgroups):
            if self.subgroups[name].mask == H.mask:
                return name
        if H.order == 1:
            return "e"
        gens = ", ".join(self.element(self.G.index(p)) for p in _gens(H))
        return "<" + gens + ">"

    def pushforward(self, D_elements: Sequence[int]) -> str | None:
        """Display ``t_*`` for the best element of a double coset, None if trivial."""
        if 0 in D_elements:
            return None
        best = min(D_elements, key=lambda t: (len(self.word(t) or ((None, 0),) * 99), t))
        w = self.word(best)
        if w is not None and len(w) == 1 and w[0][1] == -1:
            return f"{w[0][0]}^*"
        return f"{self.element(best)}_*" if w is not None and len(w) == 1 else f"({self.element(best)})_*"


def _collapse(word):
    out: list[list] = []
    for name, exp in word:
        if out and out[-1][0] == name:
            out[-1][1] += exp
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([name, exp])
    return [(n, e) for n, e in out]


def _fmt_coeff(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"({q})"


def format_block(e: IsogenyExpression, b: ExpressionBlock, namer: Namer) -> str:
    G = e.group
    Hi, Hj = e.target_subgroups[b.target], e.source_subgroups[b.source]
    terms = []
    for t, c in b.element:
        q = b.prefactor * c
        if e.simplified:
            mask = _double_coset_mask(G, Hi, t, Hj)
            members = [x for x in range(G.order) if mask >> x & 1]
        else:
            members = [t]
        parts = []
        if Hi.order > 1:
            parts.append(f"(π_{namer.subgroup(Hi)})_*")
        push = namer.pushforward(members) if e.simplified else (None if t == 0 else f"({namer.element(t)})_*")
        if push:
            parts.append(push)
        if Hj.order > 1:
            parts.append(f"π_{namer.subgroup(Hj)}^*")
        if not parts or (e.simplified and Hi.mask == Hj.mask and push is None and Hi.order > 1):
            # (π_H)_* ∘ π_H^* = |H|
            q = q * Hi.order
            body = "id"
        else:
            body = " ∘ ".join(parts)
        if q == 1:
            terms.append(body)
        elif q == -1:
            terms.append("-" + body)
        else:
            terms.append(f"{_fmt_coeff(q)}·{body}")
    return " + ".join(terms).replace("+ -", "- ")


def format_expression(e: IsogenyExpression, namer: Namer | None = None) -> str:
    namer = namer or Namer(e.group)
    lines = []
    for b in e.blocks:
        tgt = namer.subgroup(e.target_subgroups[b.target])
        src = namer.subgroup(e.source_subgroups[b.source])
        lines.append(f"[{b.target} <- {b.source}] X/{tgt} <- X/{src}: {format_block(e, b, namer)}")
    return "\n".join(lines) if lines else "0"


def expression_json(e: IsogenyExpression, namer: Namer | None = None) -> str:
    data = e.to_json()
    if namer is not None:
        data["display"] = [format_block(e, b, namer) for b in e.blocks]
    return json.dumps(data, sort_keys=True)


__all__ = [
    "BlockReport", "ExpressionBlock", "IsogenyExpression", "IsogenyVerdict", "Namer",
    "dual_expression", "f_phi_expression", "format_block", "format_expression",
    "full_invariants_map", "invariants_basis", "isogeny_criterion", "isotypic_basis",
    "isotypic_component", "module_with_character", "regular_module", "relation_hom",
    "simplify_expression", "RealizedModule",
]
