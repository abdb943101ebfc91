"""Permutation modules and their G-homomorphisms.

A hom ``phi: Z[S] -> Z[S']`` is an integer matrix with rows indexed by the
points of ``S'`` and columns by the points of ``S``: column ``x`` lists the
coefficients of ``phi(x)``.  Equivariance reads ``M[g.y, g.x] = M[y, x]``.

For coset spaces the double coset ``D = H g H'`` gives the basis hom
``phi_D(H) = sum of the cosets tH' contained in D``, whose matrix entry for
cosets ``aH`` (column) and ``bH'`` (row) is ``[a^-1 b in D]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import GroupMismatch, NotASubgroup, NotEquivariant, NotInBasisSpan, ShapeMismatch
from .group_core import DoubleCoset, Group, Subgroup, double_cosets
from .gset import GSet, gset_from_stabilizers
from .linalg import SubspaceBasis

IntMatrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class PermModuleHom:
    domain: GSet
    codomain: GSet
    matrix: IntMatrix
    double_coset: DoubleCoset | None = field(default=None, compare=False)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.codomain.size, self.domain.size)

    def column(self, x: int) -> tuple[int, ...]:
        return tuple(row[x] for row in self.matrix)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PermModuleHom)
            and self.matrix == other.matrix
            and self.domain == other.domain
            and self.codomain == other.codomain
        )

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __add__(self, other: PermModuleHom) -> PermModuleHom:
        _same_spaces(self, other)
        m = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix))
        return PermModuleHom(self.domain, self.codomain, m)

    def __mul__(self, k: int) -> PermModuleHom:
        return PermModuleHom(self.domain, self.codomain, tuple(tuple(k * a for a in r) for r in self.matrix))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.matrix)

    def to_json(self) -> dict:
        return {
            "domain": self.domain.to_json(),
            "codomain": self.codomain.to_json(),
            "matrix": [list(r) for r in self.matrix],
        }


def _same_spaces(a: PermModuleHom, b: PermModuleHom) -> None:
    if a.domain != b.domain or a.codomain != b.codomain:
        raise ShapeMismatch("homs have different domains or codomains")


def _as_int_matrix(matrix: Sequence[Sequence], rows: int, cols: int) -> IntMatrix:
    if len(matrix) != rows or any(len(r) != cols for r in matrix):
        got = (len(matrix), len(matrix[0]) if matrix else 0)
        raise ShapeMismatch(f"matrix must be {rows}x{cols}, got {got[0]}x{got[1]}", expected=[rows, cols], got=list(got))
    out = []
    for r in matrix:
        row = []
        for a in r:
            q = Fraction(a)
            if q.denominator != 1:
                raise ShapeMismatch(f"non-integral matrix entry {a}")
            row.append(int(q))
        out.append(tuple(row))
    return tuple(out)


def equivariance_defect(S: GSet, S2: GSet, matrix: IntMatrix) -> dict | None:
    """First witness ``{generator, basis vector}`` where equivariance fails."""
    G = S.group
    for k, g in enumerate(G.generators):
        dom = S.generator_images[k]
        cod = S2.generator_images[k]
        for x in range(S.size):
            gx = dom[x]
            for y in range(S2.size):
                if matrix[cod[y]][gx] != matrix[y][x]:
                    return {"generator": str(g), "basis_vector": x, "row": y}
    return None


def hom_from_matrix(S: GSet, S2: GSet, matrix: Sequence[Sequence]) -> PermModuleHom:
    if S.group != S2.group:
        raise GroupMismatch("domain and codomain are G-sets for different groups")
    m = _as_int_matrix(matrix, S2.size, S.size)
    bad = equivariance_defect(S, S2, m)
    if bad is not None:
        raise NotEquivariant(
            f"matrix is not equivariant: generator {bad['generator']} on basis vector {bad['basis_vector']}",
            **bad,
        )
    return PermModuleHom(S, S2, m)


def hom_from_images(S: GSet, S2: GSet, images: Sequence[Mapping[int, int] | Sequence[int]]) -> PermModuleHom:
    """Extend the images of the block base points by equivariance.

    ``images[i]`` is the image of the base point of block ``i`` of ``S``,
    either a full coefficient vector on ``S2`` or a sparse ``{point: coeff}``.
    """
    if S.group != S2.group:
        raise GroupMismatch("domain and codomain are G-sets for different groups")
    if len(images) != len(S.blocks):
        raise ShapeMismatch(f"expected {len(S.blocks)} block images, got {len(images)}")
    cols: list[list[int] | None] = [None] * S.size
    for blk, img in zip(S.blocks, images):
        vec = [0] * S2.size
        if isinstance(img, Mapping):
            for y, c in img.items():
                vec[int(y)] += int(c)
        else:
            if len(img) != S2.size:
                raise ShapeMismatch(f"image vector must have length {S2.size}")
            vec = [int(c) for c in img]
        for h in blk.stabilizer.indices:
            im = S2.element_images(h)
            moved = [0] * S2.size
            for y, c in enumerate(vec):
                moved[im[y]] = c
            if moved != vec:
                raise NotEquivariant(
                    f"image of block base point is not fixed by its stabilizer element {S.group.elements[h]}",
                    generator=str(S.group.elements[h]), basis_vector=blk.base,
                )
        for x in blk.points:
            g = S.point_reps[x]
            im = S2.element_images(g)
            col = [0] * S2.size
            for y, c in enumerate(vec):
                col[im[y]] = c
            cols[x] = col
    m = tuple(tuple(cols[x][y] for x in range(S.size)) for y in range(S2.size))  # type: ignore[index]
    return hom_from_matrix(S, S2, m)


def hom_basis(G: Group, H: Subgroup, H2: Subgroup) -> list[PermModuleHom]:
    """One basis hom ``Z[G/H] -> Z[G/H2]`` per double coset ``H g H2``."""
    for K in (H, H2):
        if K.parent is not G and K.parent != G:
            raise NotASubgroup("subgroup of a different group")
    S = gset_from_stabilizers(G, [H])
    S2 = gset_from_stabilizers(G, [H2])
    return [_double_coset_hom(S, S2, D) for D in double_cosets(G, H, H2)]


def _double_coset_hom(S: GSet, S2: GSet, D: DoubleCoset) -> PermModuleHom:
    G = S.group
    reps = S.point_reps
    reps2 = S2.point_reps
    m = tuple(
        tuple(int(G.mul(G.inv(reps[a]), reps2[b]) in D) for a in range(S.size))
        for b in range(S2.size)
    )
    return PermModuleHom(S, S2, m, double_coset=D)


def hom_space_basis(S: GSet, S2: GSet) -> list[tuple[tuple[int, int, tuple[int, ...]], PermModuleHom]]:
    """Basis of ``Hom_G(Z[S], Z[S2])`` indexed by ``(i, j, orbit)``.

    For domain block ``i`` and codomain block ``j`` each orbit of the
    stabilizer of the base point of ``i`` on block ``j`` gives the hom sending
    that base point to the sum of the orbit.
    """
    if S.group != S2.group:
        raise GroupMismatch("G-sets for different groups")
    out = []
    for i, blk in enumerate(S.blocks):
        for j, blk2 in enumerate(S2.blocks):
            for orbit in stabilizer_orbits(S2, blk.stabilizer, blk2.points):
                images = [dict() for _ in S.blocks]
                images[i] = {y: 1 for y in orbit}
                out.append(((i, j, orbit), hom_from_images(S, S2, images)))
    return out


def stabilizer_orbits(S: GSet, K: Subgroup, points: Sequence[int]) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    tables = [S.element_images(k) for k in K.indices]
    orbits = []
    for x in points:
        if x in seen:
            continue
        orb = sorted({t[x] for t in tables})
        seen.update(orb)
        orbits.append(tuple(orb))
    return orbits


def hom_coordinates(phi: PermModuleHom) -> dict[tuple[int, int, tuple[int, ...]], int]:
    """Coordinates of ``phi`` against :func:`hom_space_basis` (nonzero ones)."""
    S, S2 = phi.domain, phi.codomain
    bad = equivariance_defect(S, S2, phi.matrix)
    if bad is not None:
        raise NotInBasisSpan("matrix is not G-equivariant, so it has no double-coset coordinates", **bad)
    coords: dict[tuple[int, int, tuple[int, ...]], int] = {}
    for i, blk in enumerate(S.blocks):
        col = phi.column(blk.base)
        for j, blk2 in enumerate(S2.blocks):
            for orbit in stabilizer_orbits(S2, blk.stabilizer, blk2.points):
                vals = {col[y] for y in orbit}
                if len(vals) != 1:
                    raise NotInBasisSpan("hom is not constant on a stabilizer orbit", block=i, orbit=list(orbit))
                c = vals.pop()
                if c:
                    coords[(i, j, orbit)] = c
    return coords


def dual_hom(phi: PermModuleHom) -> PermModuleHom:
    m = tuple(zip(*phi.matrix)) if phi.matrix else tuple(() for _ in range(phi.domain.size))
    D = phi.double_coset
    dual_dc = None
    if D is not None:
        dual_dc = _inverse_double_coset(D)
    return PermModuleHom(phi.codomain, phi.domain, tuple(tuple(r) for r in m), double_coset=dual_dc)


def _inverse_double_coset(D: DoubleCoset) -> DoubleCoset:
    G = D.group
    mask = 0
    for t in D.indices:
        mask |= 1 << G.inv(t)
    rep = min(G.inv(t) for t in D.indices)
    return DoubleCoset(rep, mask, D.right, D.left)


def compose(phi2: PermModuleHom, phi: PermModuleHom) -> PermModuleHom:
    """``phi2 ∘ phi``; requires ``codomain(phi) = domain(phi2)``."""
    if phi.codomain != phi2.domain:
        raise ShapeMismatch(
            "codomain of the first hom differs from the domain of the second",
            inner=[phi.codomain.size, phi2.domain.size],
        )
    a, b = phi2.matrix, phi.matrix
    n_mid = phi.codomain.size
    m = tuple(
        tuple(sum(a[r][k] * b[k][c] for k in range(n_mid)) for c in range(phi.domain.size))
        for r in range(phi2.codomain.size)
    )
    return PermModuleHom(phi.domain, phi2.codomain, m)


def identity_hom(S: GSet) -> PermModuleHom:
    return PermModuleHom(S, S, tuple(tuple(int(i == j) for j in range(S.size)) for i in range(S.size)))


def zero_hom(S: GSet, S2: GSet) -> PermModuleHom:
    return PermModuleHom(S, S2, tuple((0,) * S.size for _ in range(S2.size)))


def hom_from_coefficients(G: Group, H: Subgroup, H2: Subgroup, coefficients: Sequence[int]) -> PermModuleHom:
    basis = hom_basis(G, H, H2)
    if len(coefficients) != len(basis):
        raise ShapeMismatch(f"expected {len(basis)} double-coset coefficients, got {len(coefficients)}")
    acc = zero_hom(basis[0].domain, basis[0].codomain)
    for c, b in zip(coefficients, basis):
        if c:
            acc = acc + b * int(c)
    return acc


# -- equivariance system (independent dimension oracle) --------------------

_ORACLE_PRIME = 1_000_003


def equivariance_system(S: GSet, S2: GSet) -> np.ndarray:
    """Rows ``X[g.y, g.x] - X[y, x]`` over generators g and all pairs (x, y)."""
    n, n2 = S.size, S2.size
    rows = []
    for k in range(len(S.group.generators)):
        dom, cod = S.generator_images[k], S2.generator_images[k]
        for x in range(n):
            for y in range(n2):
                a, b = cod[y] * n + dom[x], y * n + x
                if a != b:
                    r = np.zeros(n * n2, dtype=np.int64)
                    r[a] += 1
                    r[b] -= 1
                    rows.append(r)
    if not rows:
        return np.zeros((0, n * n2), dtype=np.int64)
    return np.array(rows)


def rank_mod_p(a: np.ndarray, p: int = _ORACLE_PRIME) -> int:
    a = a.copy() % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        r += 1
    return r


def equivariance_solution_dimension(S: GSet, S2: GSet) -> int:
    """``dim Hom_G(Q[S], Q[S2])`` as the nullity of the equivariance system.

    The system matrix has one +1 and one -1 per row (an incidence matrix), so
    its rank modulo a large prime equals its rank over Q.
    """
    a = equivariance_system(S, S2)
    return S.size * S2.size - (rank_mod_p(a) if a.size else 0)


# -- group-algebra helpers ---------------------------------------------------

GroupAlgebraElement = dict[int, int]


def ga_mul(G: Group, a: Mapping[int, int], b: Mapping[int, int]) -> GroupAlgebraElement:
    out: dict[int, int] = {}
    for x, cx in a.items():
        for y, cy in b.items():
            z = G.mul(x, y)
            out[z] = out.get(z, 0) + cx * cy
    return {k: v for k, v in out.items() if v}


def subgroup_sum(K: Subgroup) -> GroupAlgebraElement:
    """The norm element ``N_K = sum_{k in K} k``."""
    return {k: 1 for k in K.indices}


def double_coset_sum(D: DoubleCoset) -> GroupAlgebraElement:
    return {t: 1 for t in D.indices}


def transversal_sum(G: Group, H: Subgroup, K: Subgroup) -> list[int]:
    """Representatives of the left cosets ``hK`` inside ``H`` (``K ≤ H``)."""
    covered = 0
    reps = []
    for h in H.indices:
        if covered >> h & 1:
            continue
        reps.append(h)
        for k in K.indices:
            covered |= 1 << G.mul(h, k)
    return reps


def right_transversal(G: Group, H: Subgroup, K: Subgroup) -> list[int]:
    """Representatives of the right cosets ``Kh`` inside ``H`` (``K ≤ H``)."""
    covered = 0
    reps = []
    for h in H.indices:
        if covered >> h & 1:
            continue
        reps.append(h)
        for k in K.indices:
            covered |= 1 << G.mul(k, h)
    return reps


def coset_identity_sides(G: Group, H: Subgroup, g: int, H2: Subgroup) -> tuple[GroupAlgebraElement, GroupAlgebraElement, GroupAlgebraElement]:
    """Both sides and the middle of ``sum_u u g N_H2 = sum_{t in HgH2} t = sum_w N_H g w``.

    ``u`` runs over left cosets of ``H ∩ g H2 g^-1`` in ``H`` and ``w`` over
    right cosets of ``H2 ∩ g^-1 H g`` in ``H2``, so that the translates
    ``u g H2`` and ``H g w`` are distinct.
    """
    gi = G.inv(g)
    Hg = H.intersection(H2.conjugate(g))
    H2g = H2.intersection(H.conjugate(gi))
    left = {}
    for u in transversal_sum(G, H, Hg):
        left = _ga_add(left, ga_mul(G, {G.mul(u, g): 1}, subgroup_sum(H2)))
    right = {}
    for w in right_transversal(G, H2, H2g):
        right = _ga_add(right, ga_mul(G, subgroup_sum(H), {G.mul(g, w): 1}))
    mask = 0
    for h in H.indices:
        hg = G.mul(h, g)
        for k in H2.indices:
            mask |= 1 << G.mul(hg, k)
    middle = {t: 1 for t in range(G.order) if mask >> t & 1}
    return left, middle, right


def _ga_add(a: Mapping[int, int], b: Mapping[int, int]) -> GroupAlgebraElement:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


# -- induced map on invariants ---------------------------------------------


def induced_map_on_invariants(
    phi: PermModuleHom,
    M,
    domain_subgroups: Sequence[Subgroup] | None = None,
    codomain_subgroups: Sequence[Subgroup] | None = None,
) -> list[list]:
    """Matrix of ``phi^*: ⊕_j M^{H'_j} -> ⊕_i M^{H_i}`` sending f to f∘phi.

    A vector ``m_j ∈ M^{H'_j}`` stands for the hom ``Z[S'] -> M`` sending the
    base point of codomain block ``j`` to ``m_j``; its pull-back sends the
    base point of domain block ``i`` to ``sum_y phi[y, x_i] rep(y) m_{block(y)}``.
    Coordinates are taken in :func:`invariants_basis` of each block subgroup.
    """
    from .realized import invariants_basis

    S, S2 = phi.domain, phi.codomain
    if M.group != S.group:
        raise GroupMismatch("module and hom belong to different groups")
    dom_subs = list(domain_subgroups) if domain_subgroups is not None else [b.stabilizer for b in S.blocks]
    cod_subs = list(codomain_subgroups) if codomain_subgroups is not None else [b.stabilizer for b in S2.blocks]
    dom_bases = [invariants_basis(M, H) for H in dom_subs]
    cod_bases = [invariants_basis(M, H) for H in cod_subs]
    return _pullback_matrix(phi, M, dom_bases, cod_bases)


def _pullback_matrix(phi: PermModuleHom, M, dom_bases: Sequence[SubspaceBasis], cod_bases: Sequence[SubspaceBasis]) -> list[list]:
    S, S2 = phi.domain, phi.codomain
    nrows = sum(b.dim for b in dom_bases)
    ncols = sum(b.dim for b in cod_bases)
    out = [[Fraction(0)] * ncols for _ in range(nrows)]
    col0 = 0
    for j, (blk2, basis) in enumerate(zip(S2.blocks, cod_bases)):
        translated = _translates(S2, blk2, M, basis)
        for c in range(basis.dim):
            row0 = 0
            for i, (blk, dbasis) in enumerate(zip(S.blocks, dom_bases)):
                xi = blk.base
                acc = [Fraction(0)] * M.dim
                for y in blk2.points:
                    coef = phi.matrix[y][xi]
                    if coef:
                        v = translated[y][c]
                        for t, val in enumerate(v):
                            if val != 0:
                                acc[t] = acc[t] + coef * val
                coords = dbasis.coordinates(acc)
                for r, val in enumerate(coords):
                    out[row0 + r][col0 + c] = val
                row0 += dbasis.dim
        col0 += basis.dim
    return out


def _translates(S2: GSet, blk2, M, basis: SubspaceBasis) -> dict[int, list[list]]:
    """``rep(y) . v`` for every point y of the block and basis vector v."""
    G = S2.group
    out = {blk2.base: [list(v) for v in basis.vectors]}
    queue = [blk2.base]
    gens = G.generator_indices
    while queue:
        y = queue.pop(0)
        for k in range(len(gens)):
            z = S2.generator_images[k][y]
            if z not in out:
                out[z] = [M.act_generator(k, v) for v in out[y]]
                queue.append(z)
    return out


__all__ = [
    "PermModuleHom", "compose", "coset_identity_sides", "double_coset_sum", "dual_hom",
    "equivariance_solution_dimension", "ga_mul", "hom_basis", "hom_coordinates",
    "hom_from_coefficients", "hom_from_images", "hom_from_matrix", "hom_space_basis",
    "identity_hom", "induced_map_on_invariants", "subgroup_sum", "zero_hom",
]
