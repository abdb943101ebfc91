"""Concrete linear representations over cyclotomic scalars.

A :class:`RealizedModule` is given by one matrix per group generator acting
on column vectors.  Permutation modules keep the generator permutations as
well, which makes element actions and averaging cheap.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .chars import CharacterTable, ClassFunction, character_table, inner_product
from .cyclotomic import as_scalar, conj
from .errors import GroupMismatch, InvalidModule, NotASubgroup, NotIrreducible
from .group_core import Group, Subgroup
from .linalg import Matrix, SubspaceBasis, column_space, identity, matmul, matvec, transpose


class RealizedModule:
    def __init__(
        self,
        group: Group,
        generator_matrices: Sequence[Matrix],
        character: ClassFunction | None = None,
        validate: bool = True,
        permutations: Sequence[Sequence[int]] | None = None,
        dim: int | None = None,
    ):
        self.group = group
        self.generator_matrices = [[[as_scalar(x) if not isinstance(x, int) else Fraction(x) for x in row] for row in m] for m in generator_matrices]
        if len(self.generator_matrices) != len(group.generators):
            raise InvalidModule("one matrix per group generator is required")
        if dim is None:
            if not self.generator_matrices:
                raise InvalidModule("the dimension must be given for a group without generators")
            dim = len(self.generator_matrices[0])
        self.dim = dim
        self._perms = [tuple(p) for p in permutations] if permutations is not None else None
        self._element_cache: dict[int, Matrix] = {}
        self._perm_cache: dict[int, tuple[int, ...]] = {0: tuple(range(self.dim))}
        if validate:
            self._validate()
        self._declared = character
        if character is not None and validate and self.character() != character:
            raise InvalidModule("module character differs from the declared character")

    @classmethod
    def trivial_dimension(cls, group: Group, dim: int) -> RealizedModule:
        return cls(group, [identity(dim) for _ in group.generators], validate=False,
                   permutations=[tuple(range(dim)) for _ in group.generators], dim=dim)

    def _validate(self) -> None:
        for m in self.generator_matrices:
            if len(m) != self.dim or any(len(r) != self.dim for r in m):
                raise InvalidModule("generator matrices must be square of equal size")
        G = self.group
        gens = G.generator_indices
        # the matrix attached to each element along the Schreier tree must
        # respect every product s * x
        for x in G.bfs_order:
            mx = self.element_matrix(x)
            for k, s in enumerate(gens):
                if matmul(self.generator_matrices[k], mx) != self.element_matrix(G.mul(s, x)):
                    raise InvalidModule(
                        "generator matrices violate a group relation",
                        generator=str(G.elements[s]), element=str(G.elements[x]),
                    )

    @property
    def is_permutation_module(self) -> bool:
        return self._perms is not None

    def element_permutation(self, g: int) -> tuple[int, ...]:
        hit = self._perm_cache.get(g)
        if hit is not None:
            return hit
        parent, k = self.group.schreier_tree[g]
        base = self.element_permutation(parent)
        gen = self._perms[k]  # type: ignore[index]
        out = tuple(gen[x] for x in base)
        self._perm_cache[g] = out
        return out

    def element_matrix(self, g: int) -> Matrix:
        hit = self._element_cache.get(g)
        if hit is not None:
            return hit
        if g == 0:
            out = identity(self.dim)
        else:
            parent, k = self.group.schreier_tree[g]
            out = matmul(self.generator_matrices[k], self.element_matrix(parent))
        self._element_cache[g] = out
        return out

    def act(self, g: int, v: Sequence) -> list:
        if self._perms is not None:
            p = self.element_permutation(g)
            out = [Fraction(0)] * self.dim
            for i, x in enumerate(v):
                out[p[i]] = x
            return out
        return matvec(self.element_matrix(g), v)

    def act_generator(self, k: int, v: Sequence) -> list:
        if self._perms is not None:
            p = self._perms[k]
            out = [Fraction(0)] * self.dim
            for i, x in enumerate(v):
                out[p[i]] = x
            return out
        return matvec(self.generator_matrices[k], v)

    def character(self) -> ClassFunction:
        vals = []
        for cls in self.group.classes:
            g = cls[0]
            if self._perms is not None:
                p = self.element_permutation(g)
                vals.append(sum(1 for i, j in enumerate(p) if i == j))
            else:
                m = self.element_matrix(g)
                vals.append(sum((m[i][i] for i in range(self.dim)), Fraction(0)))
        return ClassFunction(self.group, vals)

    def restrict_to(self, basis: SubspaceBasis) -> RealizedModule:
        """The action on an invariant subspace, in the coordinates of ``basis``."""
        mats = []
        for k in range(len(self.group.generators)):
            cols = [basis.coordinates(self.act_generator(k, v)) for v in basis.vectors]
            mats.append(transpose(cols, basis.dim) if cols else [])
        if basis.dim == 0:
            mats = [[] for _ in self.group.generators]
        sub = RealizedModule(self.group, mats, validate=False, dim=basis.dim) if basis.dim else _zero_module(self.group)
        return sub


def _zero_module(G: Group) -> RealizedModule:
    m = RealizedModule.__new__(RealizedModule)
    m.group = G
    m.generator_matrices = [[] for _ in G.generators]
    m.dim = 0
    m._perms = [() for _ in G.generators]
    m._element_cache = {}
    m._perm_cache = {0: ()}
    m._declared = None
    return m


def regular_module(G: Group) -> RealizedModule:
    """``Q[G]`` with left translation; basis vector ``i`` is the element ``i``."""
    perms = [tuple(G.mul(s, x) for x in range(G.order)) for s in G.generator_indices]
    mats = []
    for p in perms:
        m = [[Fraction(0)] * G.order for _ in range(G.order)]
        for x, y in enumerate(p):
            m[y][x] = Fraction(1)
        mats.append(m)
    return RealizedModule(G, mats, validate=False, permutations=perms, dim=G.order)


def permutation_module(S) -> RealizedModule:
    """``Q[S]`` for a G-set ``S``."""
    perms = [tuple(im) for im in S.generator_images]
    mats = []
    for p in perms:
        m = [[Fraction(0)] * S.size for _ in range(S.size)]
        for x, y in enumerate(p):
            m[y][x] = Fraction(1)
        mats.append(m)
    return RealizedModule(S.group, mats, validate=False, permutations=perms, dim=S.size)


def _check_group(M: RealizedModule, G: Group) -> None:
    if M.group is not G and M.group != G:
        raise GroupMismatch("module and subgroup live on different groups")


def invariants_basis(M: RealizedModule, H: Subgroup) -> SubspaceBasis:
    """Basis of the fixed space ``M^H`` (reduced column-echelon form)."""
    _check_group(M, H.parent)
    if H.parent is not M.group and H.parent != M.group:
        raise NotASubgroup("subgroup of a different group")
    from .gset import subgroup_generators

    gens = subgroup_generators(H)
    if M.is_permutation_module:
        # fixed vectors are constant on H-orbits
        orbit = [-1] * M.dim
        reps = []
        perms = [M.element_permutation(h) for h in gens]
        for start in range(M.dim):
            if orbit[start] >= 0:
                continue
            c = len(reps)
            reps.append(start)
            orbit[start] = c
            stack = [start]
            while stack:
                x = stack.pop()
                for p in perms:
                    y = p[x]
                    if orbit[y] < 0:
                        orbit[y] = c
                        stack.append(y)
        vecs = [[Fraction(int(orbit[i] == c)) for i in range(M.dim)] for c in range(len(reps))]
        return SubspaceBasis.span(M.dim, vecs)
    rows: Matrix = []
    for h in gens:
        m = M.element_matrix(h)
        for i in range(M.dim):
            rows.append([m[i][j] - (1 if i == j else 0) for j in range(M.dim)])
    return SubspaceBasis.kernel(M.dim, rows)


def averaging_operator(M: RealizedModule, H: Subgroup) -> Matrix:
    """``(1/|H|) sum_{h in H} M(h)`` as a dense matrix."""
    acc = [[Fraction(0)] * M.dim for _ in range(M.dim)]
    for h in H.indices:
        m = M.element_matrix(h)
        for i in range(M.dim):
            for j in range(M.dim):
                if m[i][j] != 0:
                    acc[i][j] = acc[i][j] + m[i][j]
    return [[as_scalar(x / H.order) for x in row] for row in acc]


def central_idempotent_coefficients(rho: ClassFunction) -> list:
    """Coefficients ``c_g = (dim rho / |G|) conj(rho(g))`` of ``e_rho``."""
    G = rho.group
    d = rho.degree
    return [as_scalar(d * conj(rho(g)) / G.order) for g in range(G.order)]


def _require_irreducible(rho: ClassFunction, table: CharacterTable) -> None:
    try:
        table.index(rho)
    except ValueError:
        raise NotIrreducible("class function is not an irreducible character", values=[str(v) for v in rho.values]) from None


def isotypic_basis(M: RealizedModule, rho: ClassFunction) -> SubspaceBasis:
    """Basis of ``e_rho M``."""
    G = M.group
    table = character_table(G)
    _require_irreducible(rho, table)
    coeffs = central_idempotent_coefficients(rho)
    support = [g for g, c in enumerate(coeffs) if c != 0]
    images = []
    for j in range(M.dim):
        v = [Fraction(int(i == j)) for i in range(M.dim)]
        acc = [Fraction(0)] * M.dim
        for g in support:
            w = M.act(g, v)
            c = coeffs[g]
            for i, x in enumerate(w):
                if x != 0:
                    acc[i] = acc[i] + c * x
        images.append([as_scalar(x) for x in acc])
    return SubspaceBasis.span(M.dim, images)


def isotypic_component(M: RealizedModule, rho: ClassFunction) -> RealizedModule:
    """The ``rho``-isotypic part of ``M``, realized on a basis of ``e_rho M``."""
    basis = isotypic_basis(M, rho)
    sub = M.restrict_to(basis)
    sub.ambient_basis = basis  # type: ignore[attr-defined]
    return sub


def idempotent_matrix(M: RealizedModule, rho: ClassFunction) -> Matrix:
    coeffs = central_idempotent_coefficients(rho)
    acc = [[Fraction(0)] * M.dim for _ in range(M.dim)]
    for g, c in enumerate(coeffs):
        if c == 0:
            continue
        m = M.element_matrix(g)
        for i in range(M.dim):
            for j in range(M.dim):
                if m[i][j] != 0:
                    acc[i][j] = acc[i][j] + c * m[i][j]
    return [[as_scalar(x) for x in row] for row in acc]


def multiplicity_in(M: RealizedModule, rho: ClassFunction):
    return inner_product(M.character(), rho)


__all__ = [
    "RealizedModule", "averaging_operator", "central_idempotent_coefficients", "column_space",
    "idempotent_matrix", "invariants_basis", "isotypic_basis", "isotypic_component",
    "multiplicity_in", "permutation_module", "regular_module",
]
