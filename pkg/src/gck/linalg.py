"""Exact dense linear algebra over ``Fraction`` and :class:`Cyclotomic` scalars.

Matrices are lists of rows.  Rank uses fraction-free Bareiss elimination;
bases of column spaces and null spaces come from Gauss-Jordan reduction.
A column-space basis is returned in reduced column-echelon form, so the
coordinates of a vector in that basis are simply its entries at the pivot
rows (see :class:`SubspaceBasis`).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .cyclotomic import Cyclotomic, as_scalar

Matrix = list[list]


def norm(x):
    if isinstance(x, int):
        return Fraction(x)
    return as_scalar(x)


def is_zero(x) -> bool:
    return x == 0


def mat(rows: Sequence[Sequence]) -> Matrix:
    return [[norm(x) for x in r] for r in rows]


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def transpose(m: Matrix, ncols: int | None = None) -> Matrix:
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [Fraction(0)] * ncols
        for k in range(inner):
            x = row[k]
            if x == 0:
                continue
            bk = b[k]
            for j in range(ncols):
                y = bk[j]
                if y != 0:
                    acc[j] = acc[j] + x * y
        out.append([as_scalar(v) for v in acc])
    return out


def matvec(a: Matrix, v: Sequence) -> list:
    out = []
    for row in a:
        acc = Fraction(0)
        for x, y in zip(row, v):
            if x != 0 and y != 0:
                acc = acc + x * y
        out.append(as_scalar(acc))
    return out


def rank(m: Matrix) -> int:
    """Rank by Bareiss fraction-free elimination."""
    if not m or not m[0]:
        return 0
    a = [[norm(x) for x in r] for r in m]
    rows, cols = len(a), len(a[0])
    prev = Fraction(1)
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, rows):
            x = a[i][c]
            for j in range(c + 1, cols):
                a[i][j] = as_scalar((p * a[i][j] - x * a[r][j]) / prev)
            a[i][c] = Fraction(0)
        prev = p
        r += 1
        if r == rows:
            break
    return r


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot columns (Gauss-Jordan)."""
    a = [[norm(x) for x in r] for r in m]
    if not a:
        return a, []
    rows, cols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [as_scalar(x * inv) if x != 0 else x for x in a[r]]
        for i in range(rows):
            if i != r:
                x = a[i][c]
                if x != 0:
                    ar = a[r]
                    a[i] = [as_scalar(y - x * z) if z != 0 else y for y, z in zip(a[i], ar)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def nullspace(m: Matrix, ncols: int | None = None) -> list[list]:
    """Basis vectors of the right kernel ``{v : m v = 0}``."""
    n = len(m[0]) if m else (ncols or 0)
    if not m:
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    red, pivots = rref(m)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            if row[f] != 0:
                v[pc] = as_scalar(-row[f])
        basis.append(v)
    return basis


class SubspaceBasis:
    """Basis of a subspace of ``K^n`` in reduced column-echelon form.

    ``vectors[k]`` has a 1 at ``pivots[k]`` and 0 at every other pivot row,
    so a vector ``v`` of the subspace has coordinates ``[v[p] for p in pivots]``.
    """

    def __init__(self, ambient: int, vectors: list[list], pivots: list[int]):
        self.ambient = ambient
        self.vectors = vectors
        self.pivots = pivots

    @classmethod
    def span(cls, ambient: int, vectors: Sequence[Sequence]) -> SubspaceBasis:
        vecs = [[norm(x) for x in v] for v in vectors]
        if not vecs:
            return cls(ambient, [], [])
        red, pivots = rref(vecs)
        return cls(ambient, red[: len(pivots)], pivots)

    @classmethod
    def kernel(cls, ambient: int, rows: Matrix) -> SubspaceBasis:
        return cls.span(ambient, nullspace(rows, ambient))

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def coordinates(self, v: Sequence, check: bool = False) -> list:
        coords = [norm(v[p]) for p in self.pivots]
        if check:
            recon = self.combine(coords)
            if any(norm(a) != b for a, b in zip(v, recon)):
                raise ValueError("vector is not in the subspace")
        return coords

    def combine(self, coords: Sequence) -> list:
        out = [Fraction(0)] * self.ambient
        for c, vec in zip(coords, self.vectors):
            if c != 0:
                for i, x in enumerate(vec):
                    if x != 0:
                        out[i] = out[i] + c * x
        return [as_scalar(x) for x in out]

    def as_columns(self) -> Matrix:
        """The ``ambient x dim`` matrix whose columns are the basis vectors."""
        return transpose(self.vectors, self.ambient) if self.vectors else [[] for _ in range(self.ambient)]


def column_space(m: Matrix) -> SubspaceBasis:
    n = len(m)
    return SubspaceBasis.span(n, transpose(m) if m else [])


def is_invertible(m: Matrix) -> bool:
    return len(m) == (len(m[0]) if m else 0) and rank(m) == len(m)


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def scalar_str(x) -> str:
    x = as_scalar(x)
    return str(x)


__all__ = [
    "Cyclotomic", "SubspaceBasis", "column_space", "identity", "inverse", "is_invertible",
    "mat", "matmul", "matvec", "norm", "nullspace", "rank", "rref", "transpose", "zeros",
]
