"""Character tables, class functions and Brauer-relation search.

Character tables are computed with the Burnside-Dixon method: the
class-multiplication matrices are simultaneously diagonalized over a prime
field ``F_p`` with ``p = 1 (mod exp G)`` and ``p > 2 sqrt|G|``, and each
character value is lifted back to ``Q(zeta_e)`` from the eigenvalue
multiplicities of the corresponding element.  Every table is checked for
exact row orthogonality before it is returned.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import TYPE_CHECKING, Iterator, Sequence

from .cyclotomic import Cyclotomic, as_scalar, conj
from .errors import GroupMismatch, NotASubgroup, NotVirtualCharacter, OrderCapExceeded
from .group_core import DEFAULT_ORDER_CAP, Group, Subgroup, subgroups_up_to_conjugacy

if TYPE_CHECKING:
    from .gset import GSet


# -- class functions -------------------------------------------------------


class ClassFunction:
    """Function on the conjugacy classes of ``group`` (class order of ``group.classes``)."""

    __slots__ = ("group", "values")

    def __init__(self, group: Group, values: Sequence):
        if len(values) != len(group.classes):
            raise ValueError(f"expected {len(group.classes)} class values, got {len(values)}")
        self.group = group
        self.values = tuple(as_scalar(v) if isinstance(v, Cyclotomic) else Fraction(v) for v in values)

    def __call__(self, element: int) -> Fraction | Cyclotomic:
        return self.values[self.group.class_of[element]]

    @property
    def degree(self) -> Fraction | Cyclotomic:
        return self.values[0]

    def _check(self, other: ClassFunction) -> None:
        if other.group is not self.group and other.group != self.group:
            raise GroupMismatch("class functions live on different groups")

    def __add__(self, other: ClassFunction) -> ClassFunction:
        self._check(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: ClassFunction) -> ClassFunction:
        self._check(other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self) -> ClassFunction:
        return ClassFunction(self.group, [-a for a in self.values])

    def __mul__(self, k) -> ClassFunction:
        if isinstance(k, ClassFunction):
            self._check(k)
            return ClassFunction(self.group, [a * b for a, b in zip(self.values, k.values)])
        return ClassFunction(self.group, [a * k for a in self.values])

    __rmul__ = __mul__

    def conjugate(self) -> ClassFunction:
        return ClassFunction(self.group, [conj(v) for v in self.values])

    def is_integer_valued(self) -> bool:
        return all(isinstance(v, Fraction) and v.denominator == 1 for v in self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.group == other.group and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return "ClassFunction(" + ", ".join(map(str, self.values)) + ")"

    @classmethod
    def zero(cls, G: Group) -> ClassFunction:
        return cls(G, [0] * len(G.classes))

    @classmethod
    def trivial(cls, G: Group) -> ClassFunction:
        return cls(G, [1] * len(G.classes))


def inner_product(chi: ClassFunction, psi: ClassFunction) -> Fraction | Cyclotomic:
    chi._check(psi)
    G = chi.group
    total = Fraction(0)
    for cls, a, b in zip(G.classes, chi.values, psi.values):
        if a != 0 and b != 0:
            total = total + len(cls) * a * conj(b)
    return as_scalar(total / G.order) if isinstance(total, Cyclotomic) else total / G.order


def induce_trivial(H: Subgroup, G: Group) -> ClassFunction:
    """Permutation character of ``G`` on ``G/H``."""
    if H.parent is not G and H.parent != G:
        raise NotASubgroup("subgroup belongs to a different group")
    counts = [0] * len(G.classes)
    for h in H.indices:
        counts[G.class_of[h]] += 1
    vals = [Fraction(G.order * c, H.order * len(cls)) for c, cls in zip(counts, G.classes)]
    return ClassFunction(G, vals)


def regular_character(G: Group) -> ClassFunction:
    return ClassFunction(G, [G.order] + [0] * (len(G.classes) - 1))


# -- character tables ------------------------------------------------------


class CharacterTable(Sequence[ClassFunction]):
    """Irreducible characters of ``group``; the trivial character comes first."""

    def __init__(self, group: Group, characters: Sequence[ClassFunction]):
        self.group = group
        self.characters = tuple(characters)
        self.labels = _atlas_labels([c.degree for c in self.characters])
        idx = {c.values: i for i, c in enumerate(self.characters)}
        self.dual_index = tuple(idx[c.conjugate().values] for c in self.characters)

    def __getitem__(self, i):
        return self.characters[i]

    def __len__(self) -> int:
        return len(self.characters)

    def __iter__(self) -> Iterator[ClassFunction]:
        return iter(self.characters)

    def index(self, chi: ClassFunction) -> int:  # type: ignore[override]
        for i, c in enumerate(self.characters):
            if c.values == chi.values:
                return i
        raise ValueError("not an irreducible character of this group")

    def label_index(self, label: str) -> int:
        return self.labels.index(label)

    @property
    def degrees(self) -> list[int]:
        return [int(c.degree) for c in self.characters]

    def conductor(self) -> int:
        m = 1
        for c in self.characters:
            for v in c.values:
                if isinstance(v, Cyclotomic):
                    m = m * v.conductor // gcd(m, v.conductor)
        return m

    def to_json(self) -> dict:
        return {
            "group_key": self.group.key,
            "labels": list(self.labels),
            "classes": [list(c) for c in self.group.classes],
            "characters": [[_value_json(v) for v in c.values] for c in self.characters],
        }

    @classmethod
    def from_json(cls, G: Group, data: dict) -> CharacterTable:
        if data.get("group_key") != G.key:
            raise ValueError("character table belongs to a different group")
        chars = [ClassFunction(G, [_value_from_json(v) for v in row]) for row in data["characters"]]
        return cls(G, chars)

    def is_orthonormal(self) -> bool:
        n = len(self.characters)
        for i in range(n):
            for j in range(i, n):
                if inner_product(self.characters[i], self.characters[j]) != (1 if i == j else 0):
                    return False
        return True


def _value_json(v) -> dict:
    if isinstance(v, Cyclotomic):
        return v.to_json()
    return {"conductor": 1, "coefficients": [str(v)]}


def _value_from_json(d: dict):
    return as_scalar(Cyclotomic.from_json(d))


def _atlas_labels(degrees: Sequence) -> list[str]:
    seen: dict[int, int] = {}
    out = []
    for d in degrees:
        d = int(d)
        k = seen.get(d, 0)
        seen[d] = k + 1
        suffix = ""
        k0 = k
        while True:
            suffix = chr(ord("a") + k0 % 26) + suffix
            k0 = k0 // 26 - 1
            if k0 < 0:
                break
        out.append(f"{d}{suffix}")
    return out


_TABLES: dict[str, CharacterTable] = {}


def register_table(table: CharacterTable) -> None:
    """Make ``table`` the in-memory table for its group (used by the CLI cache)."""
    _TABLES[table.group.key] = table


def cached_table(G: Group) -> CharacterTable | None:
    return _TABLES.get(G.key)


def character_table(G: Group, cap: int = DEFAULT_ORDER_CAP) -> CharacterTable:
    if G.order > cap:
        raise OrderCapExceeded(f"character tables limited to order {cap}", cap=cap, order=G.order)
    hit = _TABLES.get(G.key)
    if hit is not None:
        if hit.group is G:
            return hit
        table = CharacterTable(G, [ClassFunction(G, c.values) for c in hit.characters])
        return table
    table = _dixon(G)
    _TABLES[G.key] = table
    return table


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in range(2, isqrt(n) + 1):
        if n % p == 0:
            return False
    return True


def _choose_prime(order: int, exponent: int) -> int:
    p = exponent + 1
    while not (_is_prime(p) and p * p > 4 * order):
        p += exponent
    return p


def _primitive_root_of_unity(p: int, e: int) -> int:
    factors = [q for q in range(2, e + 1) if e % q == 0 and _is_prime(q)]
    for a in range(2, p):
        z = pow(a, (p - 1) // e, p)
        if all(pow(z, e // q, p) != 1 for q in factors):
            return z
    return 1  # e == 1


def class_multiplication_coefficients(G: Group) -> list[list[list[int]]]:
    """``a[i][j][l]``: number of ``x`` in class i with ``x^-1 g_l`` in class j."""
    classes = G.classes
    k = len(classes)
    cof = G.class_of
    a = [[[0] * k for _ in range(k)] for _ in range(k)]
    for l, cl in enumerate(classes):
        g = cl[0]
        for i, ci in enumerate(classes):
            row = a[i]
            for x in ci:
                row[cof[G.mul(G.inv(x), g)]][l] += 1
    return a


# polynomial and matrix helpers over F_p


def _charpoly_mod(a: list[list[int]], p: int) -> list[int]:
    """Characteristic polynomial (low degree first) via Hessenberg reduction."""
    n = len(a)
    h = [row[:] for row in a]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if h[i][m - 1] % p), None)
        if piv is None:
            continue
        if piv != m:
            h[piv], h[m] = h[m], h[piv]
            for row in h:
                row[piv], row[m] = row[m], row[piv]
        inv = pow(h[m][m - 1], p - 2, p)
        for i in range(m + 1, n):
            u = h[i][m - 1] * inv % p
            if u:
                h[i] = [(x - u * y) % p for x, y in zip(h[i], h[m])]
                for row in h:
                    row[m] = (row[m] + u * row[i]) % p
    polys: list[list[int]] = [[1]]
    for m in range(1, n + 1):
        # P_m = (x - h[m-1][m-1]) P_{m-1} - sum ...
        prev = polys[m - 1]
        nxt = [0] + prev[:]
        for i, c in enumerate(prev):
            nxt[i] = (nxt[i] - h[m - 1][m - 1] * c) % p
        t = 1
        for i in range(1, m):
            t = t * h[m - i][m - i - 1] % p
            coef = t * h[m - i - 1][m - 1] % p
            if coef:
                for d, c in enumerate(polys[m - i - 1]):
                    nxt[d] = (nxt[d] - coef * c) % p
        polys.append(nxt)
    return polys[n]


def _nullspace_mod(a: list[list[int]], p: int) -> list[list[int]]:
    rows = [r[:] for r in a]
    n = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                u = rows[i][c]
                rows[i] = [(x - u * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    basis = []
    for f in (c for c in range(n) if c not in pivots):
        v = [0] * n
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rows[i][f]) % p
        basis.append(v)
    return basis


def _solve_coords_mod(basis: list[list[int]], vec: list[int], p: int) -> list[int]:
    """Coordinates of ``vec`` in the span of ``basis`` (assumed to contain it)."""
    d = len(basis)
    n = len(vec)
    aug = [[basis[k][i] for k in range(d)] + [vec[i]] for i in range(n)]
    r = 0
    piv_cols = []
    for c in range(d):
        piv = next((i for i in range(r, n) if aug[i][c] % p), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], p - 2, p)
        aug[r] = [x * inv % p for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] % p:
                u = aug[i][c]
                aug[i] = [(x - u * y) % p for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    out = [0] * d
    for i, c in enumerate(piv_cols):
        out[c] = aug[i][d]
    return out


def _split_common_eigenvectors(mats: list[list[list[int]]], p: int, k: int, rng: random.Random) -> list[list[int]]:
    """One common eigenvector per 1-dimensional joint eigenspace."""
    pending = [[[int(i == j) for j in range(k)] for i in range(k)]]
    done: list[list[int]] = []
    while pending:
        space = pending.pop()
        if len(space) == 1:
            done.append(space[0])
            continue
        d = len(space)
        for _attempt in range(64):
            coeffs = [rng.randrange(p) for _ in mats]
            comb = [[sum(c * m[r][s] for c, m in zip(coeffs, mats)) % p for s in range(k)] for r in range(k)]
            # restriction of comb to the invariant subspace spanned by 'space'
            images = [[sum(comb[r][s] * v[s] for s in range(k)) % p for r in range(k)] for v in space]
            restricted = [_solve_coords_mod(space, w, p) for w in images]  # restricted[col] = coords
            rmat = [[restricted[c][r] for c in range(d)] for r in range(d)]
            poly = _charpoly_mod(rmat, p)
            roots = [x for x in range(p) if _poly_eval(poly, x, p) == 0]
            if len(roots) > 1:
                break
        else:
            raise RuntimeError("failed to split a joint eigenspace")
        for lam in roots:
            shifted = [[(rmat[r][c] - (lam if r == c else 0)) % p for c in range(d)] for r in range(d)]
            sub = _nullspace_mod(shifted, p)
            vecs = [[sum(cf * space[t][s] for t, cf in enumerate(coord)) % p for s in range(k)] for coord in sub]
            pending.append(vecs)
    return done


def _poly_eval(poly: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(poly):
        acc = (acc * x + c) % p
    return acc


def _dixon(G: Group) -> CharacterTable:
    classes = G.classes
    k = len(classes)
    order = G.order
    if k == 1:
        return CharacterTable(G, [ClassFunction.trivial(G)])
    e = G.exponent
    p = _choose_prime(order, e)
    z = _primitive_root_of_unity(p, e)
    a = class_multiplication_coefficients(G)
    mats = [[[a[i][j][l] % p for l in range(k)] for j in range(k)] for i in range(k)]
    rng = random.Random(order * 7919 + k)
    vectors = _split_common_eigenvectors(mats[1:], p, k, rng)
    if len(vectors) != k:
        raise RuntimeError("joint eigenspaces did not split completely")
    sizes = [len(c) for c in classes]
    inv_class = G.class_inverse
    rows_mod: list[list[int]] = []
    for v in vectors:
        s = pow(v[0], p - 2, p)
        w = [x * s % p for x in v]  # central character, w[0] = 1
        tot = sum(w[j] * w[inv_class[j]] * pow(sizes[j], p - 2, p) for j in range(k)) % p
        d2 = order * pow(tot, p - 2, p) % p
        deg = next(d for d in range(1, isqrt(order) + 1) if d * d % p == d2)
        rows_mod.append([w[j] * deg % p * pow(sizes[j], p - 2, p) % p for j in range(k)])
    # power maps: class of g_j^l
    power_class = {}
    for j, cl in enumerate(classes):
        g = cl[0]
        o = G.element_order(g)
        power_class[j] = (o, [G.class_of[G.power(g, l)] for l in range(o)])
    chars = []
    for row in rows_mod:
        vals = []
        for j in range(k):
            o, pcs = power_class[j]
            step = e // o
            mult = {}
            inv_o = pow(o, p - 2, p)
            for kk in range(o):
                s = 0
                for l in range(o):
                    s += row[pcs[l]] * pow(z, (-step * kk * l) % e, p)
                m = s * inv_o % p
                if m > p // 2:
                    m -= p
                if m:
                    mult[step * kk] = m
            vals.append(as_scalar(Cyclotomic.from_exponents(e, mult)))
        chars.append(ClassFunction(G, vals))
    chars.sort(key=_char_sort_key)
    table = CharacterTable(G, chars)
    if not table.is_orthonormal():
        raise RuntimeError("character table failed the orthogonality check")
    return table


def _char_sort_key(c: ClassFunction):
    trivial = all(v == 1 for v in c.values)
    key = []
    for v in c.values:
        if isinstance(v, Cyclotomic):
            key.append((-float(complex(v).real), -float(complex(v).imag)))
        else:
            key.append((-float(v), 0.0))
    return (not trivial, int(c.degree), key)


# -- virtual characters ----------------------------------------------------


class VirtualCharacter:
    """Integer combination of the irreducibles of ``table`` (negatives allowed)."""

    __slots__ = ("table", "multiplicities")

    def __init__(self, table: CharacterTable, multiplicities: Sequence[int]):
        if len(multiplicities) != len(table):
            raise ValueError("one multiplicity per irreducible expected")
        self.table = table
        self.multiplicities = tuple(int(m) for m in multiplicities)

    @property
    def group(self) -> Group:
        return self.table.group

    def to_class_function(self) -> ClassFunction:
        acc = ClassFunction.zero(self.group)
        for m, chi in zip(self.multiplicities, self.table):
            if m:
                acc = acc + chi * m
        return acc

    recompose = to_class_function

    @property
    def degree(self) -> int:
        return sum(m * d for m, d in zip(self.multiplicities, self.table.degrees))

    def is_effective(self) -> bool:
        return all(m >= 0 for m in self.multiplicities)

    def multiplicity(self, chi: ClassFunction | int) -> int:
        i = chi if isinstance(chi, int) else self.table.index(chi)
        return self.multiplicities[i]

    def __add__(self, other: VirtualCharacter) -> VirtualCharacter:
        return VirtualCharacter(self.table, [a + b for a, b in zip(self.multiplicities, other.multiplicities)])

    def __sub__(self, other: VirtualCharacter) -> VirtualCharacter:
        return VirtualCharacter(self.table, [a - b for a, b in zip(self.multiplicities, other.multiplicities)])

    def __mul__(self, k: int) -> VirtualCharacter:
        return VirtualCharacter(self.table, [a * k for a in self.multiplicities])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, VirtualCharacter):
            return NotImplemented
        return self.group == other.group and self.multiplicities == other.multiplicities

    def __hash__(self) -> int:
        return hash(self.multiplicities)

    def format(self, names: dict[str, str] | None = None) -> str:
        names = names or {}
        pos, neg = [], []
        for m, lab in zip(self.multiplicities, self.table.labels):
            if not m:
                continue
            name = names.get(lab, lab)
            term = name if abs(m) == 1 else f"{abs(m)}·{name}"
            (pos if m > 0 else neg).append(term)
        text = " ⊕ ".join(pos) if pos else "0"
        if neg:
            text += " ⊖ " + " ⊖ ".join(neg)
        return text

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"VirtualCharacter({self.format()})"

    def to_json(self) -> dict:
        return {
            "multiplicities": {lab: m for lab, m in zip(self.table.labels, self.multiplicities)},
            "degree": self.degree,
        }


def decompose(chi: ClassFunction, table: CharacterTable | None = None) -> VirtualCharacter:
    table = table or character_table(chi.group)
    mults = []
    for rho, label in zip(table, table.labels):
        ip = inner_product(chi, rho)
        if not isinstance(ip, Fraction) or ip.denominator != 1:
            raise NotVirtualCharacter(f"multiplicity of {label} is {ip}, not an integer", irreducible=label, value=str(ip))
        mults.append(int(ip))
    return VirtualCharacter(table, mults)


# -- Brauer relations ------------------------------------------------------


@dataclass(frozen=True)
class BrauerRelation:
    """Non-isomorphic G-sets ``left`` and ``right`` with equal permutation characters."""

    left: GSet
    right: GSet
    left_classes: tuple[int, ...]
    right_classes: tuple[int, ...]
    character: ClassFunction

    def __iter__(self):
        yield self.left
        yield self.right


def _multisets(r: int, max_blocks: int):
    for size in range(1, max_blocks + 1):
        yield from itertools.combinations_with_replacement(range(r), size)


def brauer_relations(G: Group, max_blocks: int = 4, subgroups: Sequence[Subgroup] | None = None) -> list[BrauerRelation]:
    """Pairs of disjoint multisets of subgroup classes with equal fixed-point counts."""
    from .gset import gset_from_stabilizers, isomorphic_gsets

    reps = list(subgroups) if subgroups is not None else subgroups_up_to_conjugacy(G)
    vecs = [tuple(int(v) for v in induce_trivial(H, G).values) for H in reps]
    buckets: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for ms in _multisets(len(reps), max_blocks):
        total = tuple(sum(col) for col in zip(*(vecs[i] for i in ms)))
        buckets.setdefault(total, []).append(ms)
    found = []
    for total, group in buckets.items():
        if len(group) < 2:
            continue
        for a, b in itertools.combinations(group, 2):
            if set(a) & set(b):
                continue
            left, right = sorted([a, b], reverse=True)
            S = gset_from_stabilizers(G, [reps[i] for i in left])
            T = gset_from_stabilizers(G, [reps[i] for i in right])
            if isomorphic_gsets(S, T):
                continue
            found.append(BrauerRelation(S, T, left, right, ClassFunction(G, total)))
    found.sort(key=lambda rel: (len(rel.left_classes) + len(rel.right_classes), rel.left_classes, rel.right_classes))
    return found


__all__ = [
    "BrauerRelation", "CharacterTable", "ClassFunction", "VirtualCharacter", "brauer_relations",
    "character_table", "class_multiplication_coefficients", "decompose", "induce_trivial",
    "inner_product", "regular_character", "register_table",
]
