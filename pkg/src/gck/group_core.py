"""Finite permutation groups stored by full enumeration.

Composition convention: ``p * q`` is the permutation ``i -> p(q(i))`` (apply
``q`` first).  Every action in the package is a *left* action with respect to
this product.  Group elements are kept sorted lexicographically by their image
tuples, so the identity always has index 0; "canonical representative"
anywhere in the package means "smallest index in this order".
"""

from __future__ import annotations

import hashlib
import re
from collections import deque
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidPermutation, NotASubgroup, OrderCapExceeded

DEFAULT_ORDER_CAP = 10080
SUBGROUP_ORDER_CAP = 200
TABLE_ORDER_LIMIT = 1024

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Perm:
    """A permutation of ``{0, ..., n-1}`` given by its image sequence."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        n = len(images)
        if sorted(images) != list(range(n)):
            raise InvalidPermutation(f"not a bijection of 0..{n - 1}: {list(images)}", images=list(images))
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> Perm:
        text = text.strip()
        stripped = _CYCLE_RE.sub("", text).strip()
        if stripped:
            raise InvalidPermutation(f"cannot parse cycle notation {text!r}")
        images = list(range(degree))
        seen: set[int] = set()
        for body in _CYCLE_RE.findall(text):
            toks = [tok for tok in re.split(r"[\s,]+", body.strip()) if tok]
            if not all(tok.isdigit() for tok in toks):
                raise InvalidPermutation(f"cycle entries must be point numbers in {text!r}")
            pts = [int(tok) for tok in toks]
            for p in pts:
                if p < 0 or p >= degree:
                    raise InvalidPermutation(f"point {p} out of range for degree {degree}", cycle=text)
                if p in seen:
                    raise InvalidPermutation(f"point {p} repeated in {text!r}", cycle=text)
                seen.add(p)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a] = b
        return cls(images)

    @classmethod
    def parse(cls, spec: str | Sequence[int], degree: int) -> Perm:
        """Accept cycle notation or a one-line image array."""
        if isinstance(spec, str):
            return cls.from_cycles(spec, degree)
        p = cls(spec)
        if p.degree != degree:
            raise InvalidPermutation(f"image array has length {p.degree}, expected {degree}")
        return p

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Perm) -> Perm:
        a = self.images
        return Perm.__new_unchecked(tuple(a[j] for j in other.images))

    @classmethod
    def __new_unchecked(cls, images: tuple[int, ...]) -> Perm:
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    def inverse(self) -> Perm:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm.__new_unchecked(tuple(inv))

    def __pow__(self, k: int) -> Perm:
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Perm) -> bool:
        return self.images < other.images

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Perm({str(self)!r})"


def _closure(degree: int, gens: Sequence[Perm], cap: int) -> list[Perm]:
    ident = Perm.identity(degree)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = s * x
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise OrderCapExceeded(f"group order exceeds cap {cap}", cap=cap)
                queue.append(y)
    return sorted(seen)


class Group:
    """Finite group of permutations with every element enumerated."""

    def __init__(self, degree: int, elements: Sequence[Perm], generators: Sequence[Perm], name: str | None = None):
        self.degree = degree
        self.elements: tuple[Perm, ...] = tuple(elements)
        self.generators: tuple[Perm, ...] = tuple(generators)
        self.name = name
        self._index = {p: i for i, p in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        label = self.name or f"degree {self.degree}"
        return f"<Group {label} of order {self.order}>"

    def __eq__(self, other) -> bool:
        return isinstance(other, Group) and (self is other or self.key == other.key)

    def __hash__(self) -> int:
        return hash(self.key)

    @cached_property
    def key(self) -> str:
        """Stable content hash (sorted element images) used for caching."""
        h = hashlib.sha256()
        h.update(str(self.degree).encode())
        for p in self.elements:
            h.update(bytes(str(p.images), "ascii"))
        return h.hexdigest()

    def index(self, p: Perm) -> int:
        try:
            return self._index[p]
        except KeyError:
            raise NotASubgroup(f"{p} is not an element of {self!r}") from None

    def __contains__(self, p: Perm) -> bool:
        return p in self._index

    @cached_property
    def _table(self) -> list[list[int]] | None:
        if self.order > TABLE_ORDER_LIMIT:
            return None
        idx = self._index
        els = self.elements
        return [[idx[a * b] for b in els] for a in els]

    def mul(self, i: int, j: int) -> int:
        t = self._table
        if t is not None:
            return t[i][j]
        return self._index[self.elements[i] * self.elements[j]]

    @cached_property
    def _inverses(self) -> tuple[int, ...]:
        return tuple(self._index[p.inverse()] for p in self.elements)

    def inv(self, i: int) -> int:
        return self._inverses[i]

    @cached_property
    def generator_indices(self) -> tuple[int, ...]:
        return tuple(self._index[g] for g in self.generators)

    @cached_property
    def schreier_tree(self) -> tuple[tuple[int, int], ...]:
        """For each element, ``(parent, k)`` with element = gens[k] * parent.

        Elements are listed in BFS order in :attr:`bfs_order`; the identity
        has parent ``-1``.
        """
        tree: list[tuple[int, int] | None] = [None] * self.order
        tree[0] = (-1, -1)
        order = [0]
        queue = deque([0])
        gens = self.generator_indices
        while queue:
            x = queue.popleft()
            for k, s in enumerate(gens):
                y = self.mul(s, x)
                if tree[y] is None:
                    tree[y] = (x, k)
                    order.append(y)
                    queue.append(y)
        self.__dict__["bfs_order"] = tuple(order)
        return tuple(tree)  # type: ignore[arg-type]

    @cached_property
    def bfs_order(self) -> tuple[int, ...]:
        self.schreier_tree  # populates bfs_order
        return self.__dict__["bfs_order"]

    def word(self, i: int) -> list[int]:
        """Generator indices ``[k1, k2, ...]`` with element = g_k1 * g_k2 * ..."""
        tree = self.schreier_tree
        out = []
        while i != 0:
            parent, k = tree[i]
            out.append(k)
            i = parent
        return out

    @cached_property
    def exponent(self) -> int:
        from math import lcm

        return lcm(*(p.order() for p in self.elements))

    def element_order(self, i: int) -> int:
        return self.elements[i].order()

    def power(self, i: int, k: int) -> int:
        return self._index[self.elements[i] ** k]

    # -- conjugacy -----------------------------------------------------

    @cached_property
    def _classes(self) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
        class_of = [-1] * self.order
        classes: list[tuple[int, ...]] = []
        gens = self.generator_indices
        ginv = [self.inv(s) for s in gens]
        for x in range(self.order):
            if class_of[x] >= 0:
                continue
            c = len(classes)
            class_of[x] = c
            members = [x]
            queue = deque([x])
            while queue:
                y = queue.popleft()
                for s, si in zip(gens, ginv):
                    z = self.mul(self.mul(s, y), si)
                    if class_of[z] < 0:
                        class_of[z] = c
                        members.append(z)
                        queue.append(z)
            classes.append(tuple(sorted(members)))
        return tuple(classes), tuple(class_of)

    @property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        """Conjugacy classes as sorted index tuples, ordered by representative."""
        return self._classes[0]

    @property
    def class_of(self) -> tuple[int, ...]:
        return self._classes[1]

    @cached_property
    def class_inverse(self) -> tuple[int, ...]:
        """Index of the class of inverses, per class."""
        return tuple(self.class_of[self.inv(c[0])] for c in self.classes)

    # -- subgroups -----------------------------------------------------

    def subgroup(self, gens: Iterable[Perm | int] = ()) -> Subgroup:
        gen_idx = []
        for g in gens:
            gen_idx.append(g if isinstance(g, int) else self.index(g))
        mask = _closure_mask(self, gen_idx)
        return Subgroup(self, mask, tuple(self.elements[i] for i in gen_idx))

    def whole(self) -> Subgroup:
        return Subgroup(self, (1 << self.order) - 1, self.generators)

    def trivial(self) -> Subgroup:
        return Subgroup(self, 1, ())


def _closure_mask(G: Group, gen_idx: Sequence[int], start_mask: int = 1) -> int:
    mask = start_mask
    todo = deque(i for i in range(G.order) if mask >> i & 1)
    gens = [g for g in gen_idx if g != 0]
    if not gens:
        return mask
    while todo:
        x = todo.popleft()
        for s in gens:
            y = G.mul(s, x)
            if not mask >> y & 1:
                mask |= 1 << y
                todo.append(y)
    return mask


def _mask_indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class Subgroup:
    """A subgroup of a fixed parent group, stored as a bitmask of indices."""

    def __init__(self, parent: Group, mask: int, generators: Sequence[Perm] = ()):
        self.parent = parent
        self.mask = mask
        self.generators = tuple(generators)

    @cached_property
    def indices(self) -> tuple[int, ...]:
        return _mask_indices(self.mask)

    @property
    def order(self) -> int:
        return len(self.indices)

    @property
    def elements(self) -> list[Perm]:
        return [self.parent.elements[i] for i in self.indices]

    def __len__(self) -> int:
        return self.order

    def contains_index(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def __contains__(self, p: Perm) -> bool:
        return p in self.parent and self.contains_index(self.parent.index(p))

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and self.mask == other.mask and self.parent == other.parent

    def __hash__(self) -> int:
        return hash(self.mask)

    def __repr__(self) -> str:
        gens = ", ".join(map(str, self.generators)) or "e"
        return f"<Subgroup <{gens}> of order {self.order}>"

    def is_subgroup_of(self, other: Subgroup) -> bool:
        return self.mask & ~other.mask == 0

    def conjugate(self, g: int) -> Subgroup:
        """The subgroup ``g K g^-1``."""
        G = self.parent
        gi = G.inv(g)
        mask = 0
        for k in self.indices:
            mask |= 1 << G.mul(G.mul(g, k), gi)
        gens = tuple(G.elements[g] * s * G.elements[gi] for s in self.generators)
        return Subgroup(G, mask, gens)

    def intersection(self, other: Subgroup) -> Subgroup:
        return Subgroup(self.parent, self.mask & other.mask)

    def is_cyclic(self) -> bool:
        n = self.order
        return any(self.parent.element_order(i) == n for i in self.indices)

    def is_normal(self) -> bool:
        return all(self.conjugate(g).mask == self.mask for g in self.parent.generator_indices)

    @cached_property
    def canonical_conjugate(self) -> Subgroup:
        """Conjugate with the lexicographically smallest index tuple."""
        best = None
        seen = set()
        for g in range(self.parent.order):
            c = self.conjugate(g)
            if c.mask in seen:
                continue
            seen.add(c.mask)
            if best is None or c.indices < best.indices:
                best = c
        return best  # type: ignore[return-value]

    def is_conjugate_to(self, other: Subgroup) -> bool:
        if self.order != other.order:
            return False
        return self.canonical_conjugate.mask == other.canonical_conjugate.mask

    def as_group(self) -> Group:
        gens = self.generators or tuple(self.elements[1:2])
        return Group(self.parent.degree, self.elements, gens)


class DoubleCoset:
    """``left * representative * right``, stored as a bitmask of indices."""

    def __init__(self, representative: int, mask: int, left: Subgroup, right: Subgroup):
        self.rep_index = representative
        self.mask = mask
        self.left = left
        self.right = right

    @property
    def group(self) -> Group:
        return self.left.parent

    @property
    def representative(self) -> Perm:
        return self.group.elements[self.rep_index]

    @cached_property
    def indices(self) -> tuple[int, ...]:
        return _mask_indices(self.mask)

    @property
    def elements(self) -> list[Perm]:
        return [self.group.elements[i] for i in self.indices]

    @property
    def size(self) -> int:
        return len(self.indices)

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, DoubleCoset) and self.mask == other.mask and self.left == other.left and self.right == other.right

    def __hash__(self) -> int:
        return hash(self.mask)

    def __repr__(self) -> str:
        return f"<DoubleCoset H{self.representative}H' size {self.size}>"


def group_from_generators(degree: int, gens: Sequence[Perm | str | Sequence[int]], cap: int = DEFAULT_ORDER_CAP, name: str | None = None) -> Group:
    perms = []
    for g in gens:
        p = g if isinstance(g, Perm) else Perm.parse(g, degree)
        if p.degree != degree:
            raise InvalidPermutation(f"generator {p} has degree {p.degree}, expected {degree}")
        perms.append(p)
    return Group(degree, _closure(degree, perms, cap), perms, name=name)


def conjugacy_classes(G: Group) -> list[list[Perm]]:
    return [[G.elements[i] for i in c] for c in G.classes]


def _check_sub(G: Group, H: Subgroup) -> None:
    if H.parent is not G and H.parent != G:
        raise NotASubgroup("subgroup belongs to a different group")


def left_transversal(G: Group, H: Subgroup) -> list[Perm]:
    """Minimal representatives of the left cosets gH, identity first."""
    _check_sub(G, H)
    covered = 0
    reps = []
    for g in range(G.order):
        if covered >> g & 1:
            continue
        reps.append(G.elements[g])
        for h in H.indices:
            covered |= 1 << G.mul(g, h)
    return reps


def left_coset_reps(G: Group, H: Subgroup) -> list[int]:
    _check_sub(G, H)
    covered = 0
    reps = []
    for g in range(G.order):
        if covered >> g & 1:
            continue
        reps.append(g)
        for h in H.indices:
            covered |= 1 << G.mul(g, h)
    return reps


def double_cosets(G: Group, H: Subgroup, H2: Subgroup) -> list[DoubleCoset]:
    _check_sub(G, H)
    _check_sub(G, H2)
    covered = 0
    out = []
    for g in range(G.order):
        if covered >> g & 1:
            continue
        mask = 0
        for h in H.indices:
            hg = G.mul(h, g)
            for k in H2.indices:
                mask |= 1 << G.mul(hg, k)
        covered |= mask
        out.append(DoubleCoset(g, mask, H, H2))
    return out


def cyclic_subgroups(G: Group) -> list[Subgroup]:
    seen: dict[int, Subgroup] = {}
    for i in range(G.order):
        mask = _closure_mask(G, [i])
        if mask not in seen:
            seen[mask] = Subgroup(G, mask, (G.elements[i],) if i else ())
    return list(seen.values())


def all_subgroups(G: Group, cap: int = SUBGROUP_ORDER_CAP) -> list[Subgroup]:
    """Every subgroup, by repeatedly adjoining one cyclic generator."""
    if G.order > cap:
        raise OrderCapExceeded(f"subgroup enumeration limited to order {cap}", cap=cap, order=G.order)
    cyclic = cyclic_subgroups(G)
    found: dict[int, Subgroup] = {c.mask: c for c in cyclic}
    queue = deque(found.values())
    while queue:
        K = queue.popleft()
        for C in cyclic:
            if C.mask & ~K.mask == 0:
                continue
            g = G.index(C.generators[0])
            mask = _closure_mask(G, list(G.index(s) for s in K.generators) + [g], start_mask=K.mask)
            if mask not in found:
                J = Subgroup(G, mask, K.generators + (G.elements[g],))
                found[mask] = J
                queue.append(J)
    return sorted(found.values(), key=lambda S: (S.order, S.indices))


def subgroups_up_to_conjugacy(G: Group, cap: int = SUBGROUP_ORDER_CAP) -> list[Subgroup]:
    reps = []
    seen: set[int] = set()
    for S in all_subgroups(G, cap):
        if S.mask in seen:
            continue
        canon = S.canonical_conjugate
        for g in range(G.order):
            seen.add(S.conjugate(g).mask)
        # keep the subgroup object that carries generators
        reps.append(canon if canon.mask == S.mask else _with_generators(canon, S))
    return sorted(reps, key=lambda S: (S.order, S.indices))


def _with_generators(canon: Subgroup, S: Subgroup) -> Subgroup:
    G = S.parent
    for g in range(G.order):
        c = S.conjugate(g)
        if c.mask == canon.mask:
            return c
    return canon
