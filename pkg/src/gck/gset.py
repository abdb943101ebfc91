"""Finite G-sets: disjoint unions of coset spaces with explicit action tables.

The action is on the left: ``x -> g.x`` with ``(g*h).x = g.(h.x)`` for the
package-wide product ``(g*h)(i) = g(h(i))``.  A G-set stores the images of
the generators; the image table of any other element is derived through the
Schreier tree of the group and memoized.

Closure constructions additionally record a commuting *right* action of an
auxiliary group R, stored the same way (generator images), with the
convention ``x.(r*s) = (x.r).s``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import factorial
from itertools import permutations
from typing import Sequence

from .chars import ClassFunction
from .errors import GroupMismatch, NoRightAction, NotASubgroup, NotContaining, NotTransitive, SizeCapExceeded
from .group_core import Group, Perm, Subgroup, group_from_generators

SN_CLOSURE_CAP = 7


@dataclass(frozen=True)
class Block:
    """One orbit: its points, the stabilizer of ``base`` and the base point itself."""

    points: tuple[int, ...]
    stabilizer: Subgroup
    base: int


@dataclass(frozen=True)
class RightAction:
    group: Group
    generator_images: tuple[tuple[int, ...], ...]


class GSet:
    def __init__(
        self,
        group: Group,
        size: int,
        generator_images: Sequence[Sequence[int]],
        labels: Sequence[str] | None = None,
        right: RightAction | None = None,
        blocks: Sequence[Block] | None = None,
        point_reps: Sequence[int] | None = None,
    ):
        self.group = group
        self.size = size
        self.generator_images = tuple(tuple(im) for im in generator_images)
        if len(self.generator_images) != len(group.generators):
            raise ValueError("one image table per group generator is required")
        self.labels = tuple(labels) if labels is not None else None
        self.right = right
        self._element_images: dict[int, tuple[int, ...]] = {0: tuple(range(size))}
        if blocks is None:
            blocks, point_reps = self._orbit_blocks()
        elif point_reps is None:
            point_reps = self._reps_for(blocks)
        self.blocks = tuple(blocks)
        self.point_reps = tuple(point_reps)
        self.block_of = [0] * size
        for b, blk in enumerate(self.blocks):
            for x in blk.points:
                self.block_of[x] = b

    # -- action --------------------------------------------------------

    def element_images(self, g: int) -> tuple[int, ...]:
        """Image table of the group element with index ``g``."""
        hit = self._element_images.get(g)
        if hit is not None:
            return hit
        G = self.group
        parent, k = G.schreier_tree[g]
        base = self.element_images(parent)
        gen = self.generator_images[k]
        images = tuple(gen[x] for x in base)
        self._element_images[g] = images
        return images

    def act(self, g: int | Perm, x: int) -> int:
        if isinstance(g, Perm):
            g = self.group.index(g)
        return self.element_images(g)[x]

    def stabilizer(self, x: int) -> Subgroup:
        G = self.group
        mask = 0
        for g in range(G.order):
            if self.element_images(g)[x] == x:
                mask |= 1 << g
        return Subgroup(G, mask)

    def fixed_points(self, g: int) -> int:
        im = self.element_images(g)
        return sum(1 for x, y in enumerate(im) if x == y)

    def orbits(self) -> list[tuple[int, ...]]:
        return [blk.points for blk in self.blocks]

    def _orbit_blocks(self) -> tuple[list[Block], list[int]]:
        reps = [-1] * self.size
        blocks = []
        gens = self.group.generator_indices
        for start in range(self.size):
            if reps[start] >= 0:
                continue
            reps[start] = 0
            pts = [start]
            queue = deque([start])
            while queue:
                y = queue.popleft()
                for k, s in enumerate(gens):
                    z = self.generator_images[k][y]
                    if reps[z] < 0:
                        reps[z] = self.group.mul(s, reps[y])
                        pts.append(z)
                        queue.append(z)
            blocks.append(Block(tuple(sorted(pts)), self.stabilizer(start), start))
        return blocks, reps

    def _reps_for(self, blocks: Sequence[Block]) -> list[int]:
        reps = [-1] * self.size
        gens = self.group.generator_indices
        for blk in blocks:
            reps[blk.base] = 0
            queue = deque([blk.base])
            while queue:
                y = queue.popleft()
                for k, s in enumerate(gens):
                    z = self.generator_images[k][y]
                    if reps[z] < 0:
                        reps[z] = self.group.mul(s, reps[y])
                        queue.append(z)
        return reps

    def point_label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    # -- right action --------------------------------------------------

    def right_element_images(self, r: int) -> tuple[int, ...]:
        """Right-action table of ``r`` (an index into the right group)."""
        if self.right is None:
            raise NoRightAction("this G-set carries no recorded right action")
        R = self.right.group
        word = R.word(r)  # r = g_k1 * g_k2 * ...; x.r = (x.g_k1).g_k2 ...
        images = list(range(self.size))
        for k in word:
            gen = self.right.generator_images[k]
            images = [gen[y] for y in images]
        return tuple(images)

    # -- structure -----------------------------------------------------

    def __len__(self) -> int:
        return self.size

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GSet)
            and self.group == other.group
            and self.size == other.size
            and self.generator_images == other.generator_images
        )

    def __hash__(self) -> int:
        return hash((self.size, self.generator_images))

    def __repr__(self) -> str:
        sizes = ",".join(str(len(b.points)) for b in self.blocks)
        return f"<GSet of {self.size} points, orbits [{sizes}]>"

    def disjoint_union(self, other: GSet) -> GSet:
        if self.group != other.group:
            raise GroupMismatch("disjoint union of G-sets over different groups")
        n = self.size
        imgs = [a + tuple(y + n for y in b) for a, b in zip(self.generator_images, other.generator_images)]
        blocks = list(self.blocks) + [
            Block(tuple(x + n for x in b.points), b.stabilizer, b.base + n) for b in other.blocks
        ]
        reps = list(self.point_reps) + list(other.point_reps)
        labels = None
        if self.labels or other.labels:
            labels = [self.point_label(x) for x in range(n)] + [other.point_label(x) for x in range(other.size)]
        return GSet(self.group, n + other.size, imgs, labels=labels, blocks=blocks, point_reps=reps)

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "blocks": [
                {"size": len(b.points), "stabilizer": [str(p) for p in _generators_of(b.stabilizer)]}
                for b in self.blocks
            ],
        }


def _generators_of(K: Subgroup) -> list[Perm]:
    """A small generating set (the recorded one when available)."""
    if K.generators:
        return list(K.generators)
    G = K.parent
    from .group_core import _closure_mask

    gens: list[int] = []
    mask = 1
    for i in K.indices:
        if not mask >> i & 1:
            gens.append(i)
            mask = _closure_mask(G, gens)
    return [G.elements[i] for i in gens]


def subgroup_generators(K: Subgroup) -> list[int]:
    return [K.parent.index(p) for p in _generators_of(K)]


def _coset_block(G: Group, H: Subgroup, reps: Sequence[int] | None) -> tuple[list[int], list[int]]:
    """Coset representatives and the coset index of each group element."""
    from .group_core import left_coset_reps

    if reps is None:
        reps = left_coset_reps(G, H)
    coset_of = [-1] * G.order
    for a, r in enumerate(reps):
        for h in H.indices:
            g = G.mul(r, h)
            if coset_of[g] >= 0:
                raise NotASubgroup("coset representatives are not distinct modulo the stabilizer", representative=str(G.elements[r]))
            coset_of[g] = a
    if any(c < 0 for c in coset_of):
        raise NotASubgroup("coset representatives do not cover the group")
    if not H.contains_index(reps[0]):
        raise NotASubgroup("the first coset representative must lie in the stabilizer")
    return list(reps), coset_of


def gset_from_stabilizers(
    G: Group,
    stabs: Sequence[Subgroup],
    orderings: Sequence[Sequence[Perm | int] | None] | None = None,
    labels: Sequence[str] | None = None,
) -> GSet:
    """Disjoint union of the coset spaces ``G/H_i`` with left translation.

    Cosets in each block are ordered by their minimal representative unless
    ``orderings[i]`` lists representatives explicitly (first one in ``H_i``).
    """
    for H in stabs:
        if H.parent is not G and H.parent != G:
            raise NotASubgroup("stabilizer is not a subgroup of the given group")
    gens = G.generator_indices
    images: list[list[int]] = [[] for _ in gens]
    blocks = []
    point_reps: list[int] = []
    offset = 0
    for i, H in enumerate(stabs):
        override = orderings[i] if orderings is not None and i < len(orderings) else None
        reps_idx = None
        if override is not None:
            reps_idx = [r if isinstance(r, int) else G.index(r) for r in override]
        reps, coset_of = _coset_block(G, H, reps_idx)
        for k, s in enumerate(gens):
            images[k].extend(offset + coset_of[G.mul(s, r)] for r in reps)
        pts = tuple(range(offset, offset + len(reps)))
        blocks.append(Block(pts, H, offset))
        # representative carrying the base coset to each point
        base_rep_inv = G.inv(reps[0])
        point_reps.extend(G.mul(r, base_rep_inv) for r in reps)
        offset += len(reps)
    return GSet(G, offset, images, labels=labels, blocks=blocks, point_reps=point_reps)


def natural_gset(G: Group) -> GSet:
    """``G`` acting on ``{0, ..., degree-1}`` through its given permutations."""
    return GSet(G, G.degree, [g.images for g in G.generators])


def gset_from_action(G: Group, generator_images: Sequence[Sequence[int]]) -> GSet:
    """G-set with explicit generator images; validated to define an action."""
    n = len(generator_images[0]) if generator_images else 0
    S = GSet(G, n, generator_images)
    perms = [Perm(im) for im in S.generator_images]
    # well-definedness: the induced map on elements must be a homomorphism
    for g in range(G.order):
        ig = S.element_images(g)
        for k, s in enumerate(G.generator_indices):
            lhs = tuple(perms[k].images[x] for x in ig)
            if lhs != S.element_images(G.mul(s, g)):
                raise NotASubgroup("generator images do not define an action of the group")
    return S


def permutation_character(S: GSet) -> ClassFunction:
    G = S.group
    return ClassFunction(G, [S.fixed_points(cls[0]) for cls in G.classes])


def isomorphic_gsets(S: GSet, T: GSet) -> bool:
    if S.group != T.group:
        raise GroupMismatch("G-sets over different groups")
    if S.size != T.size:
        return False
    a = sorted(b.stabilizer.canonical_conjugate.mask for b in S.blocks)
    b = sorted(b.stabilizer.canonical_conjugate.mask for b in T.blocks)
    return a == b


# -- closures --------------------------------------------------------------


def _image_perms(S: GSet) -> list[Perm]:
    return [Perm(im) for im in S.generator_images]


def sn_closure(S: GSet, cap: int = SN_CLOSURE_CAP) -> GSet:
    """Bijections ``[n] -> S`` with Γ acting by post-composition.

    Points are the bijections in lexicographic order of their value tuples.
    The recorded right action of ``S_n`` is precomposition:
    ``(phi.r)(m) = phi(r(m))``.
    """
    n = S.size
    if n > cap:
        raise SizeCapExceeded(f"S_n-closure limited to n <= {cap} ({factorial(n)} points requested)", n=n, cap=cap)
    bij = list(permutations(range(n)))
    pos = {b: i for i, b in enumerate(bij)}
    left = [[pos[tuple(im[b[m]] for m in range(n))] for b in bij] for im in S.generator_images]
    Sn = _symmetric_on(n)
    right_imgs = tuple(tuple(pos[tuple(b[r.images[m]] for m in range(n))] for b in bij) for r in Sn.generators)
    labels = ["[" + " ".join(map(str, b)) + "]" for b in bij]
    return GSet(S.group, len(bij), left, labels=labels, right=RightAction(Sn, right_imgs))


def _symmetric_on(n: int) -> Group:
    from .named import symmetric

    return symmetric(n)


def first_point_stabilizer(R: Group) -> Subgroup:
    """The subgroup ``1 x S_{n-1}`` of ``S_n``: permutations fixing point 0."""
    return Subgroup(R, sum(1 << i for i, p in enumerate(R.elements) if p.images[0] == 0))


def quotient_by_right_subgroup(T: GSet, B: Subgroup) -> GSet:
    """Left G-set of right ``B``-orbits of ``T``."""
    if T.right is None:
        raise NoRightAction("quotient requires a recorded right action")
    R = T.right.group
    if B.parent is not R and B.parent != R:
        raise NotASubgroup("subgroup does not belong to the right-acting group")
    orbit_of = [-1] * T.size
    reps: list[int] = []
    tables = [T.right_element_images(b) for b in B.indices]
    for x in range(T.size):
        if orbit_of[x] >= 0:
            continue
        c = len(reps)
        reps.append(x)
        for tab in tables:
            orbit_of[tab[x]] = c
    images = [[orbit_of[im[x]] for x in reps] for im in T.generator_images]
    labels = None
    if T.labels:
        labels = [T.labels[x] + "·B" for x in reps]
    return GSet(T.group, len(reps), images, labels=labels)


def alternating_quotient(S: GSet, cap: int = SN_CLOSURE_CAP) -> str:
    """``"split"`` iff Γ fixes both points of ``Bij([n], S) / A_n``."""
    n = S.size
    if n < 2:
        raise ValueError("alternating quotient needs at least two points")
    closure = sn_closure(S, cap)
    R = closure.right.group  # type: ignore[union-attr]
    An = Subgroup(R, sum(1 << i for i, p in enumerate(R.elements) if p.is_even()))
    Q = quotient_by_right_subgroup(closure, An)
    assert Q.size == 2
    trivial = all(im == (0, 1) for im in Q.generator_images)
    return "split" if trivial else "nonsplit"


def discriminant_is_square(S: GSet) -> bool:
    """Every generator acts evenly (equivalent to a split alternating quotient)."""
    return all(p.is_even() for p in _image_perms(S))


def g_closure(S: GSet, C: Group) -> GSet:
    """Elements of ``C ≤ Sym(S)``; Γ acts by left composition, ``C`` on the right.

    ``C`` is given as a permutation group of degree ``|S|``.  The quotient by
    the stabilizer in ``C`` of a point recovers ``S``.
    """
    if len(S.blocks) != 1:
        raise NotTransitive("G-closure requires a transitive G-set")
    if C.degree != S.size:
        raise NotContaining(f"C acts on {C.degree} points but S has {S.size}")
    images = _image_perms(S)
    for p in images:
        if p not in C:
            raise NotContaining(f"image {p} of a generator is not in C", element=str(p))
    orbit = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for c in C.generators:
            y = c.images[x]
            if y not in orbit:
                orbit.add(y)
                queue.append(y)
    if len(orbit) != S.size:
        raise NotTransitive("C does not act transitively on S")
    els = C.elements
    left = [[C.mul(C.index(p), i) for i in range(C.order)] for p in images]
    right_imgs = tuple(tuple(C.mul(i, C.index(r)) for i in range(C.order)) for r in C.generators)
    labels = [str(p) for p in els]
    return GSet(S.group, C.order, left, labels=labels, right=RightAction(C, right_imgs))


def point_stabilizer_in(C: Group, x: int = 0) -> Subgroup:
    return Subgroup(C, sum(1 << i for i, p in enumerate(C.elements) if p.images[x] == x))


def symmetric_group_on(S: GSet) -> Group:
    return _symmetric_on(S.size)


def group_of_perms(degree: int, gens: Sequence[Perm | str]) -> Group:
    return group_from_generators(degree, gens)


__all__ = [
    "Block", "GSet", "RightAction", "alternating_quotient", "discriminant_is_square",
    "first_point_stabilizer", "g_closure", "gset_from_action", "gset_from_stabilizers",
    "isomorphic_gsets", "natural_gset", "permutation_character", "point_stabilizer_in",
    "quotient_by_right_subgroup", "sn_closure", "subgroup_generators",
]
