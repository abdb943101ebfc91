"""Small library of concrete permutation groups, addressable by name.

Names understood by :func:`group_by_name`: ``Sn``, ``An``, ``Cn``, ``Dn``
(symmetries of the n-gon, order 2n), ``Qn`` (generalized quaternion, order
n), ``Dicn`` (dicyclic, order 4n), ``V4``, ``SL(2,3)``, ``GL(2,3)``, and
direct products joined by ``x`` such as ``C2xC2`` or ``S3xC3``.
"""

from __future__ import annotations

import itertools
import re
from typing import Callable, Sequence

from .errors import ConfigError
from .group_core import DEFAULT_ORDER_CAP, Group, Perm, group_from_generators


def symmetric(n: int) -> Group:
    if n <= 1:
        return group_from_generators(max(n, 1), [], name=f"S{n}")
    gens = [Perm.from_cycles("(" + " ".join(map(str, range(n))) + ")", n), Perm.from_cycles("(0 1)", n)]
    return group_from_generators(n, gens, name=f"S{n}")


def alternating(n: int) -> Group:
    if n <= 2:
        return group_from_generators(max(n, 1), [], name=f"A{n}")
    gens = [Perm.from_cycles(f"(0 1 {k})", n) for k in range(2, n)]
    return group_from_generators(n, gens, name=f"A{n}")


def cyclic(n: int) -> Group:
    if n == 1:
        return group_from_generators(1, [], name="C1")
    return group_from_generators(n, [Perm([(i + 1) % n for i in range(n)])], name=f"C{n}")


def dihedral(n: int) -> Group:
    """Symmetry group of the regular n-gon (order 2n)."""
    if n == 1:
        return cyclic(2)
    if n == 2:
        return direct_product(cyclic(2), cyclic(2))
    rot = Perm([(i + 1) % n for i in range(n)])
    ref = Perm([(-i) % n for i in range(n)])
    return group_from_generators(n, [rot, ref], name=f"D{n}")


def from_multiplication(elements: Sequence, mul: Callable, gens: Sequence, name: str | None = None) -> Group:
    """Left-regular permutation representation of an abstract finite group."""
    elements = list(elements)
    pos = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    perms = [Perm([pos[mul(g, x)] for x in elements]) for g in gens]
    return group_from_generators(n, perms, name=name)


def _mat_mul(p: int):
    def mul(a, b):
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(2)) % p for j in range(2)) for i in range(2)
        )

    return mul


def dicyclic(n: int) -> Group:
    """Dicyclic group of order 4n: <a, x | a^2n = 1, x^2 = a^n, x a x^-1 = a^-1>."""
    m = 2 * n
    # elements (k, s) meaning a^k x^s
    elems = [(k, s) for s in range(2) for k in range(m)]

    def mul(u, v):
        k1, s1 = u
        k2, s2 = v
        if s1 == 0:
            return ((k1 + k2) % m, s2)
        # x a^k2 = a^-k2 x
        k = (k1 - k2) % m
        if s2 == 0:
            return (k, 1)
        return ((k + n) % m, 0)

    return from_multiplication(elems, mul, [(1, 0), (0, 1)], name=f"Dic{n}")


def quaternion(order: int = 8) -> Group:
    if order % 4 or order < 8:
        raise ValueError("generalized quaternion order must be a multiple of 4, at least 8")
    G = dicyclic(order // 4)
    G.name = f"Q{order}"
    return G


def _linear_action(p: int, mats) -> list[Perm]:
    vecs = [v for v in itertools.product(range(p), repeat=2) if any(v)]
    pos = {v: i for i, v in enumerate(vecs)}
    out = []
    for a in mats:
        out.append(Perm([pos[tuple((a[i][0] * v[0] + a[i][1] * v[1]) % p for i in range(2))] for v in vecs]))
    return out


def sl23() -> Group:
    gens = _linear_action(3, [((1, 1), (0, 1)), ((0, 1), (2, 0))])
    return group_from_generators(8, gens, name="SL(2,3)")


def gl23() -> Group:
    gens = _linear_action(3, [((1, 1), (0, 1)), ((0, 1), (2, 0)), ((2, 0), (0, 1))])
    return group_from_generators(8, gens, name="GL(2,3)")


def direct_product(*factors: Group) -> Group:
    degree = sum(G.degree for G in factors)
    gens = []
    offset = 0
    for G in factors:
        for g in G.generators:
            images = list(range(degree))
            for i, j in enumerate(g.images):
                images[offset + i] = offset + j
            gens.append(Perm(images))
        offset += G.degree
    name = "x".join(G.name or "?" for G in factors)
    return group_from_generators(degree, gens, name=name)


_SIMPLE = [
    (re.compile(r"^S(\d+)$"), symmetric),
    (re.compile(r"^A(\d+)$"), alternating),
    (re.compile(r"^C(\d+)$"), cyclic),
    (re.compile(r"^D(\d+)$"), dihedral),
    (re.compile(r"^Q(\d+)$"), quaternion),
    (re.compile(r"^Dic(\d+)$"), dicyclic),
]


def _factor(name: str) -> Group:
    if name in ("V4", "K4"):
        G = direct_product(cyclic(2), cyclic(2))
        G.name = "V4"
        return G
    if name == "SL(2,3)":
        return sl23()
    if name == "GL(2,3)":
        return gl23()
    for pat, fn in _SIMPLE:
        m = pat.match(name)
        if m:
            return fn(int(m.group(1)))
    raise ConfigError(f"unknown group name {name!r}")


def group_by_name(name: str) -> Group:
    parts = [p for p in re.split(r"x(?![^()]*\))", name.strip()) if p]
    if not parts:
        raise ConfigError("empty group name")
    if len(parts) == 1:
        return _factor(parts[0])
    G = direct_product(*(_factor(p) for p in parts))
    G.name = name.strip()
    return G


# Groups used by the exhaustive property sweeps. Orders are at most 48.
SWEEP_GROUP_NAMES_24 = [
    "C1", "C2", "C3", "C4", "V4", "C5", "C6", "S3", "C7", "C8", "C2xC2xC2",
    "D4", "Q8", "C4xC2", "C9", "D5", "C10", "A4", "D6", "Dic3", "C12", "C2xC6",
    "S4", "SL(2,3)",
]
SWEEP_GROUP_NAMES_48 = SWEEP_GROUP_NAMES_24 + [
    "S3xC3", "D10", "C2xA4", "S3xS3", "C3xA4", "GL(2,3)", "S4xC2", "D12",
]

__all__ = [
    "symmetric", "alternating", "cyclic", "dihedral", "dicyclic", "quaternion",
    "sl23", "gl23", "direct_product", "from_multiplication", "group_by_name",
    "DEFAULT_ORDER_CAP", "SWEEP_GROUP_NAMES_24", "SWEEP_GROUP_NAMES_48",
]
