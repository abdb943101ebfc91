from __future__ import annotations

from dataclasses import dataclass

import pytest

from gck.group_core import Group, Perm, Subgroup
from gck.gset import GSet, gset_from_stabilizers
from gck.named import group_by_name, symmetric
from gck.permmod import PermModuleHom, hom_from_images

# Generator images listed per domain block; the columns follow the pinned
# orderings x_i, g x_i, g^2 x_i (blocks 1, 2) and x_3, h x_3 (block 3), the rows
# follow y, gy, g^2y, hy, ghy, g^2hy.
S3_HOM_MATRIX = (
    (1, 0, 0, 0, 0, 1, 1, 0),
    (0, 1, 0, 1, 0, 0, 1, 0),
    (0, 0, 1, 0, 1, 0, 1, 0),
    (1, 0, 0, 0, 1, 0, 0, 1),
    (0, 1, 0, 0, 0, 1, 0, 1),
    (0, 0, 1, 1, 0, 0, 0, 1),
)

# The matrix as printed alongside the S3 worked example.  It is not
# G-equivariant for the stated G-sets (its second block encodes (g + gh)y).
PRINTED_S3_MATRIX = (
    (1, 0, 0, 0, 0, 1, 1, 0),
    (0, 1, 0, 1, 0, 0, 1, 0),
    (0, 0, 1, 0, 1, 0, 1, 0),
    (1, 0, 0, 0, 0, 1, 0, 1),
    (0, 1, 0, 1, 0, 0, 0, 1),
    (0, 0, 1, 0, 1, 0, 0, 1),
)


@dataclass
class S3Example:
    G: Group
    g: Perm
    h: Perm
    E: Subgroup  # <h>
    D: Subgroup  # <g>
    S: GSet
    S2: GSet
    phi: PermModuleHom

    def point(self, el: Perm) -> int:
        return self.S2.point_reps.index(self.G.index(el))


def make_s3_example() -> S3Example:
    G = symmetric(3)
    g = Perm.from_cycles("(0 1 2)", 3)
    h = Perm.from_cycles("(0 1)", 3)
    e = Perm.identity(3)
    E = G.subgroup([h])
    D = G.subgroup([g])
    S = gset_from_stabilizers(G, [E, E, D], orderings=[[e, g, g * g], [e, g, g * g], [e, h]])
    S2 = gset_from_stabilizers(G, [G.trivial()], orderings=[[e, g, g * g, h, g * h, g * g * h]])

    def pt(el):
        return S2.point_reps.index(G.index(el))

    images = [
        {pt(e): 1, pt(h): 1},
        {pt(g): 1, pt(h * g): 1},
        {pt(e): 1, pt(g): 1, pt(g * g): 1},
    ]
    phi = hom_from_images(S, S2, images)
    return S3Example(G, g, h, E, D, S, S2, phi)


@pytest.fixture(scope="session")
def s3ex() -> S3Example:
    return make_s3_example()


@pytest.fixture(scope="session")
def S3() -> Group:
    return symmetric(3)


@pytest.fixture(scope="session")
def named():
    return group_by_name


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
