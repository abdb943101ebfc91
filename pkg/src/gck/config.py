"""JSON job configuration for the command-line front end.

A config names a group, optional named elements and subgroups, and one
task payload.  Elements and subgroup generators may be written as cycle
notation ``"(0 1 2)"``, image arrays, or words in named elements such as
``"g^2h"`` or ``"g*h^-1"``.  Unknown fields are rejected.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .errors import ConfigError, GCKError
from .group_core import Group, Perm, Subgroup, group_from_generators
from .named import group_by_name

ElementSpec = Union[str, list[int]]
Rank = Union[int, str]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class GroupSpec(_Strict):
    name: str | None = None
    degree: int | None = None
    generators: list[ElementSpec] | None = None

    @model_validator(mode="after")
    def _one_form(self):
        if (self.name is None) == (self.degree is None):
            raise ValueError("give either a group name or a degree with generators")
        if self.degree is not None and self.generators is None:
            raise ValueError("a degree needs a generator list")
        return self


class BlockSpec(_Strict):
    stabilizer: str
    ordering: list[str] | None = None


class ImageTerm(_Strict):
    element: str
    coeff: int = 1
    block: int = 0


class HomSpec(_Strict):
    domain: list[BlockSpec]
    codomain: list[BlockSpec]
    images: list[list[ImageTerm]] | None = None
    matrix: list[list[int]] | None = None

    @model_validator(mode="after")
    def _one_form(self):
        if (self.images is None) == (self.matrix is None):
            raise ValueError("give exactly one of images or matrix")
        return self


class CoverSpec(_Strict):
    component_stabilizer: str
    base_genus: int = Field(ge=0)
    branch_stabilizers: list[str] = []


class ObservationSpec(_Strict):
    subgroup: str
    rank: Rank
    kind: Literal["mordell_weil", "p_selmer"] = "mordell_weil"
    p: int | None = None


class PlaceAboveSpec(_Strict):
    label: str
    deficient: bool


class ComponentSpec(_Strict):
    label: str
    places_above: list[PlaceAboveSpec]


class PlaceSpec(_Strict):
    place: str
    components: list[ComponentSpec]


class JobConfig(_Strict):
    schema_version: Literal[1] = Field(alias="schema")
    group: GroupSpec
    elements: dict[str, ElementSpec] = {}
    subgroups: dict[str, list[str]] = {}
    irrep_names: dict[str, str] = {}
    gset: list[BlockSpec] | None = None
    container: GroupSpec | None = None
    hom: HomSpec | None = None
    cover: CoverSpec | None = None
    character: dict[str, int] | None = None
    observations: list[ObservationSpec] | None = None
    vanishing: dict[str, int] | None = None
    places: list[PlaceSpec] | None = None

    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)


def load_config(path: str | Path) -> JobConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc.msg} at line {exc.lineno}") from None
    return parse_config(data)


def parse_config(data: Any) -> JobConfig:
    try:
        return JobConfig.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        loc = ".".join(str(p) for p in first["loc"])
        raise ConfigError(f"invalid config at {loc or '<root>'}: {first['msg']}", errors=len(exc.errors())) from None


# -- resolution -------------------------------------------------------------


def build_group(spec: GroupSpec) -> Group:
    if spec.name is not None:
        return group_by_name(spec.name)
    try:
        return group_from_generators(spec.degree, [g if isinstance(g, str) else list(g) for g in spec.generators or []])
    except GCKError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


class Context:
    """A group with resolved names for elements and subgroups."""

    def __init__(self, G: Group, elements: dict[str, Perm] | None = None, subgroups: dict[str, Subgroup] | None = None):
        self.G = G
        self.elements = dict(elements or {})
        self.subgroups = dict(subgroups or {})

    @classmethod
    def from_config(cls, cfg: JobConfig) -> Context:
        ctx = cls(build_group(cfg.group))
        for name, spec in cfg.elements.items():
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name) or name in ("e", "1"):
                raise ConfigError(f"invalid element name {name!r}")
            ctx.elements[name] = ctx.perm(spec)
        for name, gens in cfg.subgroups.items():
            ctx.subgroups[name] = ctx.G.subgroup([ctx.element(w) for w in gens])
        return ctx

    def perm(self, spec: ElementSpec) -> Perm:
        G = self.G
        try:
            p = Perm.parse(spec if isinstance(spec, str) else list(spec), G.degree)
        except GCKError as exc:
            raise ConfigError(str(exc)) from None
        if p not in G:
            raise ConfigError(f"{p} is not an element of the group")
        return p

    def element(self, spec: ElementSpec) -> int:
        """Index of an element given by a word, cycle string or image array."""
        G = self.G
        if not isinstance(spec, str) or spec.lstrip().startswith("("):
            return G.index(self.perm(spec))
        text = spec.replace(" ", "")
        if text in ("", "1", "e"):
            return 0
        names = sorted(self.elements, key=len, reverse=True)
        out = 0
        pos = 0
        while pos < len(text):
            if text[pos] == "*":
                pos += 1
                continue
            name = next((n for n in names if text.startswith(n, pos)), None)
            if name is None:
                raise ConfigError(f"cannot parse word {spec!r} at position {pos}")
            pos += len(name)
            m = re.match(r"\^(-?\d+)", text[pos:])
            exp = 1
            if m:
                exp = int(m.group(1))
                pos += m.end()
            out = G.mul(out, G.power(G.index(self.elements[name]), exp))
        return out

    def subgroup(self, name: str) -> Subgroup:
        if name in self.subgroups:
            return self.subgroups[name]
        if name in ("e", "1"):
            return self.G.trivial()
        if name == "G":
            return self.G.whole()
        raise ConfigError(f"unknown subgroup {name!r}")


def build_gset(ctx: Context, blocks: list[BlockSpec]):
    from .gset import gset_from_stabilizers

    stabs = [ctx.subgroup(b.stabilizer) for b in blocks]
    orderings = [[ctx.element(w) for w in b.ordering] if b.ordering is not None else None for b in blocks]
    return gset_from_stabilizers(ctx.G, stabs, orderings)


def build_hom(ctx: Context, spec: HomSpec):
    from .permmod import hom_from_images, hom_from_matrix

    S = build_gset(ctx, spec.domain)
    S2 = build_gset(ctx, spec.codomain)
    if spec.matrix is not None:
        return hom_from_matrix(S, S2, spec.matrix)
    assert spec.images is not None
    if len(spec.images) != len(S.blocks):
        raise ConfigError(f"hom needs one image per domain block ({len(S.blocks)}), got {len(spec.images)}")
    images = []
    for terms in spec.images:
        img: dict[int, int] = {}
        for t in terms:
            if not 0 <= t.block < len(S2.blocks):
                raise ConfigError(f"codomain block {t.block} does not exist")
            blk = S2.blocks[t.block]
            pt = S2.act(ctx.element(t.element), blk.base)
            img[pt] = img.get(pt, 0) + t.coeff
        images.append(img)
    return hom_from_images(S, S2, images)


def build_cover(ctx: Context, spec: CoverSpec):
    from .rh import CoverData

    return CoverData(ctx.G, ctx.subgroup(spec.component_stabilizer), spec.base_genus,
                     tuple(ctx.subgroup(s) for s in spec.branch_stabilizers))


def build_character(ctx: Context, mults: dict[str, int]):
    from .chars import VirtualCharacter, character_table

    table = character_table(ctx.G)
    vec = [0] * len(table)
    for label, m in mults.items():
        if label not in table.labels:
            raise ConfigError(f"unknown irreducible {label!r}; labels are {', '.join(table.labels)}")
        vec[table.labels.index(label)] = m
    return VirtualCharacter(table, vec)


def build_observations(ctx: Context, specs: list[ObservationSpec]):
    from .descent import RankObservation

    out = []
    for o in specs:
        try:
            out.append(RankObservation(ctx.subgroup(o.subgroup), o.rank, o.kind, o.p))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    return out


def build_places(specs: list[PlaceSpec]):
    from .sha_parity import make_place

    return [make_place(p.place, [(c.label, [(w.label, w.deficient) for w in c.places_above]) for c in p.components])
            for p in specs]


def require(cfg: JobConfig | None, field: str):
    value = getattr(cfg, field) if cfg is not None else None
    if value is None:
        raise ConfigError(f"config needs a {field!r} section for this command")
    return value
