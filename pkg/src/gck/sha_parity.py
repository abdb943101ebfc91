"""Square class of #Sha_0[2^∞] from local deficiency data.

Each place v of the base field contributes μ_v = Π_w μ_{L_w}(Y) over the
components Y and the places w above v, with μ = 2 for a deficient pair and
1 otherwise.  Only powers of 2 occur, so the class in Q^×/Q^×2 is 1 or 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyPlacesAbove


@dataclass(frozen=True)
class SquareClass:
    value: int

    def __post_init__(self):
        if self.value not in (1, 2):
            raise ValueError("square classes here are 1 or 2")

    def __mul__(self, other: SquareClass) -> SquareClass:
        return SquareClass(1 if self.value == other.value else 2)

    @classmethod
    def from_exponent(cls, e: int) -> SquareClass:
        return cls(2 if e % 2 else 1)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class PlaceAbove:
    label: str
    deficient: bool


@dataclass(frozen=True)
class ComponentData:
    label: str
    places_above: tuple[PlaceAbove, ...]


@dataclass(frozen=True)
class LocalDeficiencyData:
    place: str
    components: tuple[ComponentData, ...]

    def deficient_count(self) -> int:
        return sum(1 for c in self.components for w in c.places_above if w.deficient)

    def split(self, at: int) -> tuple[LocalDeficiencyData, LocalDeficiencyData]:
        """Two pieces holding the first ``at`` components and the rest."""
        return (
            LocalDeficiencyData(self.place, self.components[:at]),
            LocalDeficiencyData(self.place, self.components[at:]),
        )


def make_place(place: str, components: Iterable[tuple[str, Sequence[tuple[str, bool]]]]) -> LocalDeficiencyData:
    comps = tuple(
        ComponentData(label, tuple(PlaceAbove(w, bool(d)) for w, d in above)) for label, above in components
    )
    return LocalDeficiencyData(place, comps)


def mu_place(d: LocalDeficiencyData) -> SquareClass:
    for c in d.components:
        if not c.places_above:
            raise EmptyPlacesAbove(f"component {c.label} has no places above {d.place}", place=d.place, component=c.label)
    return SquareClass.from_exponent(d.deficient_count())


def sha_two_class(places: Sequence[LocalDeficiencyData]) -> SquareClass:
    out = SquareClass(1)
    for d in places:
        out = out * mu_place(d)
    return out


__all__ = [
    "ComponentData", "LocalDeficiencyData", "PlaceAbove", "SquareClass", "make_place",
    "mu_place", "sha_two_class",
]
