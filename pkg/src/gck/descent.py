"""G-descent solvers for multiplicities of irreducibles.

Given ranks of the quotients X/H, the multiplicities ``m_rho`` of the
irreducibles in ``Jac_X(K) ⊗ Q`` (or in the dual Selmer group) satisfy

    Σ_rho m_rho · <Ind_H^G 1, rho> = rank(H)          for each observation.

Ranks may be integers or symbols; the system is solved over linear forms in
those symbols.  Optional constraints: ``m_rho = 0`` when rho does not occur
in a supplied character V, and ``m_rho = m_rho*`` for Selmer data.

Heights rescale by ``|G|`` under pull-back along the quotient map; heights
are not modelled here, so that identity is documentation only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .chars import CharacterTable, VirtualCharacter, character_table, induce_trivial, inner_product
from .errors import MixedKinds, NotASubgroup, UnderdeterminedInput
from .group_core import Group, Subgroup

_SYMBOL_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class LinearForm:
    """``const + Σ coeff·symbol`` with rational coefficients."""

    __slots__ = ("const", "terms")

    def __init__(self, const=0, terms: Mapping[str, Fraction] | Iterable[tuple[str, Fraction]] = ()):
        self.const = Fraction(const)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[str, Fraction] = {}
        for s, c in items:
            acc[s] = acc.get(s, Fraction(0)) + Fraction(c)
        self.terms = tuple(sorted((s, c) for s, c in acc.items() if c))

    @classmethod
    def symbol(cls, name: str) -> LinearForm:
        return cls(0, {name: 1})

    @classmethod
    def parse(cls, value: int | str | LinearForm) -> LinearForm:
        if isinstance(value, LinearForm):
            return value
        if isinstance(value, int):
            return cls(value)
        text = str(value).strip()
        if re.fullmatch(r"-?\d+", text):
            return cls(int(text))
        if not _SYMBOL_RE.match(text):
            raise ValueError(f"rank must be an integer or a symbol name, got {value!r}")
        return cls.symbol(text)

    def is_constant(self) -> bool:
        return not self.terms

    def symbols(self) -> set[str]:
        return {s for s, _ in self.terms}

    def __add__(self, other: LinearForm) -> LinearForm:
        return LinearForm(self.const + other.const, list(self.terms) + list(other.terms))

    def __sub__(self, other: LinearForm) -> LinearForm:
        return self + other * -1

    def __mul__(self, k) -> LinearForm:
        k = Fraction(k)
        return LinearForm(self.const * k, [(s, c * k) for s, c in self.terms])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LinearForm(other)
        return isinstance(other, LinearForm) and self.const == other.const and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.const, self.terms))

    def is_zero(self) -> bool:
        return self.const == 0 and not self.terms

    def substitute(self, values: Mapping[str, int | Fraction]) -> LinearForm:
        out = LinearForm(self.const)
        rest = []
        for s, c in self.terms:
            if s in values:
                out = out + LinearForm(Fraction(values[s]) * c)
            else:
                rest.append((s, c))
        return out + LinearForm(0, rest)

    def __str__(self) -> str:
        parts = []
        for s, c in self.terms:
            if c == 1:
                parts.append(s)
            elif c == -1:
                parts.append("-" + s)
            else:
                parts.append(f"{c}*{s}")
        if self.const or not parts:
            parts.append(str(self.const))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"LinearForm({self})"


@dataclass(frozen=True)
class RankObservation:
    subgroup: Subgroup
    rank: LinearForm
    kind: str = "mordell_weil"
    p: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "rank", LinearForm.parse(self.rank))
        if self.kind not in ("mordell_weil", "p_selmer"):
            raise ValueError(f"unknown observation kind {self.kind!r}")
        if self.rank.is_constant() and self.rank.const < 0:
            raise ValueError("observed ranks are non-negative")

    @property
    def kind_key(self) -> tuple[str, int | None]:
        return (self.kind, self.p if self.kind == "p_selmer" else None)


@dataclass(frozen=True)
class Equation:
    """``Σ coeffs[rho]·m_rho = rhs`` with a human-readable origin."""

    coeffs: tuple[Fraction, ...]
    rhs: LinearForm
    origin: str

    def describe(self, labels: Sequence[str]) -> str:
        lhs = []
        for c, lab in zip(self.coeffs, labels):
            if c == 0:
                continue
            var = f"m[{lab}]"
            lhs.append(var if c == 1 else ("-" + var if c == -1 else f"{c}*{var}"))
        text = " + ".join(lhs).replace("+ -", "- ") if lhs else "0"
        return f"{text} = {self.rhs}  ({self.origin})"


@dataclass(frozen=True)
class MultiplicitySolution:
    table: CharacterTable
    multiplicities: tuple[LinearForm, ...]
    status: str
    free_parameters: tuple[str, ...] = ()
    conditions: tuple[LinearForm, ...] = ()
    witness: str | None = None
    equations: tuple[Equation, ...] = field(default=(), compare=False)

    def multiplicity(self, label: str) -> LinearForm:
        return self.multiplicities[self.table.labels.index(label)]

    def format(self, names: Mapping[str, str] | None = None) -> str:
        names = names or {}
        if self.status == "inconsistent":
            return f"inconsistent: {self.witness}"
        terms = []
        for lab, m in zip(self.table.labels, self.multiplicities):
            if m.is_zero():
                continue
            name = names.get(lab, lab)
            terms.append(name if m == 1 else f"{name}^⊕({m})")
        return " ⊕ ".join(terms) if terms else "0"

    def to_json(self, names: Mapping[str, str] | None = None) -> dict:
        names = names or {}
        return {
            "status": self.status,
            "multiplicities": {names.get(lab, lab): str(m) for lab, m in zip(self.table.labels, self.multiplicities)},
            "free_parameters": list(self.free_parameters),
            "conditions": [f"{c} = 0" for c in self.conditions],
            "witness": self.witness,
            "decomposition": self.format(names) if self.status != "inconsistent" else None,
        }


def vanishing_constraints(V: VirtualCharacter) -> frozenset[int]:
    """Indices of irreducibles rho with <rho, V> = 0."""
    return frozenset(i for i, m in enumerate(V.multiplicities) if m == 0)


def fixed_dimensions(G: Group, H: Subgroup, table: CharacterTable) -> tuple[Fraction, ...]:
    """``dim rho^H = <Ind_H^G 1, rho>`` for every irreducible."""
    ind = induce_trivial(H, G)
    return tuple(Fraction(inner_product(ind, rho)) for rho in table)


def _describe_subgroup(H: Subgroup) -> str:
    from .gset import _generators_of

    gens = ", ".join(str(p) for p in _generators_of(H))
    return f"H = <{gens}>" if gens else "H = e"


def _equations(G: Group, obs: Sequence[RankObservation], table: CharacterTable, V: VirtualCharacter | None, self_dual: bool) -> list[Equation]:
    eqs = []
    for o in sorted(obs, key=lambda o: (-o.subgroup.order, o.subgroup.indices)):
        H = o.subgroup
        if H.parent != G:
            raise NotASubgroup("observation subgroup belongs to a different group")
        coeffs = fixed_dimensions(G, H, table)
        eqs.append(Equation(coeffs, o.rank, f"rank of X/H, {_describe_subgroup(H)}"))
    k = len(table)
    if V is not None:
        for i in sorted(vanishing_constraints(V)):
            eqs.append(Equation(tuple(Fraction(int(j == i)) for j in range(k)), LinearForm(0),
                                f"{table.labels[i]} does not occur in V"))
    if self_dual:
        for i, j in enumerate(table.dual_index):
            if i < j:
                eqs.append(Equation(tuple(Fraction((t == i) - (t == j)) for t in range(k)), LinearForm(0),
                                    f"self-duality {table.labels[i]} ~ {table.labels[j]}"))
    return eqs


def rank_solver(
    G: Group,
    obs: Sequence[RankObservation],
    V: VirtualCharacter | None = None,
    self_dual: bool | None = None,
) -> MultiplicitySolution:
    kinds = {o.kind_key for o in obs}
    if len(kinds) > 1:
        raise MixedKinds("observations mix Mordell-Weil and Selmer data", kinds=sorted(map(str, kinds)))
    if self_dual is None:
        self_dual = bool(kinds) and next(iter(kinds))[0] == "p_selmer"
    table = character_table(G)
    eqs = _equations(G, obs, table, V, self_dual)
    return _solve(table, eqs)


def selmer_decomposition(G: Group, obs: Sequence[RankObservation], V: VirtualCharacter | None = None) -> MultiplicitySolution:
    kinds = {o.kind_key for o in obs}
    if len(kinds) > 1:
        raise MixedKinds("observations mix different kinds", kinds=sorted(map(str, kinds)))
    return rank_solver(G, obs, V, self_dual=True)


def _solve(table: CharacterTable, eqs: Sequence[Equation]) -> MultiplicitySolution:
    k = len(table)
    labels = table.labels
    rows: list[tuple[list[Fraction], LinearForm]] = []  # reduced rows (pivot normalized)
    pivots: list[int] = []
    conditions: list[LinearForm] = []

    def inconsistent(msg: str) -> MultiplicitySolution:
        return MultiplicitySolution(table, tuple(LinearForm(0) for _ in range(k)), "inconsistent",
                                    witness=msg, equations=tuple(eqs))

    for eq in eqs:
        coeffs = list(eq.coeffs)
        rhs = eq.rhs
        for (prow, prhs), pc in zip(rows, pivots):
            f = coeffs[pc]
            if f:
                coeffs = [a - f * b for a, b in zip(coeffs, prow)]
                rhs = rhs - prhs * f
        piv = next((c for c in range(k) if coeffs[c] != 0), None)
        if piv is None:
            if rhs.is_zero():
                continue
            if rhs.is_constant():
                return inconsistent(eq.describe(labels))
            conditions.append(rhs)
            continue
        inv = 1 / coeffs[piv]
        coeffs = [a * inv for a in coeffs]
        rhs = rhs * inv
        for n, ((prow, prhs), pc) in enumerate(zip(rows, pivots)):
            f = prow[piv]
            if f:
                rows[n] = ([a - f * b for a, b in zip(prow, coeffs)], prhs - rhs * f)
        rows.append((coeffs, rhs))
        pivots.append(piv)
    free = [c for c in range(k) if c not in pivots]
    free_names = tuple(f"m[{labels[c]}]" for c in free)
    values: list[LinearForm] = [LinearForm(0)] * k
    for c, name in zip(free, free_names):
        values[c] = LinearForm.symbol(name)
    for (prow, prhs), pc in zip(rows, pivots):
        val = prhs
        for c, name in zip(free, free_names):
            if prow[c]:
                val = val - LinearForm.symbol(name) * prow[c]
        values[pc] = val
    status = "determined" if not free else "underdetermined"
    symbolic = any(not e.rhs.is_constant() for e in eqs)
    if not symbolic:
        witness = _nonnegativity_witness(values, free, free_names, labels, rows, pivots)
        if witness:
            return inconsistent(witness)
    return MultiplicitySolution(table, tuple(values), status, free_names, tuple(conditions), None, tuple(eqs))


def _nonnegativity_witness(values, free, free_names, labels, rows, pivots) -> str | None:
    if not free:
        for lab, v in zip(labels, values):
            c = v.const
            if c.denominator != 1:
                return f"m[{lab}] = {c} is not an integer"
            if c < 0:
                return f"m[{lab}] = {c} is negative"
        return None
    return None if _integer_feasible(values, free_names) else "no non-negative integer solution exists"


def _integer_feasible(values: Sequence[LinearForm], free_names: Sequence[str]) -> bool:
    """Existence of non-negative integers for the free parameters making every m integral and >= 0."""
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp

    n = len(free_names)
    index = {s: i for i, s in enumerate(free_names)}
    # integrality of the dependent values: scale each form to integer coefficients
    # and require it to equal an auxiliary integer variable
    forms = [v for v in values if not (len(v.terms) == 1 and v.const == 0 and v.terms[0][1] == 1)]
    m = len(forms)
    A = np.zeros((m, n + m))
    lb = np.zeros(m)
    for r, form in enumerate(forms):
        for s, c in form.terms:
            A[r, index[s]] = float(c)
        A[r, n + r] = -1.0
        lb[r] = -float(form.const)
    if m == 0:
        return True
    cons = LinearConstraint(A, lb, lb)
    res = milp(c=np.zeros(n + m), constraints=[cons], integrality=np.ones(n + m), bounds=Bounds(0, np.inf))
    return res.status == 0


def self_duality_check(m: MultiplicitySolution) -> bool:
    if m.status != "determined":
        raise UnderdeterminedInput("self-duality check needs a determined solution", status=m.status)
    t = m.table
    return all(m.multiplicities[i] == m.multiplicities[j] for i, j in enumerate(t.dual_index))


def solution_from_multiplicities(table: CharacterTable, mults: Sequence[int | str]) -> MultiplicitySolution:
    return MultiplicitySolution(table, tuple(LinearForm.parse(x) for x in mults), "determined")


__all__ = [
    "Equation", "LinearForm", "MultiplicitySolution", "RankObservation", "fixed_dimensions",
    "rank_solver", "selmer_decomposition", "self_duality_check", "solution_from_multiplicities",
    "vanishing_constraints",
]
