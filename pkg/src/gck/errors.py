"""Exception hierarchy.

Every domain error carries a stable ``code`` (used by the CLI diagnostic) and an
optional ``details`` mapping with machine-readable context such as witnesses.
"""

from __future__ import annotations

from typing import Any


class GCKError(Exception):
    code = "domain_error"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> dict[str, Any]:
        return {"error": self.code, "message": str(self), "details": self.details}


class InvalidPermutation(GCKError):
    code = "invalid_permutation"


class OrderCapExceeded(GCKError):
    code = "order_cap_exceeded"


class SizeCapExceeded(GCKError):
    code = "size_cap_exceeded"


class NotASubgroup(GCKError):
    code = "not_a_subgroup"


class GroupMismatch(GCKError):
    code = "group_mismatch"


class NoRightAction(GCKError):
    code = "no_right_action"


class NotContaining(GCKError):
    code = "not_containing"


class NotTransitive(GCKError):
    code = "not_transitive"


class NotEquivariant(GCKError):
    code = "not_equivariant"


class ShapeMismatch(GCKError):
    code = "shape_mismatch"


class NotVirtualCharacter(GCKError):
    code = "not_virtual_character"


class NotIrreducible(GCKError):
    code = "not_irreducible"


class NonCyclicStabilizer(GCKError):
    code = "non_cyclic_stabilizer"


class InconsistentBranchData(GCKError):
    code = "inconsistent_branch_data"


class NotInBasisSpan(GCKError):
    code = "not_in_basis_span"


class MixedKinds(GCKError):
    code = "mixed_kinds"


class UnderdeterminedInput(GCKError):
    code = "underdetermined_input"


class EmptyPlacesAbove(GCKError):
    code = "empty_places_above"


class InvalidModule(GCKError):
    code = "invalid_module"


class ConfigError(Exception):
    """Malformed or schema-violating job configuration (CLI exit code 2)."""

    code = "config_error"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> dict[str, Any]:
        return {"error": self.code, "message": str(self), "details": self.details}
