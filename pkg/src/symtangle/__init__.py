"""Permutation-symmetrized multiqubit basis states and entanglement diagnostics."""

from .harmonics import LabeledState, gram_rank, named_state, symmetric_basis, tableau_basis
from .permgroup import (
    GroupAlgebraElement,
    Permutation,
    YoungDiagram,
    YoungTableau,
    group_elements,
    standard_tableaux,
    young_idempotent,
)
from .qstate import ExactState, FloatState, apply_algebra_element, apply_permutation, t_operator

__all__ = [
    "ExactState",
    "FloatState",
    "GroupAlgebraElement",
    "LabeledState",
    "Permutation",
    "YoungDiagram",
    "YoungTableau",
    "apply_algebra_element",
    "apply_permutation",
    "gram_rank",
    "group_elements",
    "named_state",
    "standard_tableaux",
    "symmetric_basis",
    "t_operator",
    "tableau_basis",
    "young_idempotent",
]

__version__ = "0.1.0"
