"""Exact checks for finite quantum logics, Hermitian spaces over Q and Q(sqrt d), their states and symmetries."""
from __future__ import annotations

from .config import RunConfig
from .effects import (AtomStates, Effect, Observable, Operation, check_filter_axioms,
                      check_orthogonality_postulate, check_theorem2_conclusions, luders_filter)
from .errors import QLogicError
from .hermitian import HermitianSpace, Subspace, Vector, form_eval, join, meet, ortho, sasaki
from .logic import (FiniteLogic, GeneratedSublattice, boolean, check_covering_abstract,
                    check_ortholattice, check_orthomodular, mo2, o6)
from .report import CheckReport, render
from .scalars import QQ, FieldDescriptor, FieldScalar, is_rational_square, quadratic
from .states import (StateMeasure, atom_induced_state, build_polytope, enumerate_pure_states,
                     extension_state)
from .suites import run_suite
from .symmetry import (LinearSymmetry, check_abundance, check_regularity, swap_symmetry,
                       verify_form_identity)

__version__ = "0.1.0"

__all__ = [
    "AtomStates", "CheckReport", "Effect", "FieldDescriptor", "FieldScalar", "FiniteLogic",
    "GeneratedSublattice", "HermitianSpace", "LinearSymmetry", "Observable", "Operation", "QQ",
    "QLogicError", "RunConfig", "StateMeasure", "Subspace", "Vector", "atom_induced_state",
    "boolean", "build_polytope", "check_abundance", "check_covering_abstract",
    "check_filter_axioms", "check_ortholattice", "check_orthogonality_postulate",
    "check_orthomodular", "check_regularity", "check_theorem2_conclusions",
    "enumerate_pure_states", "extension_state", "form_eval", "is_rational_square", "join",
    "luders_filter", "meet", "mo2", "o6", "ortho", "quadratic", "render", "run_suite", "sasaki",
    "swap_symmetry", "verify_form_identity",
]
