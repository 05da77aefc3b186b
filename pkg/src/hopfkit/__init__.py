"""Exact computations with finite-dimensional Hopf algebras.

Structure constants are rational (``fractions.Fraction``) and every check is
exact.  The package covers Hopf algebra axioms, duals, integrals and
compact quantum subgroups, module algebras and smash products, induced
actions on invariant subalgebras, Morita contexts with surjectivity
certificates, and the context for finitely supported functions on
possibly infinite groups.
"""

__version__ = "0.1.0"

from .algebra import UnitalAlgebra, base_field, tensor_algebra
from .hopf import (
    Bialgebra,
    HopfAlgebra,
    HopfMorphism,
    double_dual_iso,
    dual,
    is_compact_quantum_subgroup,
    is_unimodular,
    left_integrals,
    make_hopf,
    right_integrals,
    verify_bialgebra,
    verify_hopf,
)
from .actions import ModuleAlgebra, invariants, smash_product, tensor_action, verify_module_algebra
from .morita import MoritaContext, verify_compatibility, verify_surjectivity, verify_theorem_morita
from .report import Report

__all__ = [
    "__version__",
    "UnitalAlgebra", "base_field", "tensor_algebra",
    "Bialgebra", "HopfAlgebra", "HopfMorphism", "double_dual_iso", "dual", "is_compact_quantum_subgroup",
    "is_unimodular", "left_integrals", "make_hopf", "right_integrals", "verify_bialgebra", "verify_hopf",
    "ModuleAlgebra", "invariants", "smash_product", "tensor_action", "verify_module_algebra",
    "MoritaContext", "verify_compatibility", "verify_surjectivity", "verify_theorem_morita",
    "Report",
]
