"""Exact 3D operators, their tetrahedron and reflection equations, and crystal limits."""

from ._tetra import (
    CrystalError,
    QCoeff,
    SparseOp,
    crystal_element,
    equation_names,
    family,
    family_names,
    operator_for,
    pbw_transition,
    relation_names,
    selftest,
    verify,
    verify_combinatorial,
    verify_involution,
    verify_mutated,
    verify_relation,
    x_oracle,
    z_gamma,
)

__all__ = [
    "CrystalError",
    "QCoeff",
    "SparseOp",
    "crystal_element",
    "equation_names",
    "family",
    "family_names",
    "operator_for",
    "pbw_transition",
    "relation_names",
    "selftest",
    "verify",
    "verify_combinatorial",
    "verify_involution",
    "verify_mutated",
    "verify_relation",
    "x_oracle",
    "z_gamma",
]
