"""Exact monomial expansions of Heckman-Opdam and Macdonald polynomials for classical root systems."""
from __future__ import annotations

__version__ = "0.1.0"

from .exact_arith import Scalar, format_scalar, parse_scalar, reduce_ratfunc, substitute  # noqa: E402
from .heckman_opdam import compute_ho, ho_eigenvalue, ho_matrix_element, ho_matrix_element_generic  # noqa: E402
from .hessenberg import (  # noqa: E402
    MonomialExpansion,
    RegularityViolation,
    TriangularData,
    expand_determinant,
    solve_closed_form,
    solve_recurrence,
)
from .macdonald import (  # noqa: E402
    compute_macdonald,
    compute_macdonald_general_t,
    ho_via_macdonald,
    inverse_kostka,
    mac_eigenvalue,
    mac_matrix_row,
)
from .roots import (  # noqa: E402
    RootSystemSpec,
    dominance_leq,
    dominant_interval,
    dominantize,
    orbit_size,
    parse_weight,
    stabilizer_order,
    weyl_group_order,
    weyl_orbit,
)

__all__ = [
    "MonomialExpansion",
    "RegularityViolation",
    "RootSystemSpec",
    "Scalar",
    "TriangularData",
    "compute_ho",
    "compute_macdonald",
    "compute_macdonald_general_t",
    "dominance_leq",
    "dominant_interval",
    "dominantize",
    "expand_determinant",
    "format_scalar",
    "ho_eigenvalue",
    "ho_matrix_element",
    "ho_matrix_element_generic",
    "ho_via_macdonald",
    "inverse_kostka",
    "mac_eigenvalue",
    "mac_matrix_row",
    "orbit_size",
    "parse_scalar",
    "parse_weight",
    "reduce_ratfunc",
    "solve_closed_form",
    "solve_recurrence",
    "stabilizer_order",
    "substitute",
    "weyl_group_order",
    "weyl_orbit",
]
