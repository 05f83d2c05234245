"""Singular-moduli toolkit: class groups of imaginary quadratic orders,
rigorously evaluated j-invariants, multiplicative-relation bounds, and the
exact case-analysis checks, backed by the C++ core."""

try:
    from singmod._core import *  # noqa: F401,F403  (installed layout)
except ImportError:  # pragma: no cover - build-tree layout
    from _core import *  # noqa: F401,F403

__all__ = [
    "class_number",
    "split_discriminant",
    "reduced_forms",
    "reduce_form",
    "compose",
    "psi",
    "kronecker",
    "class_group_summary",
    "s_of_a",
    "denominator_count_bounds",
    "admits_denominator",
    "q_set",
    "construct_isogeny_degree",
    "j_coefficients",
    "singular_modulus",
    "singular_modulus_integer",
    "verify_expansion_constants",
    "masser_basis_bound",
    "erootofy_holds",
    "eassumpdelta_holds",
    "verify_relation_exact",
    "relation_lattice_bruteforce",
    "sieve_report",
    "watkins_extension_bound",
    "check_all_cases",
]
