"""Finitely generated modules over the integers."""

from .decide import (
    DEFAULT_BOUND,
    ZVerdict,
    recheck_thm47,
    representatives,
    revalidate_witness,
    z_decide_strongly_irreducible,
    z_witness_search,
)
from .lattice import (
    FiniteCoordinates,
    Invariants,
    ZModule,
    ZSubmodule,
    is_prime,
    lattice_meet,
    p_multiple_is_proper,
    prime_factors,
    valuation,
    z_ann,
    z_arithmetical_at,
    z_canonicalize,
    z_colon,
    z_finite_coordinates,
    z_intersect,
    z_is_multiplication,
    z_is_primary,
    z_is_prime_submodule,
    z_localized_invariants,
    z_membership,
    z_quotient_invariants,
    z_radical,
    z_regular_element_in,
    z_relative_invariants,
    z_scale,
    z_span,
    z_submodule,
    z_sum,
    z_symbolic_power,
    z_to_finite,
    zmodule,
)
from .normalform import hnf, snf
