"""Exact pseudo-Groebner basis computations for multivariate polynomial
ideals over rings of integers of number fields."""

from .numberfield import (
    FieldElem,
    FracIdeal,
    NumberField,
    PrimeIdeal,
    express_in_ideal_sum,
    factor_ideal,
    ideal_from_generators,
    ideal_small_rep,
    prime_decompose,
    reduce_elem_mod_ideal,
)
from .mpoly import (
    FieldGB,
    MonomialOrder,
    Poly,
    PolyRing,
    field_buchberger,
    field_normal_form,
    jacobian_minors,
    lift_one,
    partial_derivative,
)
from .pseudo import (
    BuchbergerStats,
    PseudoBasis,
    PseudoPoly,
    buchberger,
    can_reduce,
    canonicalize,
    coeff_reduce,
    expand_to_classical,
    is_groebner,
    is_pseudo_syzygy,
    lt_ideal_member,
    product_criterion_applies,
    reduce_full,
    reduce_step,
    spoly,
    strong_basis,
)
from .apps import (
    AffineScheme,
    BadPrimesReport,
    bad_primes,
    eliminate,
    find_conductor_ideal,
    ideal_intersection,
    ideal_membership,
    intersect_with_R,
    singular_ideal,
)

__all__ = [name for name in dir() if not name.startswith("_")]
