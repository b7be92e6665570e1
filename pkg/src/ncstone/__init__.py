"""Finite Boolean inverse semigroups, Boolean groupoids and the duality between them."""

from .duality import alpha, beta, dual_functor, dual_morphism, prime_filters, stone_groupoid
from .groupoid import FinGroupoid, kb
from .invsemi import FinInvSemi, is_boolean, symmetric_inverse_monoid
from .unitize import compose_unitized, group_of_units, unitize_finite

__version__ = "0.1.0"

__all__ = [
    "FinGroupoid", "FinInvSemi", "alpha", "beta", "compose_unitized", "dual_functor",
    "dual_morphism", "group_of_units", "is_boolean", "kb", "prime_filters",
    "stone_groupoid", "symmetric_inverse_monoid", "unitize_finite",
]
