"""Exact computations in free associative algebras and their universal Lie
nilpotent quotients."""

from .scalars import EXACT, Mode, mod, DEFAULT_PRIME, SECOND_PRIME, DEFAULT_PRIMES
from .ncpoly import (NCPoly, commutator, left_normed_bracket,
                     homogeneous_components, multidegree_of, format_poly,
                     parse_poly)

__version__ = "0.1.0"

__all__ = [
    "EXACT", "Mode", "mod", "DEFAULT_PRIME", "SECOND_PRIME", "DEFAULT_PRIMES",
    "NCPoly", "commutator", "left_normed_bracket", "homogeneous_components",
    "multidegree_of", "format_poly", "parse_poly", "__version__",
]
