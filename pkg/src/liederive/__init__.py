"""Exact computation with finite-dimensional Lie algebras over Q and GF(p),
centred on deciding which algebras are derived algebras ``[H, H]``.
"""

from .fields import FieldSpec, GF, QQ
from .algebra import LieAlgebra, validate, classify
from .derivations import derivation_space, derivation_tower
from .integrability import is_derived_algebra, verify_integral, necessary_conditions
from .structure import composition_series, levi_complement

__version__ = "0.1.0"

__all__ = [
    "FieldSpec", "GF", "QQ", "LieAlgebra", "validate", "classify", "derivation_space",
    "derivation_tower", "is_derived_algebra", "verify_integral", "necessary_conditions",
    "composition_series", "levi_complement",
]
