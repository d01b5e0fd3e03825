"""Finite ternary Boolean algebras: axiom checks, converters, model search and proof replay."""

from .structures import (DerivedSignature, FiniteBooleanAlgebra, FiniteTernarySystem, Formula,
                         InvalidAlgebraError, RingOps, boolean_from_ternary, compare_tables,
                         derive_ring_ops, derive_signature, eval_p, power_set_algebra,
                         ternary_from_boolean)
from .properties import (PropertyId, PropertyKindError, PropertyReport, Theorem1Report,
                         check_property, verify_theorem1)

__version__ = "0.1.0"
