"""Exact symbolic engine for quantum-group symmetry of the polynomial Cuntz algebra.

Everything is computed over Q(q) with decidable equality: the Cuntz algebra
with its leveling normal form, the q-deformed enveloping-algebra action, the
braid elements, the FRT quantum-matrix coaction, and the duality pairing
between the two.
"""

from .qscalar import QScalar, gauss_binomial, q_int, qs_add, qs_eval, qs_inv, qs_mul

__all__ = [
    "QScalar",
    "gauss_binomial",
    "q_int",
    "qs_add",
    "qs_mul",
    "qs_inv",
    "qs_eval",
]

__version__ = "0.1.0"
