"""Hypergeometric-type equations for the six normal forms of sigma.

The modules build up from polynomial solutions to coherent states and
their analytic representation; :mod:`hypertype.verify` checks the
identities that connect them.
"""

from __future__ import annotations

from .assocfun import AssocFunction, assoc, apply_A, apply_Aplus, apply_H, norm
from .cases import CaseKind, CaseSpec, index_bound, lambda_l, max_degree, validate, weight
from .coherent import (CoherentState, RadialMeasure, coherent_state, epsilon, measure_moment,
                       overlap, overlap_closed)
from .errors import (ConstraintViolation, DimensionError, DivergentMoment, HypertypeError,
                     IndexOutOfRange, IntegrationFailure, NumericalInstability, OutOfDomain,
                     PowerMismatch, TruncationError, UnsupportedCase)
from .ladder import AlgebraKind, algebra_residuals, build_ladder, classify_algebra, energy
from .polyengine import classical_ref, phi, rodrigues
from .polynomial import Polynomial
from .quadrature import inner_product, moment

__version__ = "0.1.0"

__all__ = [
    "AlgebraKind", "AssocFunction", "CaseKind", "CaseSpec", "CoherentState",
    "ConstraintViolation", "DimensionError", "DivergentMoment", "HypertypeError",
    "IndexOutOfRange", "IntegrationFailure", "NumericalInstability", "OutOfDomain",
    "Polynomial", "PowerMismatch", "RadialMeasure", "TruncationError", "UnsupportedCase",
    "algebra_residuals", "apply_A", "apply_Aplus", "apply_H", "assoc", "build_ladder",
    "classical_ref", "classify_algebra", "coherent_state", "energy", "epsilon", "index_bound",
    "inner_product", "lambda_l", "max_degree", "measure_moment", "moment", "norm", "overlap",
    "overlap_closed", "phi", "rodrigues", "validate", "weight",
]
