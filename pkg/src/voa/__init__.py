"""Exact computations in vertex superalgebras presented by generators and λ-brackets."""
from .core import (AlgebraMismatchError, BracketSpecError, ConformalDataError, LambdaPolynomial, State,
                   VertexAlgebra, conformal_data, ope_singular, virasoro_data)
from .scalar import GENERIC, LIMIT, ParameterContext, Scalar, parse_scalar

__all__ = [
    "AlgebraMismatchError", "BracketSpecError", "ConformalDataError", "LambdaPolynomial", "State",
    "VertexAlgebra", "conformal_data", "ope_singular", "virasoro_data", "GENERIC", "LIMIT",
    "ParameterContext", "Scalar", "parse_scalar",
]

__version__ = "0.1.0"
