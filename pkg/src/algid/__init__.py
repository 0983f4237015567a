"""Exact verification of polynomial identities on 2-dimensional algebras.

An algebra is given by its matrix of structural constants (MSC).  The package
expands polynomial identities into systems of polynomial equations in the
structure constants, compares those systems up to linear span, and checks
published classification tables over the rationals and small prime fields.
"""

from .exactnum import F2, F3, F5, QQ, Field, Scalar, field_make, sqrt
from .multipoly import MultiPoly

__version__ = "0.1.0"

__all__ = [
    "F2",
    "F3",
    "F5",
    "QQ",
    "Field",
    "MultiPoly",
    "Scalar",
    "field_make",
    "sqrt",
    "__version__",
]
