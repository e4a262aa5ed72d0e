"""Quaternion algebra, triplet-impossibility derivations and regularity checks."""

from .errors import (
    ExprError,
    InvalidArgumentError,
    InvalidTableError,
    ModeMismatchError,
    NumericDomainError,
    ParseError,
    QuatkitError,
    UnsupportedOperationError,
)
from .expr import evaluate, parse
from .fueter import (
    Side,
    difference_quotient,
    fueter_left_symbolic,
    fueter_numeric,
    fueter_right_symbolic,
    is_regular,
    pde_system_matrix,
)
from .poly import CanonicalPoly, eval_poly, expand
from .quaternion import (
    Quaternion,
    conjugate,
    inverse,
    left_mul_matrix,
    mul_components,
    mul_matrix,
    mul_vector_form,
    norm,
    norm_squared,
    unit_table,
)
from .report import Method, RegularityReport, Verdict
from .scalar import Mode
from .slices import SlicePoint, UnitImaginary, embed, is_slice_regular, series_eval, slice_cr_residual

__version__ = "0.1.0"
