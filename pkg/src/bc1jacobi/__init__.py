"""Exact rational calculus of the BC1 non-symmetric Jacobi polynomials,
their shift operators in three realizations, constant-term homomorphisms,
and c-function normalizations."""

from .laurent import (
    LaurentPoly,
    Multiplicity,
    exact_divide,
    rat,
    steinberg_join,
    steinberg_split,
    sym_z_to_x,
    x_to_z,
)
from .operators import DROp, MatOp, apply, compose, op_equal, order_normal_form
from .pairings import (
    MODE_CONSTANT_TERM,
    MODE_MOMENTS,
    PairingKind,
    normalized_moments,
    pair_scalar,
    pair_vector,
)
from .polynomials import mat_families, nonsym_jacobi, sym_jacobi, upsilon
from .ratfunc import RatFunc
from .shifts import Shift, composite_shift, make_named, raising_lowering

__all__ = [
    "DROp",
    "LaurentPoly",
    "MatOp",
    "MODE_CONSTANT_TERM",
    "MODE_MOMENTS",
    "Multiplicity",
    "PairingKind",
    "RatFunc",
    "Shift",
    "apply",
    "compose",
    "composite_shift",
    "exact_divide",
    "make_named",
    "mat_families",
    "nonsym_jacobi",
    "normalized_moments",
    "op_equal",
    "order_normal_form",
    "pair_scalar",
    "pair_vector",
    "raising_lowering",
    "rat",
    "steinberg_join",
    "steinberg_split",
    "sym_jacobi",
    "sym_z_to_x",
    "upsilon",
    "x_to_z",
]

__version__ = "0.1.0"
