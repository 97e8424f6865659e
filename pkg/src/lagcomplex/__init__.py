"""Exact symbolic engine for the complex of Lagrangians on super path spaces."""
from .algebra import (
    INHOMOGENEOUS,
    Expression,
    Lagrangian,
    Parity,
    ParityError,
    Signature,
    SignatureError,
    add,
    canonicalize,
    jet,
    mul,
    parity_of,
    scale,
    substitute,
    time_var,
)
from .grammar import ParseError, format_expression, parse, read_document
from .variational import Covector, order_of, partial_deriv, total_deriv, var_deriv, var_deriv_all
from .lagrangian_complex import (
    CoordinateChange,
    apply_d,
    covector_check,
    d_squared_check,
    filtration_check,
    helmholtz_check,
    naturality_check,
    pullback,
    pullback_expr,
)
from .action import Homotopy, Path, action_eval, berezin_integrate, divergence_decompose, stokes_check
from .derham import (
    NotFormLike,
    PolyForm,
    bridge_check,
    cohomology_dims,
    exterior_deriv,
    form_to_lagrangian,
    lagrangian_to_form,
)

print_expression = format_expression

__version__ = "0.1.0"

__all__ = [
    "CoordinateChange",
    "Covector",
    "Expression",
    "Homotopy",
    "INHOMOGENEOUS",
    "Lagrangian",
    "NotFormLike",
    "Parity",
    "ParityError",
    "ParseError",
    "Path",
    "PolyForm",
    "Signature",
    "SignatureError",
    "action_eval",
    "add",
    "apply_d",
    "berezin_integrate",
    "bridge_check",
    "canonicalize",
    "cohomology_dims",
    "covector_check",
    "d_squared_check",
    "divergence_decompose",
    "exterior_deriv",
    "filtration_check",
    "form_to_lagrangian",
    "format_expression",
    "helmholtz_check",
    "jet",
    "lagrangian_to_form",
    "mul",
    "naturality_check",
    "order_of",
    "parity_of",
    "parse",
    "partial_deriv",
    "print_expression",
    "pullback",
    "pullback_expr",
    "read_document",
    "scale",
    "stokes_check",
    "substitute",
    "time_var",
    "total_deriv",
    "var_deriv",
    "var_deriv_all",
]

