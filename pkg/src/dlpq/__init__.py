"""Commutative Clifford algebras DL(p,q).

Element arithmetic, the 2**n conjugation involutions, a faithful matrix
representation used as an independent oracle, closed-form determinant /
trace / characteristic polynomial / adjoint / inverse, zero-divisor
witnesses, an element-literal parser, and a CLI (``dlpq``).
"""

from .algebra import (
    N_MAX,
    Element,
    Signature,
    SignatureMismatchError,
    add,
    basis_blade,
    compose_masks,
    conjugate,
    element,
    eliminate_generator,
    grade_project,
    indices_from_mask,
    mask_from_indices,
    mul,
    neg,
    one,
    scalar_element,
    scalar_part,
    scale,
    sub,
    zero,
)
from .char_ops import (
    CharPoly,
    CharPolyFL,
    GradeLeakError,
    NotInvertibleError,
    adjoint,
    charpoly_fl,
    charpoly_symmetric,
    det_full_product,
    det_recursive,
    inverse,
    inverse_of_conjugate_check,
    is_singular_det,
    trace,
    trace_by_conjugates,
)
from .expr import (
    BladeError,
    ExprError,
    ExprSyntaxError,
    GeneratorRangeError,
    bind,
    format_element,
    parse,
    parse_element,
)
from .matrix_rep import (
    MATRIX_N_CAP,
    RepMatrix,
    kernel_witness,
    oracle_charpoly,
    oracle_det,
    oracle_trace,
    represent,
)
from .scalars import (
    BACKENDS,
    FLOAT64,
    RATIONAL,
    ScalarBackend,
    backend_of,
    get_backend,
)
from .zero_divisor import WitnessReport, ZeroInputError, classify, is_zero_divisor

__version__ = "0.1.0"

__all__ = [
    "N_MAX",
    "MATRIX_N_CAP",
    "Signature",
    "Element",
    "SignatureMismatchError",
    "element",
    "zero",
    "one",
    "basis_blade",
    "scalar_element",
    "add",
    "sub",
    "neg",
    "scale",
    "mul",
    "grade_project",
    "scalar_part",
    "conjugate",
    "compose_masks",
    "mask_from_indices",
    "indices_from_mask",
    "eliminate_generator",
    "CharPoly",
    "CharPolyFL",
    "GradeLeakError",
    "NotInvertibleError",
    "trace",
    "trace_by_conjugates",
    "det_full_product",
    "det_recursive",
    "adjoint",
    "charpoly_symmetric",
    "charpoly_fl",
    "inverse",
    "inverse_of_conjugate_check",
    "is_singular_det",
    "RepMatrix",
    "represent",
    "oracle_det",
    "oracle_trace",
    "oracle_charpoly",
    "kernel_witness",
    "WitnessReport",
    "ZeroInputError",
    "classify",
    "is_zero_divisor",
    "parse",
    "bind",
    "parse_element",
    "format_element",
    "ExprError",
    "ExprSyntaxError",
    "BladeError",
    "GeneratorRangeError",
    "ScalarBackend",
    "FLOAT64",
    "RATIONAL",
    "BACKENDS",
    "get_backend",
    "backend_of",
]
