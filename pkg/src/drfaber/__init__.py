"""Exact DR-cycle brackets and a constructive check of Faber's intersection number formula."""
from .drbracket import DimensionError, MemoStore, Mode, Part, bracket_polynomial, genusg_bracket
from .faber import (
    ReductionSpec,
    closed_form_extended,
    closed_form_original,
    faber_original,
    integral_via_binomial,
    integral_via_coeff,
    string_forward,
    verify_range,
)
from .lattice import coeff_bracket, coeff_from_polynomial, w0, wI_bruteforce, wI_closed

__version__ = "0.1.0"

__all__ = [
    "DimensionError",
    "MemoStore",
    "Mode",
    "Part",
    "ReductionSpec",
    "bracket_polynomial",
    "closed_form_extended",
    "closed_form_original",
    "coeff_bracket",
    "coeff_from_polynomial",
    "faber_original",
    "genusg_bracket",
    "integral_via_binomial",
    "integral_via_coeff",
    "string_forward",
    "verify_range",
    "w0",
    "wI_bruteforce",
    "wI_closed",
]
