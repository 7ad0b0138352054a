"""Exact arithmetic in the generalized Witt algebra W(g_p, n)."""

from .algebra import (
    AlgebraConfig,
    BasisElement,
    Element,
    FunctionElement,
    FunctionTerm,
    apply_element,
    basis,
    bracket,
    oracle_commutator,
)
from .scalars import Rational, as_rational
from .structure import Box, decompose, degree_of, lex_cmp, lp, string_number
from .syntax import ElementSyntaxError, format_element, parse_basis, parse_element, parse_function

__version__ = "0.1.0"

__all__ = [
    "AlgebraConfig",
    "BasisElement",
    "Box",
    "Element",
    "ElementSyntaxError",
    "FunctionElement",
    "FunctionTerm",
    "Rational",
    "apply_element",
    "as_rational",
    "basis",
    "bracket",
    "decompose",
    "degree_of",
    "format_element",
    "lex_cmp",
    "lp",
    "oracle_commutator",
    "parse_basis",
    "parse_element",
    "parse_function",
    "string_number",
]
