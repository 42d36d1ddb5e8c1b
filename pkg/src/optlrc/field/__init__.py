"""Finite-field arithmetic, polynomials in omega, and exact linear algebra."""

from .base import BINARY, PRIME, BaseField
from .ext import ExtElem, ExtField, ext_inv, ext_mul
from .intpoly import IntPoly, intpoly_permanent
from .linalg import Basis, Matrix, determinant, hstack, inverse, matvec, rank_of, solve_square, vecmat
from .poly import find_irreducible, is_irreducible

__all__ = [
    "BINARY",
    "PRIME",
    "BaseField",
    "Basis",
    "ExtElem",
    "ExtField",
    "IntPoly",
    "Matrix",
    "determinant",
    "ext_inv",
    "ext_mul",
    "find_irreducible",
    "hstack",
    "intpoly_permanent",
    "inverse",
    "is_irreducible",
    "matvec",
    "rank_of",
    "solve_square",
    "vecmat",
]
