"""Exact computer-algebra kernel over coordinates and jet symbols."""

from .atoms import COORDS, X1, X2, X3, X4, Atom, coord, jet, symbol
from .expr import (
    Add,
    Const,
    Div,
    Expr,
    Leaf,
    Mul,
    Neg,
    Pow,
    Sub,
    diff,
    is_zero,
    normalize,
    substitute,
)
from .linear import EXPRESSION, RATIONAL, ModeViolation, combine, interreduce, linear_membership
from .poly import Poly, gcd
from .rational import ONE, ZERO, ArgumentViolation, DivisionByZero, NormalForm

__all__ = [
    "COORDS", "X1", "X2", "X3", "X4", "Atom", "coord", "jet", "symbol",
    "Expr", "Const", "Leaf", "Add", "Sub", "Mul", "Div", "Pow", "Neg",
    "normalize", "is_zero", "diff", "substitute",
    "linear_membership", "combine", "interreduce", "ModeViolation", "RATIONAL", "EXPRESSION",
    "Poly", "gcd", "NormalForm", "ZERO", "ONE", "DivisionByZero", "ArgumentViolation",
]
