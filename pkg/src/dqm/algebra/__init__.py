"""Exact arithmetic: F_q, F_q[T], F_q(T), binomials mod p and linear algebra."""

from dqm.algebra.arith import binom_char_p, bracket, carlitz_factorial, lprod
from dqm.algebra.field import FiniteField, get_field
from dqm.algebra.kfield import KElem, ThetaPoly
from dqm.algebra.linalg import KMatrix, naive_row_space_basis, row_reduce_fraction_free

__all__ = [
    "FiniteField",
    "get_field",
    "ThetaPoly",
    "KElem",
    "KMatrix",
    "bracket",
    "lprod",
    "carlitz_factorial",
    "binom_char_p",
    "row_reduce_fraction_free",
    "naive_row_space_basis",
]
