"""
Algebra package.
The coefficient C*-algebra M_d and its numerical kernels.
"""

from algebra.elements import (
    AlgElem,
    Spectrum,
    abs_elem,
    hermitian_eig,
    involution,
    is_positive,
    loewner_leq,
    op_norm,
    sqrt_pos,
    svd,
)

__all__ = [
    "AlgElem",
    "Spectrum",
    "abs_elem",
    "hermitian_eig",
    "involution",
    "is_positive",
    "loewner_leq",
    "op_norm",
    "sqrt_pos",
    "svd",
]
