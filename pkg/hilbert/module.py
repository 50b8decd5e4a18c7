"""
Hilbert Module
Vectors of the standard module A^n over A = M_d and the A-valued inner product.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from algebra.elements import AlgElem, op_norm
from errors import DimensionMismatch

# Configure logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ModuleVec:
    """
    A vector x = (x_1, ..., x_n) of A^n.

    Stored as the d x (n d) block row [x_1 | ... | x_n]; the inner product
    <x, y> = sum_i x_i y_i^* is then the matrix product X Y^H.
    """

    row: np.ndarray
    alg_dim: int

    def __post_init__(self):
        arr = np.array(self.row, dtype=np.complex128)
        d = int(self.alg_dim)
        if d < 1 or arr.ndim != 2 or arr.shape[0] != d or arr.shape[1] % d or arr.shape[1] == 0:
            raise DimensionMismatch(f"block row of shape {arr.shape} is not a vector of A^n with d={d}")
        arr.setflags(write=False)
        object.__setattr__(self, "row", arr)
        object.__setattr__(self, "alg_dim", d)

    @classmethod
    def from_blocks(cls, blocks: Sequence[AlgElem]) -> "ModuleVec":
        if not blocks:
            raise DimensionMismatch("a module vector needs at least one coordinate")
        d = blocks[0].dim
        if any(b.dim != d for b in blocks):
            raise DimensionMismatch("coordinates have different algebra dimensions")
        return cls(np.hstack([b.entries for b in blocks]), d)

    @classmethod
    def zeros(cls, d: int, n: int) -> "ModuleVec":
        return cls(np.zeros((d, n * d)), d)

    @property
    def length(self) -> int:
        return self.row.shape[1] // self.alg_dim

    def block(self, i: int) -> AlgElem:
        d = self.alg_dim
        return AlgElem(self.row[:, i * d:(i + 1) * d])

    def blocks(self) -> List[AlgElem]:
        return [self.block(i) for i in range(self.length)]

    def scale_left(self, a: AlgElem) -> "ModuleVec":
        """Module action a.x = (a x_1, ..., a x_n), so that <a.x, y> = a <x, y>."""
        if a.dim != self.alg_dim:
            raise DimensionMismatch(f"algebra dimensions differ: {a.dim} vs {self.alg_dim}")
        return ModuleVec(a.entries @ self.row, self.alg_dim)

    def _check(self, other: "ModuleVec") -> None:
        if self.row.shape != other.row.shape:
            raise DimensionMismatch(f"module vectors of shapes {self.row.shape} and {other.row.shape}")

    def __add__(self, other: "ModuleVec") -> "ModuleVec":
        self._check(other)
        return ModuleVec(self.row + other.row, self.alg_dim)

    def __sub__(self, other: "ModuleVec") -> "ModuleVec":
        self._check(other)
        return ModuleVec(self.row - other.row, self.alg_dim)

    def __mul__(self, scalar: complex) -> "ModuleVec":
        return ModuleVec(self.row * scalar, self.alg_dim)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"ModuleVec(d={self.alg_dim}, n={self.length})"


def inner(x: ModuleVec, y: ModuleVec) -> AlgElem:
    """A-valued inner product <x, y> = sum_i x_i y_i^*."""
    x._check(y)
    return AlgElem(x.row @ y.row.conj().T)


def module_norm(x: ModuleVec) -> float:
    """Norm ||x|| = ||<x, x>||^(1/2)."""
    return float(np.sqrt(op_norm(inner(x, x))))
