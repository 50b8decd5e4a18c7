"""
Adjointable Operators
A-linear adjointable maps A^n -> A^m, Moore-Penrose inverses and Douglas factorization.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, Tuple

import numpy as np

from algebra.elements import AlgElem, loewner_leq, svd
from config import config
from errors import CertificateFailed, DimensionMismatch, NoSolution
from hilbert.module import ModuleVec, module_norm

# Configure logging
logger = logging.getLogger(__name__)


# For A = M_d every adjointable A-linear map A^n -> A^m is right multiplication
# of the d x (n d) block row by an (n d) x (m d) complex matrix, and the adjoint
# is the conjugate transpose. Composition reverses the matrix product:
# (T o S) has matrix M_S @ M_T.
@dataclass(frozen=True, eq=False)
class AdjOp:
    """Adjointable operator T: A^src_len -> A^dst_len stored as its complex matrix."""

    matrix: np.ndarray
    alg_dim: int

    def __post_init__(self):
        arr = np.array(self.matrix, dtype=np.complex128)
        d = int(self.alg_dim)
        if d < 1 or arr.ndim != 2 or arr.shape[0] % d or arr.shape[1] % d or 0 in arr.shape:
            raise DimensionMismatch(f"matrix of shape {arr.shape} is not an operator between modules over M_{d}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("operator matrix has non-finite entries")
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)
        object.__setattr__(self, "alg_dim", d)

    @classmethod
    def identity(cls, d: int, n: int) -> "AdjOp":
        return cls(np.eye(n * d), d)

    @classmethod
    def zeros(cls, d: int, n: int, m: int) -> "AdjOp":
        return cls(np.zeros((n * d, m * d)), d)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[AlgElem]]) -> "AdjOp":
        """Build T from its block entries t_ij with (Tx)_j = sum_i x_i t_ij."""
        d = blocks[0][0].dim
        return cls(np.block([[b.entries for b in row] for row in blocks]), d)

    @property
    def src_len(self) -> int:
        return self.matrix.shape[0] // self.alg_dim

    @property
    def dst_len(self) -> int:
        return self.matrix.shape[1] // self.alg_dim

    @property
    def is_endomorphism(self) -> bool:
        return self.src_len == self.dst_len

    def block(self, i: int, j: int) -> AlgElem:
        d = self.alg_dim
        return AlgElem(self.matrix[i * d:(i + 1) * d, j * d:(j + 1) * d])

    @cached_property
    def H(self) -> "AdjOp":
        adj = AdjOp(self.matrix.conj().T, self.alg_dim)
        if "svd_factors" in self.__dict__:
            u, sigma, v = self.svd_factors
            adj.__dict__["svd_factors"] = (v, sigma, u)
        adj.__dict__["H"] = self
        return adj

    @cached_property
    def svd_factors(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(U, singular values descending, V) of the matrix, computed once per operator."""
        return svd(self.matrix)

    def norm(self) -> float:
        sigma = self.svd_factors[1]
        return float(sigma[0]) if sigma.size else 0.0

    def __matmul__(self, other: "AdjOp") -> "AdjOp":
        """self o other: apply other first, then self."""
        if self.alg_dim != other.alg_dim or other.dst_len != self.src_len:
            raise DimensionMismatch(
                f"cannot compose {self.src_len}->{self.dst_len} after {other.src_len}->{other.dst_len}"
            )
        return AdjOp(other.matrix @ self.matrix, self.alg_dim)

    def _check(self, other: "AdjOp") -> None:
        if self.alg_dim != other.alg_dim or self.matrix.shape != other.matrix.shape:
            raise DimensionMismatch(f"operators of shapes {self.matrix.shape} and {other.matrix.shape}")

    def __add__(self, other: "AdjOp") -> "AdjOp":
        self._check(other)
        return AdjOp(self.matrix + other.matrix, self.alg_dim)

    def __sub__(self, other: "AdjOp") -> "AdjOp":
        self._check(other)
        return AdjOp(self.matrix - other.matrix, self.alg_dim)

    def __neg__(self) -> "AdjOp":
        return AdjOp(-self.matrix, self.alg_dim)

    def __mul__(self, scalar: complex) -> "AdjOp":
        return AdjOp(self.matrix * scalar, self.alg_dim)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"AdjOp(d={self.alg_dim}, {self.src_len}->{self.dst_len})"


def apply(T: AdjOp, x: ModuleVec) -> ModuleVec:
    if x.alg_dim != T.alg_dim or x.length != T.src_len:
        raise DimensionMismatch(f"{T!r} cannot act on {x!r}")
    return ModuleVec(x.row @ T.matrix, T.alg_dim)


def adjoint(T: AdjOp) -> AdjOp:
    return T.H


def compose(S: AdjOp, T: AdjOp) -> AdjOp:
    """Left-to-right composition: compose(S, T)(x) = T(S(x))."""
    return T @ S


def _rank_from_sigma(sigma: np.ndarray, tol: float) -> int:
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    return int(np.sum(sigma > tol * sigma[0]))


def rank(T: AdjOp, tol: float = None) -> int:
    """Numerical rank of the underlying matrix with cutoff sigma > tol * sigma_max."""
    _, sigma, _ = T.svd_factors
    return _rank_from_sigma(sigma, config.tol(tol))


def pinv(T: AdjOp, tol: float = None) -> AdjOp:
    """
    Moore-Penrose inverse of T.

    Args:
        T: Operator A^n -> A^m
        tol: Relative singular value cutoff

    Returns:
        T^dagger: A^m -> A^n
    """
    u, sigma, v = T.svd_factors
    r = _rank_from_sigma(sigma, config.tol(tol))
    inverse = (v[:, :r] / sigma[:r]) @ u[:, :r].conj().T
    return AdjOp(inverse, T.alg_dim)


def min_gain(T: AdjOp) -> float:
    """Largest m with ||Tx|| >= m ||x|| for all x; 0 when T is not injective."""
    if T.dst_len < T.src_len:
        return 0.0
    _, sigma, _ = T.svd_factors
    return float(sigma[-1])


def is_surjective(T: AdjOp, tol: float = None) -> bool:
    return min_gain(T.H) > config.tol(tol) * T.norm()


def range_inclusion(Tp: AdjOp, T: AdjOp, tol: float = None) -> bool:
    """Whether R(Tp) is contained in R(T); both must map into the same module."""
    if Tp.alg_dim != T.alg_dim or Tp.dst_len != T.dst_len:
        raise DimensionMismatch(f"{Tp!r} and {T!r} do not share a destination module")
    tol = config.tol(tol)
    residual = Tp - T @ (pinv(T, tol) @ Tp)
    return residual.norm() <= tol * max(1.0, Tp.norm())


def douglas_solve(T: AdjOp, Tp: AdjOp, tol: float = None) -> AdjOp:
    """
    Minimal-norm solution Q = T^dagger Tp of T o Q = Tp.

    Raises:
        NoSolution: If R(Tp) is not contained in R(T)
    """
    tol = config.tol(tol)
    if not range_inclusion(Tp, T, tol):
        raise NoSolution(f"range of {Tp!r} is not contained in the range of {T!r}")
    return pinv(T, tol) @ Tp


def majorizes(T: AdjOp, Tp: AdjOp, tol: float = None) -> Optional[float]:
    """
    Least lambda >= 0 with Tp Tp* <= lambda T T*, or None when no lambda exists.

    For R(Tp) inside R(T) the least constant is ||T^dagger Tp||^2, certified
    by the Loewner order up to the envelope slack.

    Raises:
        CertificateFailed: If the computed constant does not satisfy the inequality
    """
    tol = config.tol(tol)
    if not range_inclusion(Tp, T, tol):
        return None
    factor = pinv(T, tol) @ Tp
    least = factor.norm() ** 2
    lhs = (Tp @ Tp.H).matrix
    rhs = (T @ T.H).matrix * least
    if not loewner_leq(lhs, rhs, max(tol, config.ENVELOPE_TOL)):
        logger.warning(f"[DOUGLAS] majorization constant {least:.6g} failed its Loewner certificate")
        raise CertificateFailed(f"Tp Tp* <= {least:.6g} T T* does not hold for {Tp!r} and {T!r}")
    return least


@dataclass(frozen=True)
class Submodule:
    """The submodule R(G) of the destination module of a generating operator G."""

    generator: AdjOp

    @property
    def ambient_len(self) -> int:
        return self.generator.dst_len

    def projector(self, tol: float = None) -> AdjOp:
        """Orthogonal projection G G^dagger onto R(G)."""
        return self.generator @ pinv(self.generator, tol)

    def contains(self, x: ModuleVec, tol: float = None) -> bool:
        tol = config.tol(tol)
        residual = x - apply(self.projector(tol), x)
        return module_norm(residual) <= tol * max(1.0, module_norm(x))

    def basis(self, tol: float = None) -> np.ndarray:
        """
        Orthonormal rows spanning the block-row vectors of R(G).

        A module vector x lies in R(G) exactly when every row of its block row
        lies in the row space of the matrix of G.
        """
        _, sigma, v = self.generator.svd_factors
        r = _rank_from_sigma(sigma, config.tol(tol))
        return v[:, :r].conj().T


def restricted_min_gain(T: AdjOp, sub: Submodule, tol: float = None) -> float:
    """Largest m with ||Tx|| >= m ||x|| for x in the submodule."""
    if sub.ambient_len != T.src_len:
        raise DimensionMismatch(f"{T!r} does not act on the ambient module of the submodule")
    basis = sub.basis(tol)
    if basis.shape[0] == 0:
        return float("inf")
    restricted = basis @ T.matrix
    if restricted.shape[1] < restricted.shape[0]:
        return 0.0
    _, sigma, _ = svd(restricted)
    return float(sigma[-1])
