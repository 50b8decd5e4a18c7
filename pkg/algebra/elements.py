"""
Algebra Elements
Elements of the matrix C*-algebra M_d with involution, norm, spectra and order.
"""

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np

from algebra.jacobi import eigh_kernel, svd_kernel
from config import config
from errors import DimensionMismatch, NotHermitian, NotPositive

# Configure logging
logger = logging.getLogger(__name__)

HERMITIAN_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class AlgElem:
    """A d x d complex matrix viewed as an element of the C*-algebra M_d."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise DimensionMismatch(f"algebra element must be a nonempty square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("algebra element has non-finite entries")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def identity(cls, d: int) -> "AlgElem":
        return cls(np.eye(d))

    @classmethod
    def zeros(cls, d: int) -> "AlgElem":
        return cls(np.zeros((d, d)))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def H(self) -> "AlgElem":
        return AlgElem(self.entries.conj().T)

    def _check(self, other: "AlgElem") -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"algebra dimensions differ: {self.dim} vs {other.dim}")

    def __matmul__(self, other: "AlgElem") -> "AlgElem":
        self._check(other)
        return AlgElem(self.entries @ other.entries)

    def __add__(self, other: "AlgElem") -> "AlgElem":
        self._check(other)
        return AlgElem(self.entries + other.entries)

    def __sub__(self, other: "AlgElem") -> "AlgElem":
        self._check(other)
        return AlgElem(self.entries - other.entries)

    def __neg__(self) -> "AlgElem":
        return AlgElem(-self.entries)

    def __mul__(self, scalar: complex) -> "AlgElem":
        return AlgElem(self.entries * scalar)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AlgElem) and np.array_equal(self.entries, other.entries)

    __hash__ = None

    def allclose(self, other: "AlgElem", atol: float = 1e-12) -> bool:
        self._check(other)
        return bool(np.allclose(self.entries, other.entries, rtol=0.0, atol=atol))

    def __repr__(self) -> str:
        return f"AlgElem(d={self.dim})"


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues (ascending) and the unitary whose columns are eigenvectors."""

    eigenvalues: np.ndarray
    basis: np.ndarray


Element = Union[AlgElem, np.ndarray]


def _array(a: Element) -> np.ndarray:
    if isinstance(a, AlgElem):
        return a.entries
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {arr.shape}")
    return arr


def _like(template: Element, arr: np.ndarray) -> Element:
    return AlgElem(arr) if isinstance(template, AlgElem) else arr


def involution(a: Element) -> Element:
    """Conjugate transpose, returned in the same representation as the input."""
    return _like(a, _array(a).conj().T)


def op_norm(a: Element) -> float:
    """Largest singular value; 0.0 for the zero matrix."""
    arr = _array(a)
    if arr.size == 0:
        return 0.0
    _, sigma, _ = svd_kernel(arr)
    return float(sigma[0]) if sigma.size else 0.0


def svd(m: Element):
    """
    Singular value decomposition of a (possibly rectangular) matrix.

    Returns:
        Tuple (U, singular values descending, V) with m = U[:, :r] diag(s) V[:, :r]^H
    """
    return svd_kernel(_array(m))


def hermitian_eig(a: Element, start: np.ndarray = None) -> Spectrum:
    """
    Spectral decomposition of a Hermitian element.

    Args:
        a: Element whose skew part is within 1e-10 of its norm
        start: Optional unitary close to the eigenbasis, used to warm-start the Jacobi kernel

    Returns:
        Spectrum with real ascending eigenvalues and a unitary eigenbasis
    """
    arr = _array(a)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"hermitian_eig needs a square matrix, got {arr.shape}")
    skew = np.linalg.norm(arr - arr.conj().T)
    if skew > HERMITIAN_RTOL * max(1.0, np.linalg.norm(arr)):
        raise NotHermitian(f"skew part has norm {skew:.3e}")
    eigenvalues, basis = eigh_kernel(arr, start)
    return Spectrum(eigenvalues=eigenvalues, basis=basis)


def is_positive(a: Element, tol: float = None) -> bool:
    """
    Whether a is positive semidefinite up to tol scaled by its size.

    Both ||a - a*|| and the most negative eigenvalue of the Hermitian part
    are compared against tol * max(1, ||a||) in the operator norm.
    """
    tol = config.tol(tol)
    arr = _array(a)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"positivity needs a square matrix, got {arr.shape}")
    herm = 0.5 * (arr + arr.conj().T)
    eigenvalues, _ = eigh_kernel(herm)
    if not eigenvalues.size:
        return True
    skew = op_norm(arr - arr.conj().T)
    # a Hermitian element's norm is its spectral radius
    norm = float(np.max(np.abs(eigenvalues))) if skew == 0.0 else op_norm(arr)
    scale = max(1.0, norm)
    if skew > tol * scale:
        return False
    return bool(eigenvalues[0] >= -tol * scale)


def loewner_leq(a: Element, b: Element, tol: float = None) -> bool:
    """Loewner order a <= b, i.e. b - a is positive."""
    arr_a, arr_b = _array(a), _array(b)
    if arr_a.shape != arr_b.shape:
        raise DimensionMismatch(f"cannot compare shapes {arr_a.shape} and {arr_b.shape}")
    return is_positive(arr_b - arr_a, tol)


def sqrt_pos(a: Element, tol: float = None) -> Element:
    """Positive square root of a positive element."""
    if not is_positive(a, tol):
        raise NotPositive("square root requested for a non-positive element")
    arr = _array(a)
    eigenvalues, basis = eigh_kernel(0.5 * (arr + arr.conj().T))
    root = np.sqrt(np.clip(eigenvalues, 0.0, None))
    return _like(a, (basis * root) @ basis.conj().T)


def abs_elem(a: Element) -> Element:
    """Absolute value |a| = (a* a)^(1/2)."""
    arr = _array(a)
    return _like(a, sqrt_pos(arr.conj().T @ arr))
