"""
Hypothesis predicates shared by the constructions.
"""

from typing import Dict

from algebra.elements import is_positive
from config import config
from errors import HypothesisFailed
from hilbert.operators import AdjOp, pinv, range_inclusion, rank


def commutes(A: AdjOp, B: AdjOp, tol: float = None) -> bool:
    tol = config.tol(tol)
    return (A @ B - B @ A).norm() <= tol * max(1.0, A.norm() * B.norm())


def intertwines(theta: AdjOp, k_source: AdjOp, k_target: AdjOp, tol: float = None) -> bool:
    """theta o k_source = k_target o theta."""
    tol = config.tol(tol)
    scale = theta.norm() * (k_source.norm() + k_target.norm())
    return (theta @ k_source - k_target @ theta).norm() <= tol * max(1.0, scale)


def trivial_intersection(theta: AdjOp, K: AdjOp, tol: float = None) -> bool:
    """R(K*) meets N(theta*) only in 0, i.e. theta* is injective on R(K*)."""
    return rank(theta.H @ K.H, tol) == rank(K.H, tol)


def kernel_projector(T: AdjOp, tol: float = None) -> AdjOp:
    """Orthogonal projection I - T^dagger T onto N(T)."""
    return AdjOp.identity(T.alg_dim, T.src_len) - pinv(T, tol) @ T


def same_kernel(T: AdjOp, theta: AdjOp, tol: float = None) -> bool:
    """N(T) = N(theta), tested by mutual range inclusion of the kernel projectors."""
    n_t, n_theta = kernel_projector(T, tol), kernel_projector(theta, tol)
    return range_inclusion(n_t, n_theta, tol) and range_inclusion(n_theta, n_t, tol)


def positive_operator(T: AdjOp, tol: float = None) -> bool:
    return is_positive(T.matrix, tol)


def enforce(checks: Dict[str, bool], strict: bool) -> None:
    """Raise HypothesisFailed for the first failing predicate when strict."""
    if not strict:
        return
    for name, ok in checks.items():
        if not ok:
            raise HypothesisFailed(name)
