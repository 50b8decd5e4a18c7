"""
Frame Bounds
Optimal Bessel and K-lower bounds, frame reports, tightness and duality checks.
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from algebra.elements import hermitian_eig, op_norm, svd
from config import config
from errors import DimensionMismatch
from frames.family import GFrameFamily, analysis_operator
from hilbert.operators import AdjOp, Submodule

# Configure logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrameBounds:
    """
    A pair of frame bounds (lower A, upper B).

    For a general K the optimal lower bound may exceed B; the consistent form is
    A * ||K||^2 <= B.
    """

    lower: float
    upper: float

    def consistent_with(self, k_norm: float, tol: float = None) -> bool:
        tol = config.tol(tol)
        if math.isinf(self.lower):
            return True
        return self.lower * k_norm ** 2 <= self.upper + tol * max(1.0, self.upper)


@dataclass(frozen=True)
class FrameReport:
    """Verdicts and optimal constants of a (restricted) K-g-frame check."""

    is_bessel: bool
    bessel_bound: float
    is_kg_frame: bool
    optimal_lower: float
    tight_constant: Optional[float]
    is_parseval: bool
    tol: float
    degenerate_k: bool = False
    range_included: bool = True
    vacuous: bool = False
    bisection_lower: Optional[float] = None
    bisection_agrees: Optional[bool] = None

    @property
    def bounds(self) -> FrameBounds:
        return FrameBounds(self.optimal_lower, self.bessel_bound)

    def as_record(self) -> Dict[str, Any]:
        """Flat record for text and JSON emission."""
        return asdict(self)


@dataclass(frozen=True)
class _LowerBound:
    value: float
    included: bool
    degenerate: bool
    bisection: Optional[float] = None
    agrees: Optional[bool] = None


def _top_eigenvalue(matrix: np.ndarray) -> float:
    if matrix.size == 0:
        return 0.0
    return float(hermitian_eig(0.5 * (matrix + matrix.conj().T)).eigenvalues[-1])


def _bisect_lower(s: np.ndarray, g: np.ndarray) -> float:
    """
    Largest A with s - A g positive, by bisection against a PSD oracle.

    Each pencil is diagonalized starting from the eigenbasis of the previous
    one, so later steps need only a sweep or two.
    """
    s_top, g_top = _top_eigenvalue(s), _top_eigenvalue(g)
    low, high = 0.0, s_top / g_top
    slack = config.BISECTION_TOL * max(s_top, np.finfo(float).tiny)
    basis = None
    for _ in range(config.BISECTION_STEPS):
        mid = 0.5 * (low + high)
        pencil = s - mid * g
        spectrum = hermitian_eig(0.5 * (pencil + pencil.conj().T), start=basis)
        basis = spectrum.basis
        if spectrum.eigenvalues[0] >= -slack:
            low = mid
        else:
            high = mid
    return low


def _lower_from_factors(s_factor: np.ndarray, g_factor: np.ndarray, tol: float, cross_check: bool,
                        s_svd: Optional[Tuple[np.ndarray, np.ndarray, np.ndarray]] = None) -> _LowerBound:
    """
    Supremum of A >= 0 with s - A g positive, where s = s_factor s_factor^H and g = g_factor g_factor^H.

    Args:
        s_factor: Factor of the frame operator (rows indexed by the ambient space)
        g_factor: Factor of K K* on the same rows
        tol: Relative rank cutoff and inclusion tolerance
        cross_check: Also run the bisection and compare
        s_svd: Singular value decomposition of s_factor when already known

    Returns:
        _LowerBound with +inf for g = 0 and 0.0 when R(g) is not inside R(s)
    """
    g_norm = op_norm(g_factor)
    if g_norm == 0.0:
        return _LowerBound(math.inf, included=True, degenerate=True)

    u, sigma, _ = s_svd if s_svd is not None else svd(s_factor)
    rank = int(np.sum(sigma > tol * sigma[0])) if sigma.size and sigma[0] > 0 else 0
    basis = u[:, :rank]
    residual = g_factor - basis @ (basis.conj().T @ g_factor)
    if op_norm(residual) > tol * max(1.0, g_norm):
        return _LowerBound(0.0, included=False, degenerate=False)

    weighted = (basis.conj().T @ g_factor) / sigma[:rank, None]
    closed = 1.0 / op_norm(weighted) ** 2
    if not cross_check:
        return _LowerBound(closed, included=True, degenerate=False)

    bisection = _bisect_lower(s_factor @ s_factor.conj().T, g_factor @ g_factor.conj().T)
    agrees = abs(bisection - closed) <= config.CROSS_CHECK_RTOL * max(1.0, closed)
    if not agrees:
        logger.warning(f"[BOUNDS] bisection lower bound {bisection:.12g} disagrees with closed form {closed:.12g}")
    return _LowerBound(closed, included=True, degenerate=False, bisection=bisection, agrees=agrees)


def _report(s_factor: np.ndarray, g_factor: np.ndarray, tol: float, cross_check: bool,
            s_svd: Optional[Tuple[np.ndarray, np.ndarray, np.ndarray]] = None) -> FrameReport:
    s_svd = s_svd if s_svd is not None else svd(s_factor)
    sigma = s_svd[1]
    bessel = float(sigma[0]) ** 2 if sigma.size else 0.0
    lower = _lower_from_factors(s_factor, g_factor, tol, cross_check, s_svd)
    tight = None
    parseval = False
    if lower.included and not lower.degenerate and lower.value > tol:
        s = s_factor @ s_factor.conj().T
        g = g_factor @ g_factor.conj().T
        if op_norm(s - lower.value * g) <= tol * bessel:
            tight = lower.value
            parseval = abs(tight - 1.0) <= tol
    return FrameReport(
        is_bessel=True,
        bessel_bound=bessel,
        is_kg_frame=lower.value > tol,
        optimal_lower=lower.value,
        tight_constant=tight,
        is_parseval=parseval,
        tol=tol,
        degenerate_k=lower.degenerate,
        range_included=lower.included,
        bisection_lower=lower.bisection,
        bisection_agrees=lower.agrees,
    )


def _check_operator(F: GFrameFamily, K: AdjOp) -> None:
    if K.alg_dim != F.alg_dim or K.src_len != F.source_len or K.dst_len != F.source_len:
        raise DimensionMismatch(f"{K!r} is not an endomorphism of the source of {F!r}")


def bessel_bound(F: GFrameFamily) -> float:
    """Optimal Bessel bound: the largest eigenvalue of the frame operator."""
    return analysis_operator(F).norm() ** 2


def check_bessel(F: GFrameFamily, bound: float, tol: float = None) -> bool:
    """Whether F is Bessel with the given bound."""
    tol = config.tol(tol)
    return bessel_bound(F) <= bound + tol * max(1.0, bound)


def optimal_lower_bound(F: GFrameFamily, K: AdjOp, tol: float = None, cross_check: bool = True) -> float:
    """
    Optimal lower K-frame bound of F.

    Returns the closed form 1/lambda_max(K* S^dagger K) when R(K) lies in R(S),
    verified against a bisection on the PSD oracle; 0.0 when R(K) escapes R(S);
    +inf when K = 0.
    """
    _check_operator(F, K)
    tol = config.tol(tol)
    T = analysis_operator(F)
    return _lower_from_factors(T.matrix, K.H.matrix, tol, cross_check, T.svd_factors).value


def check_kg_frame(F: GFrameFamily, K: AdjOp, tol: float = None, cross_check: bool = False) -> FrameReport:
    """
    Full K-g-frame report for F on its whole source module.

    Args:
        F: Frame family
        K: Endomorphism of the source module
        tol: Tolerance for rank, tightness and verdicts
        cross_check: Also run the bisection lower bound

    Returns:
        FrameReport with the optimal constants
    """
    _check_operator(F, K)
    tol = config.tol(tol)
    T = analysis_operator(F)
    report = _report(T.matrix, K.H.matrix, tol, cross_check, T.svd_factors)
    logger.debug(f"[BOUNDS] {F!r}: lower={report.optimal_lower:.6g} upper={report.bessel_bound:.6g}")
    return report


def check_kg_frame_on(F: GFrameFamily, K: AdjOp, sub: Submodule, tol: float = None,
                      cross_check: bool = False) -> FrameReport:
    """K-g-frame report with both inequalities tested only for f in the submodule."""
    _check_operator(F, K)
    if sub.generator.alg_dim != F.alg_dim or sub.ambient_len != F.source_len:
        raise DimensionMismatch(f"submodule of A^{sub.ambient_len} is not inside the source of {F!r}")
    tol = config.tol(tol)
    basis = sub.basis(tol)
    if basis.shape[0] == 0:
        return FrameReport(
            is_bessel=True, bessel_bound=0.0, is_kg_frame=True, optimal_lower=math.inf,
            tight_constant=None, is_parseval=False, tol=tol, vacuous=True,
        )
    return _report(basis @ analysis_operator(F).matrix, basis @ K.H.matrix, tol, cross_check)


def is_k_dual(F: GFrameFamily, G: GFrameFamily, K: AdjOp, tol: float = None) -> bool:
    """Whether K = sum_xi nu_xi Y_xi* o P_xi up to tol * max(1, ||K||)."""
    _check_operator(F, K)
    tol = config.tol(tol)
    mixed = mixed_frame_operator(F, G)
    return (K - mixed).norm() <= tol * max(1.0, K.norm())


def mixed_frame_operator(F: GFrameFamily, G: GFrameFamily) -> AdjOp:
    """sum_xi nu_xi Y_xi* o P_xi, i.e. the synthesis of F after the analysis of G."""
    if F.alg_dim != G.alg_dim or F.source_len != G.source_len or F.fibers != G.fibers or F.weights != G.weights:
        raise DimensionMismatch(f"{F!r} and {G!r} do not share space, source and fibers")
    matrix = sum(w * (phi.matrix @ ups.matrix.conj().T) for w, ups, phi in zip(F.weights, F.members, G.members))
    return AdjOp(matrix, F.alg_dim)
