"""
Sum Constructions
K-g-frames built from sums of two families: dual, orthogonal, operator-weighted and scalar-weighted sums.
"""

import logging
import math

import numpy as np

from config import config
from constructions.hypotheses import enforce, intertwines, positive_operator, trivial_intersection
from constructions.results import ConstructionResult
from errors import DimensionMismatch, DualityFailed, NotOrthogonal, NotPositive
from frames.bounds import FrameBounds, bessel_bound, check_kg_frame, is_k_dual, mixed_frame_operator
from frames.family import GFrameFamily, check_same_shape, frame_operator, sum_families
from hilbert.operators import AdjOp, majorizes, pinv, range_inclusion

# Configure logging
logger = logging.getLogger(__name__)


def _require_endomorphism(op: AdjOp, alg_dim: int, length: int, name: str) -> None:
    if op.alg_dim != alg_dim or op.src_len != length or op.dst_len != length:
        raise DimensionMismatch(f"{name} must be an endomorphism of A^{length}, got {op!r}")


def _require_weights(F: GFrameFamily, theta1: AdjOp, theta2: AdjOp, K1: AdjOp, K2: AdjOp) -> None:
    if theta1.src_len != F.source_len or theta1.alg_dim != F.alg_dim:
        raise DimensionMismatch(f"theta1 {theta1!r} does not act on the source of {F!r}")
    if theta2.matrix.shape != theta1.matrix.shape or theta2.alg_dim != theta1.alg_dim:
        raise DimensionMismatch(f"theta1 {theta1!r} and theta2 {theta2!r} have different shapes")
    _require_endomorphism(K1, F.alg_dim, F.source_len, "K1")
    _require_endomorphism(K2, F.alg_dim, theta1.dst_len, "K2")


def dual_sum(F: GFrameFamily, G: GFrameFamily, K1: AdjOp, tol: float = None) -> ConstructionResult:
    """
    The memberwise sum {Y_xi + P_xi} of F and a K1-dual G for positive K1.

    The frame operator of the sum is S_F + S_G + K1 + K1*, which is certified.

    Raises:
        ShapeMismatch: If per-atom destinations differ
        NotPositive: If K1 is not positive
        DualityFailed: If G is not a K1-dual of F
    """
    tol = config.tol(tol)
    check_same_shape(F, G)
    _require_endomorphism(K1, F.alg_dim, F.source_len, "K1")
    if not positive_operator(K1, tol):
        raise NotPositive("K1 must be positive")
    if not is_k_dual(F, G, K1, tol):
        raise DualityFailed(f"{G!r} is not a K1-dual of {F!r}")

    family = sum_families(F, G)
    s_f, s_g = frame_operator(F), frame_operator(G)
    residual = frame_operator(family) - s_f - s_g - K1 - K1.H
    scale = max(1.0, s_f.norm() + s_g.norm() + 2.0 * K1.norm())

    first = check_kg_frame(F, K1, tol)
    b1, b2 = first.bessel_bound, bessel_bound(G)
    result = ConstructionResult(
        kind="dual-sum",
        family=family,
        claimed_bounds=FrameBounds(first.optimal_lower, b1 + b2),
        corrected_bounds=FrameBounds(first.optimal_lower, (np.sqrt(b1) + np.sqrt(b2)) ** 2),
        report=check_kg_frame(family, K1, tol),
        hypothesis_checks={"k1_positive": True, "k_dual": True, "f_frame": first.is_kg_frame},
        certificates={"frame_operator_identity": residual.norm() <= config.IDENTITY_TOL * scale},
        values={"f_upper": b1, "g_upper": b2},
    )
    if K1.norm() == 0.0:
        result.discrepancy_notes.append("degenerate K: K1 = 0")
    result.note_claims()
    return result


def orthogonal_sum(F: GFrameFamily, G: GFrameFamily, K1: AdjOp, K2: AdjOp, tol: float = None,
                   strict: bool = False) -> ConstructionResult:
    """
    The memberwise sum of a K1-g-frame and a K2-g-frame with orthogonal synthesis operators.

    Raises:
        NotOrthogonal: If sum_xi nu_xi Y_xi* o P_xi does not vanish
    """
    tol = config.tol(tol)
    check_same_shape(F, G)
    _require_endomorphism(K1, F.alg_dim, F.source_len, "K1")
    _require_endomorphism(K2, F.alg_dim, F.source_len, "K2")

    b1, b2 = bessel_bound(F), bessel_bound(G)
    cross = mixed_frame_operator(F, G).norm()
    if cross > tol * max(1.0, np.sqrt(b1 * b2)):
        raise NotOrthogonal(f"synthesis operators overlap with norm {cross:.3e}")

    first, second = check_kg_frame(F, K1, tol), check_kg_frame(G, K2, tol)
    checks = {"k1_frame": first.is_kg_frame, "k2_frame": second.is_kg_frame}
    enforce(checks, strict)

    family = sum_families(F, G)
    s_f, s_g = frame_operator(F), frame_operator(G)
    residual = frame_operator(family) - s_f - s_g
    smallest = min(first.optimal_lower, second.optimal_lower)
    result = ConstructionResult(
        kind="orthogonal-sum",
        family=family,
        claimed_bounds=FrameBounds(smallest, b1 + b2),
        corrected_bounds=FrameBounds(smallest / 2.0, b1 + b2),
        report=check_kg_frame(family, K1 + K2, tol),
        hypothesis_checks=checks,
        certificates={"cross_terms_vanish": residual.norm() <= config.IDENTITY_TOL * max(1.0, s_f.norm() + s_g.norm())},
        values={"k1_lower": first.optimal_lower, "k2_lower": second.optimal_lower},
    )
    if second.degenerate_k:
        result.discrepancy_notes.append("degenerate K: K2 = 0")
    result.note_claims()
    return result


def _cross_term(F: GFrameFamily, G: GFrameFamily, theta1: AdjOp, theta2: AdjOp) -> AdjOp:
    """theta1 T_F T_G* theta2* + theta2 T_G T_F* theta1*."""
    mixed = mixed_frame_operator(F, G)
    return theta1 @ mixed @ theta2.H + theta2 @ mixed.H @ theta1.H


def weighted_operator_sum(F: GFrameFamily, G: GFrameFamily, K1: AdjOp, K2: AdjOp, theta1: AdjOp,
                          theta2: AdjOp, tol: float = None, strict: bool = False) -> ConstructionResult:
    """
    The family {Y_xi o theta1* + P_xi o theta2*} on the destination module of theta1.

    Args:
        F: A K1-g-frame
        G: A Bessel family of the same shape
        K1: Endomorphism of the source module
        K2: Endomorphism of the destination module with theta1 K1 = K2 theta1
        theta1: Operator from the source to the destination module
        theta2: Operator of the same shape
        tol: Numerical tolerance
        strict: Raise HypothesisFailed instead of recording failed hypotheses

    Returns:
        ConstructionResult certified for K2
    """
    tol = config.tol(tol)
    check_same_shape(F, G)
    _require_weights(F, theta1, theta2, K1, K2)

    first = check_kg_frame(F, K1, tol)
    b1, b2 = first.bessel_bound, bessel_bound(G)
    positive = _cross_term(F, G, theta1, theta2) + theta2 @ frame_operator(G) @ theta2.H
    checks = {
        "k1_frame": first.is_kg_frame,
        "intertwining": intertwines(theta1, K1, K2, tol),
        "trivial_intersection": trivial_intersection(theta1, K2, tol),
        "cross_term_positive": positive_operator(positive, tol),
    }
    enforce(checks, strict)

    family = sum_families(F.transformed(theta1.H), G.transformed(theta2.H))
    norm1, norm2 = theta1.norm(), theta2.norm()
    pinv_norm = pinv(theta1, tol).norm()
    lower = first.optimal_lower / pinv_norm ** 2 if pinv_norm > 0 else 0.0
    result = ConstructionResult(
        kind="weighted-sum",
        family=family,
        claimed_bounds=FrameBounds(lower, b1 * norm1 ** 2 + b2 * norm2 ** 2),
        corrected_bounds=FrameBounds(lower, (np.sqrt(b1) * norm1 + np.sqrt(b2) * norm2) ** 2),
        report=check_kg_frame(family, K2, tol),
        hypothesis_checks=checks,
        informational={"closed_range": True},
        values={"f_lower": first.optimal_lower, "f_upper": b1, "g_upper": b2},
    )
    result.note_claims()
    return result


def scalar_weighted_sum(F: GFrameFamily, G: GFrameFamily, K1: AdjOp, K2: AdjOp, theta1: AdjOp, theta2: AdjOp,
                        alpha1: float, alpha2: float, tol: float = None, strict: bool = False) -> ConstructionResult:
    """
    The family {alpha1 Y_xi o theta1* + alpha2 P_xi o theta2*} for two K1-g-frames.

    With P = alpha1 theta1 + alpha2 theta2 and Q = alpha1 theta1 - alpha2 theta2 the
    lower bound (lambda / 2) ||K1^dagger||^-2 / alpha holds through whichever of
    P, Q satisfies R(K2) in R(.) and R(.*) in R(K1), alpha being the least
    constant with K2 K2* <= alpha (.)(.)*.
    """
    tol = config.tol(tol)
    if alpha1 < 0 or alpha2 < 0 or alpha1 + alpha2 == 0:
        raise ValueError(f"scalar weights must be nonnegative and not both zero, got {alpha1}, {alpha2}")
    check_same_shape(F, G)
    _require_weights(F, theta1, theta2, K1, K2)

    first, second = check_kg_frame(F, K1, tol), check_kg_frame(G, K1, tol)
    plus = theta1 * alpha1 + theta2 * alpha2
    minus = theta1 * alpha1 - theta2 * alpha2
    condition_i = range_inclusion(K2, plus, tol) and range_inclusion(plus.H, K1, tol)
    condition_ii = range_inclusion(minus.H, K1, tol) and range_inclusion(K2, minus, tol)
    checks = {
        "f_frame": first.is_kg_frame,
        "g_frame": second.is_kg_frame,
        "cross_term_positive": positive_operator(_cross_term(F, G, theta1, theta2), tol),
        "range_conditions": condition_i or condition_ii,
    }
    enforce(checks, strict)

    smallest = min(first.optimal_lower, second.optimal_lower)
    k1_pinv = pinv(K1, tol).norm()
    candidates = []
    for holds, op in ((condition_i, plus), (condition_ii, minus)):
        if not holds or smallest == 0.0 or k1_pinv == 0.0:
            continue
        alpha = majorizes(op, K2, tol)
        candidates.append(math.inf if alpha == 0 else (smallest / 2.0) / alpha / k1_pinv ** 2)
    lower = max(candidates) if candidates else 0.0

    b1, b2 = first.bessel_bound, second.bessel_bound
    norm1, norm2 = theta1.norm(), theta2.norm()
    family = sum_families(F.transformed(theta1.H).scaled(alpha1), G.transformed(theta2.H).scaled(alpha2))
    result = ConstructionResult(
        kind="scalar-sum",
        family=family,
        claimed_bounds=FrameBounds(lower, alpha1 ** 2 * b1 * norm1 ** 2 + alpha2 ** 2 * b2 * norm2 ** 2),
        corrected_bounds=FrameBounds(lower, (alpha1 * np.sqrt(b1) * norm1 + alpha2 * np.sqrt(b2) * norm2) ** 2),
        report=check_kg_frame(family, K2, tol),
        hypothesis_checks=checks,
        informational={"condition_i": condition_i, "condition_ii": condition_ii, "closed_range": True},
        values={"lambda": smallest, "k1_pinv_norm": k1_pinv},
    )
    result.note_claims()
    return result
