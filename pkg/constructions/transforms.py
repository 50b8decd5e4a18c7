"""
Operator-Transform Constructions
New K-g-frames obtained by precomposing a family with operators, plus the related equivalences.
"""

import logging
import math
from typing import Optional

import numpy as np

from config import config
from constructions.hypotheses import commutes, enforce, same_kernel, trivial_intersection
from constructions.results import ConstructionResult, Verdict, compare
from errors import DimensionMismatch, HypothesisFailed, NotTight
from frames.bounds import FrameBounds, check_bessel, check_kg_frame, check_kg_frame_on
from frames.family import GFrameFamily, synthesis_operator
from hilbert.operators import (
    AdjOp,
    Submodule,
    douglas_solve,
    is_surjective,
    majorizes,
    min_gain,
    pinv,
    range_inclusion,
    rank,
    restricted_min_gain,
)

# Configure logging
logger = logging.getLogger(__name__)


def _require_endomorphism(F: GFrameFamily, op: AdjOp, name: str) -> None:
    if op.alg_dim != F.alg_dim or op.src_len != F.source_len or op.dst_len != F.source_len:
        raise DimensionMismatch(f"{name} must be an endomorphism of A^{F.source_len}, got {op!r}")


def precompose_adjoint(F: GFrameFamily, K: AdjOp, theta: AdjOp, tol: float = None,
                       strict: bool = False) -> ConstructionResult:
    """
    The family {Y_xi o theta*} for theta commuting with K.

    Args:
        F: A K-g-frame
        K: Endomorphism of the source module
        theta: Endomorphism commuting with K with R(K*) meeting N(theta*) trivially
        tol: Numerical tolerance
        strict: Raise HypothesisFailed instead of recording failed hypotheses

    Returns:
        ConstructionResult with claimed bounds (A ||(theta*)^dagger||^-2, B ||theta*||^2)
    """
    tol = config.tol(tol)
    _require_endomorphism(F, K, "K")
    _require_endomorphism(F, theta, "theta")

    base = check_kg_frame(F, K, tol)
    checks = {
        "source_frame": base.is_kg_frame,
        "commutes": commutes(theta, K, tol),
        "trivial_intersection": trivial_intersection(theta, K, tol),
    }
    enforce(checks, strict)

    family = F.transformed(theta.H)
    report = check_kg_frame(family, K, tol)
    pinv_norm = pinv(theta.H, tol).norm()
    lower = base.optimal_lower / pinv_norm ** 2 if pinv_norm > 0 else 0.0
    upper = base.bessel_bound * theta.norm() ** 2
    bounds = FrameBounds(lower, upper)

    result = ConstructionResult(
        kind="precompose",
        family=family,
        claimed_bounds=bounds,
        corrected_bounds=bounds,
        report=report,
        hypothesis_checks=checks,
        informational={"closed_range": True},
        values={"source_lower": base.optimal_lower, "source_upper": base.bessel_bound, "pinv_norm": pinv_norm},
    )
    result.note_claims()
    logger.info(f"[CONSTRUCT] precompose: claimed ({lower:.6g}, {upper:.6g}), "
                f"certified ({report.optimal_lower:.6g}, {report.bessel_bound:.6g})")
    return result


def recover_frame_check(F: GFrameFamily, K: AdjOp, theta: AdjOp, tol: float = None) -> Verdict:
    """
    Recover the frame property of F from both precomposed families.

    When K is surjective, theta commutes with K and both {Y_xi o theta} and
    {Y_xi o theta*} are K-g-frames, F itself is a K-g-frame and theta is
    invertible.
    """
    tol = config.tol(tol)
    _require_endomorphism(F, K, "K")
    _require_endomorphism(F, theta, "theta")

    checks = {
        "k_surjective": is_surjective(K, tol),
        "commutes": commutes(theta, K, tol),
        "theta_frame": check_kg_frame(F.transformed(theta), K, tol).is_kg_frame,
        "theta_adjoint_frame": check_kg_frame(F.transformed(theta.H), K, tol).is_kg_frame,
    }
    conclusions = {
        "frame": check_kg_frame(F, K, tol).is_kg_frame,
        "theta_surjective": is_surjective(theta, tol),
        "theta_injective": min_gain(theta) > tol * theta.norm(),
    }
    hold = all(checks.values())
    consistent = not hold or all(conclusions.values())
    notes = [] if hold else [f"hypotheses not met: {', '.join(k for k, v in checks.items() if not v)}"]
    if not consistent:
        logger.warning(f"[CONSTRUCT] recover: hypotheses hold but conclusions {conclusions}")
    return Verdict("recover", checks, conclusions, consistent, notes=notes)


def tight_surjectivity_equivalence(F: GFrameFamily, K: AdjOp, theta: AdjOp, tol: float = None) -> Verdict:
    """
    For a delta-tight F and K* bounded below: theta is surjective iff {Y_xi o theta*} is a K-g-frame.

    Raises:
        NotTight: If F is not tight for K
        HypothesisFailed: If K* is not bounded below
    """
    tol = config.tol(tol)
    _require_endomorphism(F, K, "K")
    _require_endomorphism(F, theta, "theta")

    report = check_kg_frame(F, K, tol)
    if report.tight_constant is None:
        raise NotTight(f"{F!r} is not tight for {K!r}")
    gain = min_gain(K.H)
    if gain <= tol * max(1.0, K.norm()):
        raise HypothesisFailed("k_adjoint_bounded_below", f"min gain of K* is {gain:.3e}")

    checks = {"commutes": commutes(theta, K, tol)}
    surjective = is_surjective(theta, tol)
    frame = check_kg_frame(F.transformed(theta.H), K, tol).is_kg_frame
    consistent = not checks["commutes"] or surjective == frame
    if not consistent:
        logger.warning(f"[CONSTRUCT] tight-surjectivity disagreement: surjective={surjective} frame={frame}")
    return Verdict(
        "tight-surjectivity",
        checks,
        {"theta_surjective": surjective, "precomposed_frame": frame},
        consistent,
        values={"delta": report.tight_constant, "k_adjoint_min_gain": gain},
    )


def transfer_frame(F: GFrameFamily, K: AdjOp, T: AdjOp, theta: AdjOp, tol: float = None,
                   strict: bool = False) -> ConstructionResult:
    """
    Transfer a K-g-frame for R(T) to a K-g-frame for R(theta) when N(theta) = N(T).

    With P = theta o T^dagger (so P o T = theta) commuting with K, the family
    {Y_xi o theta*} is certified on R(theta).

    Args:
        F: Family whose precomposition {Y_xi o T*} is a K-g-frame for R(T)
        K: Endomorphism commuting with P
        T: Endomorphism defining the source range
        theta: Endomorphism sharing the kernel of T
        tol: Numerical tolerance
        strict: Raise HypothesisFailed instead of recording failed hypotheses

    Returns:
        ConstructionResult with claimed bounds (C ||(P*)^-1||^-2, B ||P*||^2)
    """
    tol = config.tol(tol)
    for name, op in (("K", K), ("T", T), ("theta", theta)):
        _require_endomorphism(F, op, name)

    transfer = theta @ pinv(T, tol)
    source = check_kg_frame_on(F.transformed(T.H), K, Submodule(T), tol)
    checks = {
        "kernel_equality": same_kernel(T, theta, tol),
        "trivial_intersection": trivial_intersection(theta, K, tol),
        "intertwining": commutes(K, transfer, tol),
        "source_frame": source.is_kg_frame,
        "p_invertible_on_range": rank(transfer @ T, tol) == rank(T, tol),
    }
    enforce(checks, strict)

    certificates = {}
    if checks["kernel_equality"]:
        residual = (transfer @ T - theta).norm()
        certificates["factorization"] = residual <= config.IDENTITY_TOL * max(1.0, theta.norm())

    target = Submodule(theta)
    family = F.transformed(theta.H)
    report = check_kg_frame_on(family, K, target, tol)
    gain = restricted_min_gain(transfer.H, target, tol)
    if math.isinf(source.optimal_lower):
        lower = math.inf if gain > 0 else 0.0
    else:
        lower = source.optimal_lower * gain ** 2
    upper = source.bessel_bound * transfer.norm() ** 2
    bounds = FrameBounds(lower, upper)

    result = ConstructionResult(
        kind="transfer",
        family=family,
        claimed_bounds=bounds,
        corrected_bounds=bounds,
        report=report,
        hypothesis_checks=checks,
        certificates=certificates,
        informational={"closed_range": True},
        values={"source_lower": source.optimal_lower, "source_upper": source.bessel_bound,
                "restricted_gain": gain, "transfer_norm": transfer.norm()},
    )
    result.note_claims()
    return result


def range_equality_characterization(F: GFrameFamily, K: AdjOp, tol: float = None) -> Verdict:
    """
    Three equivalent statements about F and K, each evaluated independently.

    (1) R(K) = R(T) for the synthesis operator T of F.
    (2) Two-sided majorization between K K* and T T*.
    (3) F is a K-g-frame and Y_xi = P_xi o K* for a Bessel family P built from
        the Douglas factor Q of T = K o Q, with Bessel bound ||Q||^2.

    Returns:
        Verdict whose family is the factor family P when it was constructed
    """
    tol = config.tol(tol)
    _require_endomorphism(F, K, "K")
    synth = synthesis_operator(F)

    equal_ranges = range_inclusion(K, synth, tol) and range_inclusion(synth, K, tol)
    lambda_1 = majorizes(synth, K, tol)
    lambda_2 = majorizes(K, synth, tol)
    two_sided = lambda_1 is not None and lambda_2 is not None

    factor_family: Optional[GFrameFamily] = None
    factorizes = False
    values = {"lambda_1": lambda_1, "lambda_2": lambda_2}
    if range_inclusion(synth, K, tol):
        factor = douglas_solve(K, synth, tol)
        coefficients = factor.H.matrix
        d = F.alg_dim
        members, offset = [], 0
        for weight, fiber in zip(F.weights, F.fibers):
            block = coefficients[:, offset:offset + fiber * d] / np.sqrt(weight)
            members.append(AdjOp(block, d))
            offset += fiber * d
        factor_family = F.with_members(members)
        reproduces = all(
            (phi @ K.H - ups).norm() <= tol * max(1.0, ups.norm())
            for phi, ups in zip(factor_family.members, F.members)
        )
        bound = factor.norm() ** 2
        values["factor_bessel"] = bound
        factorizes = (check_kg_frame(F, K, tol).is_kg_frame and reproduces
                      and check_bessel(factor_family, bound, tol))

    conclusions = {"equal_ranges": equal_ranges, "two_sided_majorization": two_sided, "factorization": factorizes}
    consistent = equal_ranges == two_sided == factorizes
    if not consistent:
        logger.warning(f"[CONSTRUCT] range-equality disagreement: {conclusions}")
    return Verdict("range-equality", {}, conclusions, consistent, values=values, family=factor_family)


def k_sum_frame(F: GFrameFamily, K1: AdjOp, K2: AdjOp, tol: float = None,
                tight_branch: Optional[bool] = None, strict: bool = False) -> ConstructionResult:
    """
    F as a (K1 + K2)-g-frame, and the tight-frame range criterion for K2.

    Args:
        F: A K1-g-frame
        K1: First endomorphism
        K2: Second endomorphism
        tol: Numerical tolerance
        tight_branch: None runs the tight criterion when F is tight for K1,
            True requires tightness, False skips it
        strict: Raise HypothesisFailed instead of recording failed hypotheses

    Returns:
        ConstructionResult certified for K1 + K2

    Raises:
        NotTight: If tight_branch is True and F is not tight for K1
    """
    tol = config.tol(tol)
    _require_endomorphism(F, K1, "K1")
    _require_endomorphism(F, K2, "K2")

    first = check_kg_frame(F, K1, tol)
    second = check_kg_frame(F, K2, tol)
    checks = {"k1_frame": first.is_kg_frame, "k2_frame": second.is_kg_frame}
    enforce(checks, strict)

    report = check_kg_frame(F, K1 + K2, tol)
    smallest = min(first.optimal_lower, second.optimal_lower)
    result = ConstructionResult(
        kind="k-sum",
        family=F,
        claimed_bounds=FrameBounds(smallest / 2.0, first.bessel_bound / 2.0),
        corrected_bounds=FrameBounds(smallest / 4.0, first.bessel_bound),
        report=report,
        hypothesis_checks=checks,
        values={"k1_lower": first.optimal_lower, "k2_lower": second.optimal_lower},
    )

    delta = first.tight_constant
    if tight_branch and delta is None:
        raise NotTight(f"{F!r} is not tight for K1")
    if delta is not None and tight_branch is not False:
        included = range_inclusion(K2, K1, tol)
        result.certificates["tight_range_equivalence"] = included == second.is_kg_frame
        result.values["delta"] = delta
        if included:
            gamma = majorizes(K1, K2, tol)
            tight_lower = math.inf if gamma == 0 else delta / gamma
            result.values["gamma"] = gamma
            result.certificates["tight_lower_bound"] = compare(
                "k-sum.tight", "lower", tight_lower, second.optimal_lower).holds

    result.note_claims()
    return result
