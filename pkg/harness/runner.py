"""
Construction Runner
Dispatches a scenario to the construction or check of its kind.
"""

import logging
from typing import Any, Callable, Dict, Union

import numpy as np

from algebra.elements import loewner_leq
from config import config
from constructions import (
    ConstructionResult,
    Verdict,
    dual_sum,
    k_sum_frame,
    orthogonal_sum,
    precompose_adjoint,
    range_equality_characterization,
    recover_frame_check,
    scalar_weighted_sum,
    tight_surjectivity_equivalence,
    transfer_frame,
    weighted_operator_sum,
)
from errors import DimensionMismatch, KGFrameError, UnsupportedKind
from frames.bounds import bessel_bound, check_kg_frame
from frames.family import (
    GFrameFamily,
    analysis,
    analysis_operator,
    direct_sum_inner,
    frame_operator,
    synthesis,
    synthesis_operator,
)
from harness.generator import trial_rng
from harness.scenario import Scenario, canonical_kind
from hilbert.module import ModuleVec, inner
from hilbert.operators import AdjOp, apply

# Configure logging
logger = logging.getLogger(__name__)

Outcome = Union[ConstructionResult, Verdict]

SAMPLES = 3


def _sample_vectors(scenario: Scenario, count: int = SAMPLES):
    """Ginibre sample vectors from the synthesis stream of the scenario's trial."""
    rng = trial_rng(scenario.seed, scenario.trial, stream=2)
    d, n = scenario.alg_dim, scenario.source_len
    for _ in range(count):
        row = (rng.standard_normal((d, n * d)) + 1j * rng.standard_normal((d, n * d))) / np.sqrt(2.0)
        yield ModuleVec(row, d)


def _operator(scenario: Scenario, name: str, default: Callable[[], AdjOp] = None) -> AdjOp:
    op = scenario.operator(name)
    if op is None:
        if default is None:
            raise DimensionMismatch(f"scenario of kind {scenario.kind} needs operator {name}")
        return default()
    return op


def _second_family(scenario: Scenario) -> GFrameFamily:
    second = scenario.secondary_family()
    if second is None:
        raise DimensionMismatch(f"scenario of kind {scenario.kind} needs second_family")
    return second


def frame_check_verdict(scenario: Scenario, tol: float = None) -> Verdict:
    """
    Full K-g-frame check of the primary family, K defaulting to the identity.

    The conclusions certify the reported constants: the sandwich inequality on
    sample vectors, bisection agreement and the bound ordering A ||K||^2 <= B.
    """
    tol = config.tol(tol)
    F = scenario.primary_family()
    K = _operator(scenario, "K", lambda: AdjOp.identity(F.alg_dim, F.source_len))
    report = check_kg_frame(F, K, tol, cross_check=True)

    sandwich = True
    for f in _sample_vectors(scenario):
        energy = direct_sum_inner(F, analysis(F, f), analysis(F, f))
        upper = inner(f, f).entries * report.bessel_bound
        sandwich &= loewner_leq(energy, upper, config.ENVELOPE_TOL)
        if report.is_kg_frame and not report.degenerate_k:
            k_adj = apply(K.H, f)
            lower = inner(k_adj, k_adj).entries * report.optimal_lower
            sandwich &= loewner_leq(lower, energy, config.ENVELOPE_TOL)

    conclusions = {
        "sandwich": bool(sandwich),
        "bisection_agrees": report.bisection_agrees is not False,
        "bounds_ordered": report.bounds.consistent_with(K.norm(), config.ENVELOPE_TOL),
    }
    values: Dict[str, Any] = report.as_record()
    values["k_norm"] = K.norm()
    notes = [] if report.is_kg_frame else ["family is not a K-g-frame"]
    if report.degenerate_k:
        notes.append("degenerate K: K = 0")
    return Verdict("frame-check", {}, conclusions, all(conclusions.values()), values=values, notes=notes, family=F)


def synthesis_verdict(scenario: Scenario, tol: float = None) -> Verdict:
    """Analysis and synthesis as mutual adjoints, norm bound sqrt(B) and synthesis o analysis = S."""
    tol = config.tol(tol)
    F = scenario.primary_family()
    bound = bessel_bound(F)
    samples = list(_sample_vectors(scenario, 2 * SAMPLES))

    adjoint = True
    for f, g in zip(samples[:SAMPLES], samples[SAMPLES:]):
        coefficients = analysis(F, g)
        lhs = inner(synthesis(F, coefficients), f).entries
        rhs = direct_sum_inner(F, coefficients, analysis(F, f))
        adjoint &= np.linalg.norm(lhs - rhs) <= config.IDENTITY_TOL * max(1.0, np.linalg.norm(rhs))

    s = frame_operator(F)
    reconstruction = (synthesis_operator(F) @ analysis_operator(F) - s).norm()
    conclusions = {
        "adjointness": bool(adjoint),
        "norm_bound": synthesis_operator(F).norm() <= np.sqrt(bound) + config.ENVELOPE_TOL,
        "frame_operator": reconstruction <= config.IDENTITY_TOL * max(1.0, s.norm()),
    }
    return Verdict("synthesis", {}, conclusions, all(conclusions.values()),
                   values={"bessel_bound": bound, "synthesis_norm": synthesis_operator(F).norm()}, family=F)


def run_construction(scenario: Scenario, tol: float = None, strict: bool = False) -> Outcome:
    """
    Run the construction (or equivalence check) named by the scenario's kind.

    Args:
        scenario: Validated scenario
        tol: Numerical tolerance, defaulting to the configured one
        strict: Raise HypothesisFailed on the first failed hypothesis

    Returns:
        ConstructionResult for constructions, Verdict for checks and equivalences
    """
    tol = config.tol(tol)
    kind = canonical_kind(scenario.kind)
    F = scenario.primary_family()

    def op(name: str) -> AdjOp:
        return _operator(scenario, name)

    if kind == "frame-check":
        return frame_check_verdict(scenario, tol)
    if kind == "1.9":
        return synthesis_verdict(scenario, tol)
    if kind == "2.1":
        return precompose_adjoint(F, op("K"), op("theta"), tol, strict=strict)
    if kind == "2.2":
        return recover_frame_check(F, op("K"), op("theta"), tol)
    if kind == "2.3":
        return tight_surjectivity_equivalence(F, op("K"), op("theta"), tol)
    if kind == "2.4":
        return transfer_frame(F, op("K"), op("T"), op("theta"), tol, strict=strict)
    if kind == "2.5":
        return range_equality_characterization(F, op("K"), tol)
    if kind == "2.6":
        return k_sum_frame(F, op("K1"), op("K2"), tol, strict=strict)
    if kind == "3.1i":
        return dual_sum(F, _second_family(scenario), op("K1"), tol)
    if kind == "3.1ii":
        return orthogonal_sum(F, _second_family(scenario), op("K1"), op("K2"), tol, strict=strict)
    if kind == "3.2":
        return weighted_operator_sum(F, _second_family(scenario), op("K1"), op("K2"),
                                     op("theta1"), op("theta2"), tol, strict=strict)
    if kind == "3.3":
        alpha1 = scenario.scalars.get("alpha1", 1.0)
        alpha2 = scenario.scalars.get("alpha2", 1.0)
        return scalar_weighted_sum(F, _second_family(scenario), op("K1"), op("K2"),
                                   op("theta1"), op("theta2"), alpha1, alpha2, tol, strict=strict)
    raise UnsupportedKind(f"no construction for kind {kind!r}")


class ConstructionRunner:
    """
    Pipeline stage that runs the construction of a generated scenario.
    Construction errors are recorded in the state instead of stopping the suite.
    """

    def __init__(self):
        """Initialize the Construction Runner."""
        logger.info("ConstructionRunner initialized")

    def execute(self, state: Dict[str, Any]) -> Dict[str, Any]:
        """
        Run the construction for the scenario in state.

        Args:
            state: Current state containing 'scenario' and 'tol'

        Returns:
            Updated state with outcome and error
        """
        scenario = state["scenario"]
        try:
            outcome = run_construction(scenario, state.get("tol"))
            logger.info(f"[RUNNER] {scenario.kind} trial {scenario.trial} finished")
            state.update({"outcome": outcome, "error": None})
        except KGFrameError as e:
            logger.warning(f"[RUNNER] {scenario.kind} trial {scenario.trial} raised {type(e).__name__}: {e}")
            state.update({"outcome": None, "error": f"{type(e).__name__}: {e}"})
        return state
