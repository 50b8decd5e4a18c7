"""
Envelope Auditor
Turns a construction outcome into a trial verdict and discrepancy rows.
"""

import logging
import math
from typing import Any, Dict, List, Optional, Tuple

from config import config
from constructions.results import ConstructionResult, Verdict, compare, nan_metrics
from harness.report import DiscrepancyRow, TrialRecord

# Configure logging
logger = logging.getLogger(__name__)


def _finite(value: Optional[float]) -> Optional[float]:
    if value is None or not math.isfinite(value):
        return None
    return float(value)


def discrepancy_rows(trial: int, result: ConstructionResult) -> List[DiscrepancyRow]:
    """
    Claimed and corrected constants against the certified ones.

    Rows are only produced when the hypotheses hold and both sides are finite.
    """
    if not result.hypotheses_hold:
        return []
    certified = result.certified_bounds
    rows = []
    for source, bounds in (("claimed", result.claimed_bounds), ("corrected", result.corrected_bounds)):
        for side, stated, value in (("lower", bounds.lower, certified.lower), ("upper", bounds.upper, certified.upper)):
            if not (math.isfinite(stated) and math.isfinite(value)):
                continue
            check = compare(f"{result.kind}.{side}", side, stated, value, config.ENVELOPE_TOL)
            rows.append(DiscrepancyRow(
                trial=trial,
                quantity=check.quantity,
                source=source,
                side=side,
                stated=check.claimed,
                certified=check.certified,
                holds=check.holds,
                ratio=_finite(check.ratio),
            ))
    return rows


def audit_result(trial: int, dims: str, result: ConstructionResult) -> Tuple[TrialRecord, List[DiscrepancyRow]]:
    failures = result.envelope_violations(config.ENVELOPE_TOL)
    bounds = result.certified_bounds
    record = TrialRecord(
        trial=trial,
        dims=dims,
        status="fail" if failures else "pass",
        hypotheses_hold=result.hypotheses_hold,
        lower=_finite(bounds.lower),
        upper=_finite(bounds.upper),
        failures=failures,
        notes=list(result.discrepancy_notes),
    )
    return record, discrepancy_rows(trial, result)


def audit_verdict(trial: int, dims: str, verdict: Verdict) -> TrialRecord:
    failures = [] if verdict.consistent else [
        f"conclusion {name} contradicted" for name, ok in verdict.conclusions.items() if not ok
    ]
    failures.extend(f"non-finite value {name}" for name in nan_metrics(verdict.values))
    notes = list(verdict.notes)
    if not verdict.hypotheses_hold:
        failed = sorted(name for name, ok in verdict.hypothesis_checks.items() if not ok)
        notes.append(f"hypotheses not met: {', '.join(failed)}")
    summary = ", ".join(f"{name}={'yes' if ok else 'no'}" for name, ok in verdict.conclusions.items())
    notes.append(summary)
    return TrialRecord(
        trial=trial,
        dims=dims,
        status="fail" if failures else "pass",
        hypotheses_hold=verdict.hypotheses_hold if verdict.hypothesis_checks else None,
        failures=failures,
        notes=notes,
    )


class EnvelopeAuditor:
    """
    Pipeline stage that grades a trial.
    Certified-envelope violations and contradicted conclusions are hard failures;
    contradicted stated constants only become discrepancy rows.
    """

    def __init__(self):
        """Initialize the Envelope Auditor."""
        logger.info("EnvelopeAuditor initialized")

    def execute(self, state: Dict[str, Any]) -> Dict[str, Any]:
        """
        Grade the trial in state.

        Args:
            state: Current state containing 'trial_index', 'dims', 'skipped', 'outcome' and 'error'

        Returns:
            Updated state with record and discrepancies
        """
        trial = state["trial_index"]
        dims = state["dims"].label() if state.get("dims") is not None else "-"
        rows: List[DiscrepancyRow] = []

        if state.get("skipped"):
            record = TrialRecord(trial=trial, dims=dims, status="skipped",
                                 notes=["rejection sampling exhausted"])
        elif state.get("error"):
            record = TrialRecord(trial=trial, dims=dims, status="fail", failures=[state["error"]])
        elif isinstance(state.get("outcome"), ConstructionResult):
            record, rows = audit_result(trial, dims, state["outcome"])
        else:
            record = audit_verdict(trial, dims, state["outcome"])

        if record.status == "fail":
            logger.warning(f"[AUDITOR] trial {trial} failed: {'; '.join(record.failures)}")
        else:
            logger.info(f"[AUDITOR] trial {trial}: {record.status}")
        state.update({"record": record, "discrepancies": rows})
        return state
