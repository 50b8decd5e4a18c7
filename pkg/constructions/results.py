"""
Construction Results
Result records shared by every construction: claimed, corrected and certified constants.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from config import config
from frames.bounds import FrameBounds, FrameReport
from frames.family import GFrameFamily

# Configure logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Comparison:
    """One stated constant compared with the certified optimum."""

    quantity: str
    side: str
    claimed: float
    certified: float
    holds: bool
    ratio: Optional[float]


def _slack(value: float, tol: float) -> float:
    return tol * max(1.0, abs(value))


def compare(quantity: str, side: str, claimed: float, certified: float, tol: float = None) -> Comparison:
    """
    Compare a stated bound with the certified one.

    A lower bound holds when certified >= claimed, an upper bound when
    certified <= claimed, both up to tol relative. The ratio is below one
    exactly when the stated constant is too optimistic.
    """
    tol = config.ENVELOPE_TOL if tol is None else tol
    if side == "lower":
        if math.isinf(claimed):
            holds = math.isinf(certified)
            ratio = None
        else:
            holds = certified >= claimed - _slack(claimed, tol)
            ratio = certified / claimed if claimed > 0 and not math.isinf(certified) else None
    else:
        holds = certified <= claimed + _slack(claimed, tol)
        ratio = claimed / certified if certified > 0 else None
    return Comparison(quantity, side, float(claimed), float(certified), bool(holds), ratio)


def nan_metrics(values: Dict[str, Any]) -> List[str]:
    """Names of the numeric entries that are NaN; such a metric can never certify anything."""
    return sorted(
        name for name, value in values.items()
        if isinstance(value, float) and math.isnan(value)
    )


@dataclass
class ConstructionResult:
    """
    Outcome of a frame construction.

    Attributes:
        kind: Construction kind
        family: The constructed family
        claimed_bounds: Constants as stated for the construction
        corrected_bounds: Constants that are provably valid
        report: Certified report of the constructed family
        hypothesis_checks: Named predicates that gate the envelope assertion
        certificates: Identities and equivalences that must always hold
        informational: Facts that hold automatically in finite dimension
        discrepancy_notes: Human-readable notes on failed claims
        values: Auxiliary constants (delta, gamma, norms)
    """

    kind: str
    family: GFrameFamily
    claimed_bounds: FrameBounds
    corrected_bounds: FrameBounds
    report: FrameReport
    hypothesis_checks: Dict[str, bool]
    certificates: Dict[str, bool] = field(default_factory=dict)
    informational: Dict[str, bool] = field(default_factory=dict)
    discrepancy_notes: List[str] = field(default_factory=list)
    values: Dict[str, float] = field(default_factory=dict)

    @property
    def certified_bounds(self) -> FrameBounds:
        return self.report.bounds

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.hypothesis_checks.values())

    def comparisons(self, tol: float = None) -> List[Comparison]:
        """Stated (claimed) constants against the certified ones."""
        certified = self.certified_bounds
        return [
            compare(f"{self.kind}.lower", "lower", self.claimed_bounds.lower, certified.lower, tol),
            compare(f"{self.kind}.upper", "upper", self.claimed_bounds.upper, certified.upper, tol),
        ]

    def envelope_violations(self, tol: float = None) -> List[str]:
        """Failures of the corrected envelope or of a certificate; empty when sound."""
        failures = [f"certificate {name} failed" for name, ok in self.certificates.items() if not ok]
        certified = self.certified_bounds
        if math.isnan(certified.lower) or not math.isfinite(certified.upper):
            failures.append(f"non-finite certified bounds ({certified.lower}, {certified.upper})")
        failures.extend(f"non-finite value {name}" for name in nan_metrics(self.values))
        if not self.hypotheses_hold:
            return failures
        for side, claimed, value in (
            ("lower", self.corrected_bounds.lower, certified.lower),
            ("upper", self.corrected_bounds.upper, certified.upper),
        ):
            check = compare(self.kind, side, claimed, value, tol)
            if not check.holds:
                failures.append(f"{side} envelope violated: certified {value:.12g} vs corrected {claimed:.12g}")
        return failures

    def note_claims(self, tol: float = None) -> None:
        """Append a note for every claimed constant the certified bounds contradict."""
        if not self.hypotheses_hold:
            failed = sorted(name for name, ok in self.hypothesis_checks.items() if not ok)
            self.discrepancy_notes.append(f"hypotheses not met: {', '.join(failed)}")
            return
        for check in self.comparisons(tol):
            if not check.holds:
                self.discrepancy_notes.append(
                    f"claimed {check.side} bound {check.claimed:.6g} fails (certified {check.certified:.6g})"
                )


@dataclass
class Verdict:
    """
    Outcome of an equivalence or corollary check.

    consistent is False exactly when the checked statement is contradicted.
    """

    kind: str
    hypothesis_checks: Dict[str, bool]
    conclusions: Dict[str, bool]
    consistent: bool
    values: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    family: Optional[GFrameFamily] = None

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.hypothesis_checks.values())
