"""
Suite Reports
Per-trial verdicts, discrepancy tables and their text / structured renderings.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, ValidationError

from constructions.results import ConstructionResult, Verdict
from errors import ParseError

# Configure logging
logger = logging.getLogger(__name__)

FLOAT_FORMAT = "{:.6g}".format


class TrialRecord(BaseModel):
    """Verdict of one fuzz trial."""

    trial: int
    dims: str
    status: Literal["pass", "fail", "skipped"]
    hypotheses_hold: Optional[bool] = None
    lower: Optional[float] = None
    upper: Optional[float] = None
    failures: List[str] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)


class DiscrepancyRow(BaseModel):
    """A stated constant against its certified counterpart in one trial."""

    trial: int
    quantity: str
    source: Literal["claimed", "corrected"]
    side: Literal["lower", "upper"]
    stated: float
    certified: float
    holds: bool
    ratio: Optional[float] = None


class Report(BaseModel):
    """
    Outcome of a theorem suite run.

    passed + failed + skipped always equals trials. wall_clock is stored but
    only rendered on request so that default reports are reproducible byte for byte.
    """

    kind: str
    master_seed: int
    trials: int
    settings: Dict[str, Any] = Field(default_factory=dict)
    records: List[TrialRecord] = Field(default_factory=list)
    discrepancies: List[DiscrepancyRow] = Field(default_factory=list)
    wall_clock: Optional[float] = None

    @property
    def passed(self) -> int:
        return sum(r.status == "pass" for r in self.records)

    @property
    def failed(self) -> int:
        return sum(r.status == "fail" for r in self.records)

    @property
    def skipped(self) -> int:
        return sum(r.status == "skipped" for r in self.records)

    @property
    def hard_failure(self) -> bool:
        return self.failed > 0

    def aggregate(self) -> pd.DataFrame:
        """Per stated quantity: number of rows, violations and the worst (smallest) ratio."""
        columns = ["quantity", "source", "count", "violations", "worst_ratio"]
        if not self.discrepancies:
            return pd.DataFrame(columns=columns)
        frame = pd.DataFrame([row.model_dump() for row in self.discrepancies])
        grouped = frame.groupby(["quantity", "source"], sort=True).agg(
            count=("holds", "size"),
            violations=("holds", lambda s: int((~s.astype(bool)).sum())),
            worst_ratio=("ratio", "min"),
        )
        return grouped.reset_index()[columns]


def _records_table(report: Report) -> pd.DataFrame:
    rows = [
        {
            "trial": r.trial,
            "dims": r.dims,
            "status": r.status,
            "hypotheses": "-" if r.hypotheses_hold is None else ("yes" if r.hypotheses_hold else "no"),
            "lower": r.lower,
            "upper": r.upper,
            "detail": "; ".join(r.failures or r.notes),
        }
        for r in report.records
    ]
    return pd.DataFrame(rows, columns=["trial", "dims", "status", "hypotheses", "lower", "upper", "detail"])


def _table(frame: pd.DataFrame) -> str:
    if frame.empty:
        return "(none)"
    return frame.to_string(index=False, float_format=FLOAT_FORMAT, na_rep="-")


def render_text(report: Report, timing: bool = False) -> str:
    """Aligned plain-text report."""
    lines = [
        f"kind: {report.kind}",
        f"seed: {report.master_seed}",
        f"trials: {report.trials}  passed: {report.passed}  failed: {report.failed}  skipped: {report.skipped}",
    ]
    if report.settings:
        lines.append("settings: " + ", ".join(f"{k}={v}" for k, v in sorted(report.settings.items())))
    if timing and report.wall_clock is not None:
        lines.append(f"wall clock: {report.wall_clock:.3f} s")
    lines += ["", "Trials", _table(_records_table(report))]

    discrepancies = pd.DataFrame(
        [row.model_dump() for row in report.discrepancies],
        columns=list(DiscrepancyRow.model_fields),
    )
    if not discrepancies.empty:
        discrepancies = discrepancies[~discrepancies["holds"]]
    lines += ["", "Discrepancies (stated constants contradicted by certified ones)", _table(discrepancies)]
    lines += ["", "Aggregate", _table(report.aggregate())]
    return "\n".join(lines) + "\n"


def render_structured(report: Report, timing: bool = False) -> str:
    """JSON document of the full report."""
    exclude = None if timing else {"wall_clock"}
    return report.model_dump_json(indent=2, exclude=exclude) + "\n"


def render(report: Report, fmt: str = "text", timing: bool = False) -> str:
    if fmt == "text":
        return render_text(report, timing)
    if fmt == "structured":
        return render_structured(report, timing)
    raise ValueError(f"unknown report format {fmt!r}")


def save_report(report: Report, path: Union[str, Path]) -> None:
    Path(path).write_text(render_structured(report, timing=True), encoding="utf-8")


def load_report(path: Union[str, Path]) -> Report:
    """
    Load a structured report.

    Raises:
        ParseError: If the file is not a valid structured report
    """
    path = Path(path)
    logger.info(f"[REPORT] loading {path}")
    try:
        return Report.model_validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first.get("loc", ()))
        raise ParseError(first.get("msg", str(e)), field=location or None) from e


class OutcomeSummary(BaseModel):
    """Single construction or check, as printed by the construct and check commands."""

    kind: str
    consistent: bool
    hypothesis_checks: Dict[str, bool] = Field(default_factory=dict)
    conclusions: Dict[str, bool] = Field(default_factory=dict)
    certificates: Dict[str, bool] = Field(default_factory=dict)
    informational: Dict[str, bool] = Field(default_factory=dict)
    bounds: Dict[str, Optional[float]] = Field(default_factory=dict)
    values: Dict[str, Any] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)


def _number(value: Any) -> Any:
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None if math.isnan(value) else str(value)
    return value


def _flags(table: Dict[str, Any]) -> Dict[str, bool]:
    return {name: bool(ok) for name, ok in table.items()}


def summarize_outcome(outcome: Union[ConstructionResult, Verdict]) -> OutcomeSummary:
    """Flatten a ConstructionResult or Verdict into a printable summary."""
    if isinstance(outcome, Verdict):
        return OutcomeSummary(
            kind=outcome.kind,
            consistent=bool(outcome.consistent),
            hypothesis_checks=_flags(outcome.hypothesis_checks),
            conclusions=_flags(outcome.conclusions),
            values={k: _number(v) for k, v in outcome.values.items()},
            notes=outcome.notes,
        )
    certified = outcome.certified_bounds
    failures = outcome.envelope_violations()
    return OutcomeSummary(
        kind=outcome.kind,
        consistent=not failures,
        hypothesis_checks=_flags(outcome.hypothesis_checks),
        certificates=_flags(outcome.certificates),
        informational=_flags(outcome.informational),
        bounds={
            "claimed_lower": outcome.claimed_bounds.lower,
            "claimed_upper": outcome.claimed_bounds.upper,
            "corrected_lower": outcome.corrected_bounds.lower,
            "corrected_upper": outcome.corrected_bounds.upper,
            "certified_lower": certified.lower,
            "certified_upper": certified.upper,
        },
        values={k: _number(v) for k, v in outcome.values.items()},
        notes=outcome.discrepancy_notes + failures,
    )


def render_outcome(summary: OutcomeSummary, fmt: str = "text") -> str:
    if fmt == "structured":
        data = summary.model_dump()
        data["bounds"] = {k: _number(v) for k, v in summary.bounds.items()}
        return json.dumps(data, indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")

    lines = [f"kind: {summary.kind}", f"consistent: {'yes' if summary.consistent else 'no'}"]
    checks = [
        {"group": group, "name": name, "holds": "yes" if ok else "no"}
        for group, table in (
            ("hypothesis", summary.hypothesis_checks),
            ("conclusion", summary.conclusions),
            ("certificate", summary.certificates),
            ("informational", summary.informational),
        )
        for name, ok in table.items()
    ]
    lines += ["", "Checks", _table(pd.DataFrame(checks, columns=["group", "name", "holds"]))]
    if summary.bounds:
        bounds = pd.DataFrame(
            [{"side": side, **{src: summary.bounds[f"{src}_{side}"] for src in ("claimed", "corrected", "certified")}}
             for side in ("lower", "upper")],
            columns=["side", "claimed", "corrected", "certified"],
        )
        lines += ["", "Bounds", _table(bounds)]
    if summary.values:
        values = pd.DataFrame(
            [{"name": k, "value": v} for k, v in summary.values.items() if v is None or isinstance(v, (int, float, bool))],
            columns=["name", "value"],
        )
        lines += ["", "Values", _table(values)]
    if summary.notes:
        lines += ["", "Notes"] + [f"  {note}" for note in summary.notes]
    return "\n".join(lines) + "\n"
