"""
Scenario Files
Pydantic models for scenario documents plus load/save with validation.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field, ValidationError, field_validator

from config import config
from errors import DimensionMismatch, ParseError, UnsupportedKind
from frames.family import GFrameFamily, MeasureSpace
from hilbert.operators import AdjOp

# Configure logging
logger = logging.getLogger(__name__)

KINDS = (
    "1.9",
    "2.1",
    "2.2",
    "2.3",
    "2.4",
    "2.5",
    "2.6",
    "3.1i",
    "3.1ii",
    "3.2",
    "3.3",
    "frame-check",
)

# Descriptive aliases accepted wherever a kind is expected
KIND_ALIASES = {
    "synthesis": "1.9",
    "precompose": "2.1",
    "recover": "2.2",
    "tight-surjectivity": "2.3",
    "transfer": "2.4",
    "range-equality": "2.5",
    "k-sum": "2.6",
    "dual-sum": "3.1i",
    "orthogonal-sum": "3.1ii",
    "weighted-sum": "3.2",
    "scalar-sum": "3.3",
}


def canonical_kind(kind: str) -> str:
    """
    Resolve a kind or one of its aliases to the canonical kind id.

    Raises:
        UnsupportedKind: If neither a kind nor an alias
    """
    kind = KIND_ALIASES.get(kind, kind)
    if kind not in KINDS:
        raise UnsupportedKind(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    return kind


OPERATOR_NAMES = ("K", "K1", "K2", "T", "theta", "theta1", "theta2")

Entry = Tuple[float, float]


class OperatorSpec(BaseModel):
    """Complex matrix of an operator A^src_len -> A^dst_len as row-major [re, im] pairs."""

    src_len: int = Field(ge=1)
    dst_len: int = Field(ge=1)
    matrix: List[List[Entry]]

    @classmethod
    def from_op(cls, op: AdjOp) -> "OperatorSpec":
        pairs = np.stack([op.matrix.real, op.matrix.imag], axis=-1)
        return cls(src_len=op.src_len, dst_len=op.dst_len, matrix=pairs.tolist())

    def to_op(self, alg_dim: int, name: str = "operator") -> AdjOp:
        rows = {len(row) for row in self.matrix}
        if len(rows) > 1:
            raise DimensionMismatch(f"{name}: ragged matrix rows")
        pairs = np.asarray(self.matrix, dtype=np.float64).reshape(len(self.matrix), -1, 2)
        shape = (self.src_len * alg_dim, self.dst_len * alg_dim)
        if pairs.shape[:2] != shape:
            raise DimensionMismatch(f"{name}: matrix is {pairs.shape[:2]}, expected {shape}")
        return AdjOp(pairs[..., 0] + 1j * pairs[..., 1], alg_dim)


class FamilySpec(BaseModel):
    members: List[OperatorSpec]


class Scenario(BaseModel):
    """
    A self-contained problem instance for one construction kind.

    Attributes:
        format_version: Document format version
        kind: Canonical kind id; aliases are resolved on load
        seed: Master seed that produced the instance (0 for hand-written files)
        trial: Trial index within the seed
        alg_dim: d of the coefficient algebra M_d
        source_len: n of the source module A^n
        weights: Positive atom weights
        operators: Named operators (K, K1, K2, T, theta, theta1, theta2)
        family: Primary family, one member per atom
        second_family: Optional second family of the same shape
        scalars: Scalar parameters (alpha1, alpha2)
    """

    format_version: int = config.SCENARIO_FORMAT_VERSION
    kind: str
    seed: int = Field(default=0, ge=0)
    trial: int = Field(default=0, ge=0)
    alg_dim: int = Field(ge=1)
    source_len: int = Field(ge=1)
    weights: List[float]
    operators: Dict[str, OperatorSpec] = Field(default_factory=dict)
    family: FamilySpec
    second_family: Optional[FamilySpec] = None
    scalars: Dict[str, float] = Field(default_factory=dict)

    @field_validator("format_version")
    @classmethod
    def _known_version(cls, value: int) -> int:
        if value != config.SCENARIO_FORMAT_VERSION:
            raise ValueError(f"unsupported format version {value}")
        return value

    @field_validator("kind", mode="before")
    @classmethod
    def _known_kind(cls, value: Any) -> str:
        # numeric ids such as 2.1 written without quotes
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            value = str(value)
        if not isinstance(value, str):
            raise ValueError("kind must be a string")
        try:
            return canonical_kind(value)
        except UnsupportedKind as e:
            raise ValueError(str(e)) from e

    @field_validator("weights")
    @classmethod
    def _positive_weights(cls, value: List[float]) -> List[float]:
        if not value:
            raise ValueError("at least one atom weight is required")
        if any(not np.isfinite(w) or w <= 0 for w in value):
            raise ValueError("atom weights must be positive and finite")
        return value

    @field_validator("operators")
    @classmethod
    def _known_operators(cls, value: Dict[str, OperatorSpec]) -> Dict[str, OperatorSpec]:
        unknown = sorted(set(value) - set(OPERATOR_NAMES))
        if unknown:
            raise ValueError(f"unknown operator names: {', '.join(unknown)}")
        return value

    @classmethod
    def from_objects(cls, kind: str, family: GFrameFamily, operators: Dict[str, AdjOp],
                     second_family: Optional[GFrameFamily] = None, scalars: Dict[str, float] = None,
                     seed: int = 0, trial: int = 0) -> "Scenario":
        return cls(
            kind=kind,
            seed=seed,
            trial=trial,
            alg_dim=family.alg_dim,
            source_len=family.source_len,
            weights=list(family.weights),
            operators={name: OperatorSpec.from_op(op) for name, op in operators.items()},
            family=FamilySpec(members=[OperatorSpec.from_op(m) for m in family.members]),
            second_family=(FamilySpec(members=[OperatorSpec.from_op(m) for m in second_family.members])
                           if second_family is not None else None),
            scalars=dict(scalars or {}),
        )

    def _family(self, spec: FamilySpec, label: str) -> GFrameFamily:
        if len(spec.members) != len(self.weights):
            raise DimensionMismatch(f"{label}: {len(spec.members)} members for {len(self.weights)} weights")
        members = []
        for xi, member in enumerate(spec.members):
            if member.src_len != self.source_len:
                raise DimensionMismatch(f"{label}[{xi}]: source length {member.src_len} != {self.source_len}")
            members.append(member.to_op(self.alg_dim, f"{label}[{xi}]"))
        return GFrameFamily(MeasureSpace(tuple(self.weights)), self.alg_dim, self.source_len, tuple(members))

    def primary_family(self) -> GFrameFamily:
        return self._family(self.family, "family")

    def secondary_family(self) -> Optional[GFrameFamily]:
        if self.second_family is None:
            return None
        return self._family(self.second_family, "second_family")

    def operator(self, name: str) -> Optional[AdjOp]:
        spec = self.operators.get(name)
        return spec.to_op(self.alg_dim, name) if spec is not None else None

    def validate_dimensions(self) -> "Scenario":
        """Build every object once so that inconsistent sizes surface as DimensionMismatch."""
        self.primary_family()
        second = self.secondary_family()
        if second is not None and second.fibers != self.primary_family().fibers:
            raise DimensionMismatch("second_family fibers differ from family fibers")
        for name in self.operators:
            self.operator(name)
        return self


def _parse_error(error: ValidationError) -> ParseError:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first.get("loc", ()))
    return ParseError(first.get("msg", str(error)), field=location or None)


def parse_scenario(text: str) -> Scenario:
    """Parse and validate a scenario document."""
    try:
        scenario = Scenario.model_validate_json(text)
    except ValidationError as e:
        raise _parse_error(e) from e
    return scenario.validate_dimensions()


def load_scenario(path: Union[str, Path]) -> Scenario:
    """
    Load a scenario file.

    Raises:
        ParseError: On malformed JSON or invalid fields
        DimensionMismatch: On inconsistent operator sizes
    """
    path = Path(path)
    logger.info(f"[SCENARIO] loading {path}")
    return parse_scenario(path.read_text(encoding="utf-8"))


def save_scenario(scenario: Scenario, path: Union[str, Path]) -> None:
    Path(path).write_text(scenario.model_dump_json(indent=2) + "\n", encoding="utf-8")
