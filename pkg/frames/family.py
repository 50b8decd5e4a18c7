"""
Frame Families
g-frame families over a finite weighted measure space and their synthesis, analysis and frame operators.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import List, Sequence, Tuple

import numpy as np

from config import config
from errors import DimensionMismatch, ShapeMismatch
from hilbert.module import ModuleVec
from hilbert.operators import AdjOp, apply, pinv

# Configure logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MeasureSpace:
    """Finite measure space: atoms 0..N-1 with positive weights."""

    weights: Tuple[float, ...]

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        if not weights:
            raise ValueError("a measure space needs at least one atom")
        if any(not np.isfinite(w) or w <= 0 for w in weights):
            raise ValueError(f"atom weights must be positive and finite, got {weights}")
        object.__setattr__(self, "weights", weights)

    @property
    def atom_count(self) -> int:
        return len(self.weights)

    def scaled(self, c: float) -> "MeasureSpace":
        return MeasureSpace(tuple(c * w for w in self.weights))


@dataclass(frozen=True, eq=False)
class GFrameFamily:
    """
    A family {Y_xi: A^n -> A^(m_xi)} indexed by the atoms of a measure space.

    Attributes:
        space: Atoms and weights
        alg_dim: d of the coefficient algebra M_d
        source_len: n of the source module A^n
        members: One adjointable operator per atom
    """

    space: MeasureSpace
    alg_dim: int
    source_len: int
    members: Tuple[AdjOp, ...]

    def __post_init__(self):
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        if len(members) != self.space.atom_count:
            raise DimensionMismatch(f"{len(members)} members for {self.space.atom_count} atoms")
        for xi, member in enumerate(members):
            if member.alg_dim != self.alg_dim or member.src_len != self.source_len:
                raise DimensionMismatch(
                    f"member {xi} is {member!r}, expected source A^{self.source_len} over M_{self.alg_dim}"
                )

    @property
    def weights(self) -> Tuple[float, ...]:
        return self.space.weights

    @property
    def fibers(self) -> Tuple[int, ...]:
        """Destination lengths m_xi."""
        return tuple(member.dst_len for member in self.members)

    def with_members(self, members: Sequence[AdjOp]) -> "GFrameFamily":
        source_len = members[0].src_len if members else self.source_len
        return GFrameFamily(self.space, self.alg_dim, source_len, tuple(members))

    def transformed(self, op: AdjOp) -> "GFrameFamily":
        """Precompose every member with op: {Y_xi o op}."""
        return self.with_members([member @ op for member in self.members])

    def scaled(self, c: complex) -> "GFrameFamily":
        return self.with_members([member * c for member in self.members])

    def plus(self, other: "GFrameFamily") -> "GFrameFamily":
        """Memberwise sum {Y_xi + P_xi}."""
        check_same_shape(self, other)
        return self.with_members([a + b for a, b in zip(self.members, other.members)])

    @cached_property
    def stacked(self) -> AdjOp:
        """Members side by side, each weighted by sqrt(nu_xi); built once per family."""
        blocks = [np.sqrt(w) * member.matrix for w, member in zip(self.weights, self.members)]
        return AdjOp(np.hstack(blocks), self.alg_dim)

    @cached_property
    def gram(self) -> AdjOp:
        """Frame operator sum_xi nu_xi Y_xi* Y_xi, built once per family."""
        matrix = sum(w * (member.matrix @ member.matrix.conj().T) for w, member in zip(self.weights, self.members))
        return AdjOp(0.5 * (matrix + matrix.conj().T), self.alg_dim)

    def __repr__(self) -> str:
        return f"GFrameFamily(d={self.alg_dim}, n={self.source_len}, fibers={self.fibers})"


def check_same_shape(F: GFrameFamily, G: GFrameFamily) -> None:
    """Raise ShapeMismatch unless F and G share space, source and per-atom fibers."""
    if F.alg_dim != G.alg_dim or F.source_len != G.source_len:
        raise ShapeMismatch(f"{F!r} and {G!r} act on different source modules")
    if F.weights != G.weights:
        raise ShapeMismatch("families live on different measure spaces")
    if F.fibers != G.fibers:
        raise ShapeMismatch(f"per-atom destinations differ: {F.fibers} vs {G.fibers}")


def sum_families(F: GFrameFamily, G: GFrameFamily) -> GFrameFamily:
    """Memberwise sum {Y_xi + P_xi}; raises ShapeMismatch unless F and G share their shape."""
    return F.plus(G)


def analysis(F: GFrameFamily, f: ModuleVec) -> List[ModuleVec]:
    """Coefficients (Y_xi f)_xi in the weighted direct sum."""
    return [apply(member, f) for member in F.members]


def synthesis(F: GFrameFamily, G: Sequence[ModuleVec]) -> ModuleVec:
    """
    Weighted synthesis sum_xi nu_xi Y_xi* G_xi.

    Args:
        F: Frame family
        G: One coefficient vector per atom, G[xi] in A^(m_xi)

    Returns:
        Vector of the source module
    """
    if len(G) != F.space.atom_count:
        raise DimensionMismatch(f"{len(G)} coefficient blocks for {F.space.atom_count} atoms")
    total = ModuleVec.zeros(F.alg_dim, F.source_len)
    for weight, member, coefficient in zip(F.weights, F.members, G):
        total = total + apply(member.H, coefficient) * weight
    return total


def direct_sum_inner(F: GFrameFamily, G1: Sequence[ModuleVec], G2: Sequence[ModuleVec]) -> np.ndarray:
    """Inner product sum_xi nu_xi <G1_xi, G2_xi> of the weighted direct sum."""
    total = np.zeros((F.alg_dim, F.alg_dim), dtype=np.complex128)
    for weight, a, b in zip(F.weights, G1, G2):
        total += weight * (a.row @ b.row.conj().T)
    return total


def analysis_operator(F: GFrameFamily) -> AdjOp:
    """
    Analysis operator A^n -> A^(sum m_xi).

    The weighted direct sum is identified isometrically with A^(sum m_xi)
    through G -> (sqrt(nu_xi) G_xi), so the blocks are sqrt(nu_xi) Y_xi.
    """
    return F.stacked


def synthesis_operator(F: GFrameFamily) -> AdjOp:
    return analysis_operator(F).H


def frame_operator(F: GFrameFamily) -> AdjOp:
    """S = sum_xi nu_xi Y_xi* Y_xi, positive on the source module."""
    return F.gram


def canonical_dual(F: GFrameFamily, K: AdjOp, tol: float = None) -> GFrameFamily:
    """Dual family P_xi = Y_xi o S^dagger o K; a K-dual of F whenever R(K) lies in R(S)."""
    tol = config.tol(tol)
    transfer = pinv(frame_operator(F), tol) @ K
    logger.debug(f"[FRAMES] canonical dual built for {F!r}")
    return F.transformed(transfer)
