"""
Instance Generator
Seeded random instances built so that each construction's hypotheses hold.
"""

import logging
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from config import config
from frames.bounds import mixed_frame_operator
from frames.family import GFrameFamily, MeasureSpace, canonical_dual, frame_operator
from harness.scenario import Scenario, canonical_kind
from hilbert.operators import AdjOp, pinv
from algebra.elements import is_positive

# Configure logging
logger = logging.getLogger(__name__)


class Dims(BaseModel):
    """Concrete sizes of one instance."""

    alg_dim: int = Field(ge=1)
    length: int = Field(ge=1)
    atoms: int = Field(ge=1)
    fiber: int = Field(ge=1)

    def label(self) -> str:
        return f"{self.alg_dim},{self.length},{self.atoms},{self.fiber}"


class TrialConfig(BaseModel):
    """Configuration of a fuzz campaign."""

    master_seed: int = Field(default=0, ge=0, lt=2 ** 64)
    trials: int = Field(default=1, ge=1)
    dim_range: Tuple[int, int] = config.DIM_RANGE
    length_range: Tuple[int, int] = config.LENGTH_RANGE
    atom_range: Tuple[int, int] = config.ATOM_RANGE
    fiber_range: Tuple[int, int] = config.FIBER_RANGE
    tol: Optional[float] = Field(default=None, gt=0)

    @model_validator(mode="after")
    def _nonempty_ranges(self) -> "TrialConfig":
        for name in ("dim_range", "length_range", "atom_range", "fiber_range"):
            low, high = getattr(self, name)
            if low < 1 or high < low:
                raise ValueError(f"{name} must be a nonempty range of positive integers")
        return self

    @classmethod
    def fixed(cls, dims: Dims, **kwargs: Any) -> "TrialConfig":
        return cls(
            dim_range=(dims.alg_dim, dims.alg_dim),
            length_range=(dims.length, dims.length),
            atom_range=(dims.atoms, dims.atoms),
            fiber_range=(dims.fiber, dims.fiber),
            **kwargs,
        )


def trial_rng(master_seed: int, trial_index: int, stream: int = 0) -> np.random.Generator:
    """
    Counter-based generator for one trial.

    Philox is keyed by master_seed | (trial_index << 64); independent streams
    of the same trial start at disjoint counter blocks.
    """
    key = (int(master_seed) & (2 ** 64 - 1)) | (int(trial_index) << 64)
    return np.random.Generator(np.random.Philox(key=key, counter=int(stream) << 192))


def sample_dims(master_seed: int, trial_index: int, trial_config: TrialConfig) -> Dims:
    rng = trial_rng(master_seed, trial_index, stream=1)

    def draw(bounds: Tuple[int, int]) -> int:
        return int(rng.integers(bounds[0], bounds[1] + 1))

    return Dims(
        alg_dim=draw(trial_config.dim_range),
        length=draw(trial_config.length_range),
        atoms=draw(trial_config.atom_range),
        fiber=draw(trial_config.fiber_range),
    )


class RandomOperatorGenerator:
    """Reproducible random operators and families over M_d for one trial."""

    def __init__(self, rng: np.random.Generator, dims: Dims):
        self.rng = rng
        self.d = dims.alg_dim
        self.n = dims.length
        self.atoms = dims.atoms
        self.fiber = dims.fiber

    def ginibre(self, rows: int, cols: int) -> np.ndarray:
        """iid standard complex normal entries (N + iN)/sqrt(2)."""
        real = self.rng.standard_normal((rows, cols))
        imag = self.rng.standard_normal((rows, cols))
        return (real + 1j * imag) / np.sqrt(2.0)

    def operator(self, src: int, dst: int) -> AdjOp:
        return AdjOp(self.ginibre(src * self.d, dst * self.d), self.d)

    def well_conditioned(self, length: int = None) -> AdjOp:
        """U diag(s) V^H with singular values in [0.5, 2]."""
        size = (length or self.n) * self.d
        left, _ = np.linalg.qr(self.ginibre(size, size))
        right, _ = np.linalg.qr(self.ginibre(size, size))
        scales = self.rng.uniform(0.5, 2.0, size)
        return AdjOp((left * scales) @ right.conj().T, self.d)

    def low_rank(self, rank: int, length: int = None) -> AdjOp:
        size = (length or self.n) * self.d
        return AdjOp(self.ginibre(size, rank) @ self.ginibre(rank, size), self.d)

    def identity(self) -> AdjOp:
        return AdjOp.identity(self.d, self.n)

    def polynomial(self, K: AdjOp) -> AdjOp:
        """c0 I + c1 K + c2 K^2 with |c0| >= 1 dominating, hence invertible and commuting with K."""
        scale = max(K.norm(), 1e-12)
        c0 = (1.0 + self.rng.uniform(0.0, 1.0)) * np.exp(2j * np.pi * self.rng.uniform())
        c1 = 0.5 * self.rng.uniform() * np.exp(2j * np.pi * self.rng.uniform()) / scale
        c2 = 0.25 * self.rng.uniform() * np.exp(2j * np.pi * self.rng.uniform()) / scale ** 2
        ident = AdjOp.identity(K.alg_dim, K.src_len)
        return ident * c0 + K * c1 + (K @ K) * c2

    def weights(self) -> Tuple[float, ...]:
        return tuple(float(w) for w in self.rng.uniform(0.5, 2.0, self.atoms))

    def fibers(self, minimum: int = 1) -> List[int]:
        """Per-atom destination lengths whose total is at least the source length."""
        top = max(self.fiber, minimum)
        sizes = [int(m) for m in self.rng.integers(minimum, top + 1, self.atoms)]
        shortfall = self.n - sum(sizes)
        if shortfall > 0:
            sizes[-1] += shortfall
        return sizes

    def family(self, fibers: List[int] = None, weights: Tuple[float, ...] = None) -> GFrameFamily:
        fibers = fibers or self.fibers()
        weights = weights or self.weights()
        members = tuple(self.operator(self.n, m) for m in fibers)
        return GFrameFamily(MeasureSpace(weights), self.d, self.n, members)

    def parseval(self, fibers: List[int] = None, weights: Tuple[float, ...] = None) -> GFrameFamily:
        """Family with frame operator exactly I: orthonormal rows of the weighted analysis matrix."""
        fibers = fibers or self.fibers()
        weights = weights or self.weights()
        total = sum(fibers) * self.d
        q_mat, _ = np.linalg.qr(self.ginibre(total, self.n * self.d))
        analysis_rows = q_mat.conj().T
        members, offset = [], 0
        for weight, m in zip(weights, fibers):
            block = analysis_rows[:, offset:offset + m * self.d] / np.sqrt(weight)
            members.append(AdjOp(block, self.d))
            offset += m * self.d
        return GFrameFamily(MeasureSpace(weights), self.d, self.n, tuple(members))

    def tight(self, K: AdjOp, delta: float) -> GFrameFamily:
        """delta-tight family for K: Y_xi = sqrt(delta) W_xi o K* with W Parseval."""
        return self.parseval().transformed(K.H).scaled(np.sqrt(delta))

    def perturbed(self, F: GFrameFamily, sign: float, eta: float) -> GFrameFamily:
        noise = [AdjOp(self.ginibre(*m.matrix.shape), self.d) for m in F.members]
        return F.with_members([m * sign + e * eta for m, e in zip(F.members, noise)])


def _cross_positive(F: GFrameFamily, G: GFrameFamily, theta1: AdjOp, theta2: AdjOp, with_second: bool) -> bool:
    mixed = mixed_frame_operator(F, G)
    op = theta1 @ mixed @ theta2.H + theta2 @ mixed.H @ theta1.H
    if with_second:
        op = op + theta2 @ frame_operator(G) @ theta2.H
    return is_positive(op.matrix)


def _perturbed_pair(gen: RandomOperatorGenerator, F: GFrameFamily, theta1: AdjOp, sign: float,
                    with_second: bool) -> Optional[Tuple[GFrameFamily, AdjOp]]:
    """Second family and operator near (sign F, sign c theta1), shrunk until the cross term is positive."""
    c = gen.rng.uniform(0.2, 1.0)
    direction_family = gen.perturbed(F, 0.0, 1.0)
    direction_op = AdjOp(gen.ginibre(*theta1.matrix.shape), gen.d)
    eta = 0.5
    for attempt in range(config.MAX_REJECTIONS):
        G = F.scaled(sign).plus(direction_family.scaled(eta))
        theta2 = theta1 * (sign * c) + direction_op * eta
        if _cross_positive(F, G, theta1, theta2, with_second):
            if attempt:
                logger.debug(f"[GENERATOR] cross term positive after {attempt} rejections")
            return G, theta2
        eta *= 0.5
    return None


def _synthesis(gen: RandomOperatorGenerator, trial: int) -> Dict[str, Any]:
    return {"family": gen.family(), "operators": {}}


def _frame_check(gen: RandomOperatorGenerator, trial: int) -> Dict[str, Any]:
    return {"family": gen.family(), "operators": {"K": gen.operator(gen.n, gen.n)}}


def _precompose(gen: RandomOperatorGenerator, trial: int) -> Dict[str, Any]:
    K = gen.operator(gen.n, gen.n)
    return {"family": gen.family(), "operators": {"K": K, "theta": gen.polynomial(K)}}


def _recover(gen: RandomOperatorGenerator, trial: int) -> Dict[str, Any]:
    K = gen.well_conditioned()
    theta = gen.polynomial(K) if trial % 2 == 0 else AdjOp.zeros(gen.d, gen.n, gen.n)
    return {"family": gen.family(), "operators": {"K": K, "theta": theta}}


def _tight_surjectivity(gen: RandomOperatorGenerator, trial: int) -> Dict[str, Any]:
    K = gen.well_conditioned()
    F = gen.tight(K, gen.rng.uniform(0.5, 2.0))
    theta = gen.polynomial(K)
    if trial % 2 == 1:
        eigenvalues = np.linalg.eigvals(K.matrix)
        shift = eigenvalues[int(gen.rng.integers(len(eigenvalues)))]
        theta = (K - AdjOp.identity(gen.d, gen.n) * shift) @ theta
    return {"family": F, "operators": {"K": K, "theta": theta}}


def _transfer(gen: RandomOperatorGenerator, trial: int) -> Dict[str, Any]:
    size = gen.n * gen.d
    F = gen.family()
    if trial % 2 == 0 or size == 1:
        K = gen.operator(gen.n, gen.n)
        T = gen.well_conditioned()
        theta = gen.polynomial(K) @ T
    else:
        T = gen.low_rank(size - 1)
        projector = T @ pinv(T)
        complement = gen.identity() - projector
        X = (projector @ gen.operator(gen.n, gen.n) @ projector
             + complement @ gen.operator(gen.n, gen.n) @ complement)
        K = projector
        theta = X @ T
    return {"family": F, "operators": {"K": K, "T": T, "theta": theta}}


def _range_equality(gen: RandomOperatorGenerator, trial: int) -> Dict[str, Any]:
    size = gen.n * gen.d
    case = trial % 3
    if case == 1:
        K = gen.low_rank(size - 1) if size > 1 else AdjOp.zeros(gen.d, gen.n, gen.n)
        return {"family": gen.family(), "operators": {"K": K}}
    K = gen.operator(gen.n, gen.n) if case == 0 or size == 1 else gen.low_rank(size - 1)
    return {"family": gen.family().transformed(K.H), "operators": {"K": K}}


def _k_sum(gen: RandomOperatorGenerator, trial: int) -> Dict[str, Any]:
    if gen.n * gen.d == 1:
        gen.n = 2
    size = gen.n * gen.d
    K1 = gen.low_rank(size - 1)
    F = gen.tight(K1, gen.rng.uniform(0.5, 2.0))
    K2 = K1 @ gen.operator(gen.n, gen.n) if trial % 2 == 0 else gen.operator(gen.n, gen.n)
    return {"family": F, "operators": {"K1": K1, "K2": K2}}


def _dual_sum(gen: RandomOperatorGenerator, trial: int) -> Dict[str, Any]:
    F = gen.family()
    W = gen.operator(gen.n, gen.n)
    K1 = W @ W.H
    return {"family": F, "second_family": canonical_dual(F, K1), "operators": {"K1": K1}}


def _coordinate_projection(d: int, m: int, first: bool) -> AdjOp:
    keep = (m + 1) // 2
    mask = np.zeros(m * d)
    if first:
        mask[:keep * d] = 1.0
    else:
        mask[keep * d:] = 1.0
    return AdjOp(np.diag(mask), d)


def _orthogonal_sum(gen: RandomOperatorGenerator, trial: int) -> Dict[str, Any]:
    fibers = gen.fibers(minimum=2)
    weights = gen.weights()
    W, V = gen.family(fibers, weights), gen.family(fibers, weights)
    F = W.with_members([_coordinate_projection(gen.d, m.dst_len, True) @ m for m in W.members])
    G = V.with_members([_coordinate_projection(gen.d, m.dst_len, False) @ m for m in V.members])
    K1 = frame_operator(F) @ gen.operator(gen.n, gen.n)
    K2 = frame_operator(G) @ gen.operator(gen.n, gen.n)
    return {"family": F, "second_family": G, "operators": {"K1": K1, "K2": K2}}


def _weighted_sum(gen: RandomOperatorGenerator, trial: int) -> Optional[Dict[str, Any]]:
    F = gen.family()
    K1 = gen.operator(gen.n, gen.n)
    theta1 = gen.well_conditioned()
    K2 = theta1 @ K1 @ pinv(theta1)
    pair = _perturbed_pair(gen, F, theta1, 1.0, with_second=True)
    if pair is None:
        return None
    G, theta2 = pair
    return {"family": F, "second_family": G,
            "operators": {"K1": K1, "K2": K2, "theta1": theta1, "theta2": theta2}}


def _scalar_sum(gen: RandomOperatorGenerator, trial: int) -> Optional[Dict[str, Any]]:
    F = gen.family()
    K1 = gen.well_conditioned()
    K2 = gen.operator(gen.n, gen.n)
    theta1 = gen.well_conditioned()
    sign = 1.0 if trial % 2 == 0 else -1.0
    pair = _perturbed_pair(gen, F, theta1, sign, with_second=False)
    if pair is None:
        return None
    G, theta2 = pair
    alpha1, alpha2 = gen.rng.uniform(0.5, 2.0, 2)
    return {"family": F, "second_family": G,
            "operators": {"K1": K1, "K2": K2, "theta1": theta1, "theta2": theta2},
            "scalars": {"alpha1": float(alpha1), "alpha2": float(alpha2)}}


BUILDERS: Dict[str, Callable[[RandomOperatorGenerator, int], Optional[Dict[str, Any]]]] = {
    "1.9": _synthesis,
    "2.1": _precompose,
    "2.2": _recover,
    "2.3": _tight_surjectivity,
    "2.4": _transfer,
    "2.5": _range_equality,
    "2.6": _k_sum,
    "3.1i": _dual_sum,
    "3.1ii": _orthogonal_sum,
    "3.2": _weighted_sum,
    "3.3": _scalar_sum,
    "frame-check": _frame_check,
}


def generate_instance(seed: int, dims: Dims, kind: str, trial: int = 0) -> Optional[Scenario]:
    """
    Deterministic random instance for a construction kind.

    Args:
        seed: 64-bit master seed
        dims: Concrete instance sizes
        kind: Kind id or alias
        trial: Trial index selecting the stream (and the variant for alternating kinds)

    Returns:
        Scenario, or None when rejection sampling was exhausted

    Raises:
        UnsupportedKind: If kind is not implemented
    """
    kind = canonical_kind(kind)
    gen = RandomOperatorGenerator(trial_rng(seed, trial), dims)
    parts = BUILDERS[kind](gen, trial)
    if parts is None:
        logger.warning(f"[GENERATOR] {kind} trial {trial}: rejection sampling exhausted")
        return None
    return Scenario.from_objects(
        kind,
        parts["family"],
        parts["operators"],
        second_family=parts.get("second_family"),
        scalars=parts.get("scalars"),
        seed=seed,
        trial=trial,
    )


class InstanceGenerator:
    """
    Pipeline stage that draws the instance of a fuzz trial.
    """

    def __init__(self):
        """Initialize the Instance Generator."""
        logger.info("InstanceGenerator initialized")

    def execute(self, state: Dict[str, Any]) -> Dict[str, Any]:
        """
        Generate the scenario for the trial in state.

        Args:
            state: Current state containing 'kind', 'master_seed', 'trial_index' and 'trial_config'

        Returns:
            Updated state with dims, scenario and skipped
        """
        kind, seed, index = state["kind"], state["master_seed"], state["trial_index"]
        dims = sample_dims(seed, index, state["trial_config"])
        logger.info(f"[GENERATOR] {kind} trial {index} dims {dims.label()}")
        scenario = generate_instance(seed, dims, kind, index)
        state.update({"dims": dims, "scenario": scenario, "skipped": scenario is None})
        return state
