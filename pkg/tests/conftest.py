"""
Shared fixtures: seeded generators and small hand-built families.
"""

import numpy as np
import pytest

from config import config
from frames.family import GFrameFamily, MeasureSpace
from harness.generator import Dims, RandomOperatorGenerator
from hilbert.operators import AdjOp


def ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2.0)


def hermitian(rng: np.random.Generator, size: int) -> np.ndarray:
    g = ginibre(rng, size, size)
    return 0.5 * (g + g.conj().T)


def scalar_family(weights, members) -> GFrameFamily:
    """d = 1 family from plain nested lists, one matrix per atom."""
    ops = tuple(AdjOp(np.asarray(m, dtype=complex), 1) for m in members)
    return GFrameFamily(MeasureSpace(tuple(weights)), 1, ops[0].src_len, ops)


def identity_family(d: int = 1, n: int = 1, weight: float = 1.0) -> GFrameFamily:
    return GFrameFamily(MeasureSpace((weight,)), d, n, (AdjOp.identity(d, n),))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def gen(rng) -> RandomOperatorGenerator:
    """Random operators over M_2 on A^2 with three atoms."""
    return RandomOperatorGenerator(rng, Dims(alg_dim=2, length=2, atoms=3, fiber=2))


@pytest.fixture
def lapack_kernel(monkeypatch):
    monkeypatch.setattr(config, "EIGEN_KERNEL", "lapack")
    yield
