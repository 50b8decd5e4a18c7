"""
Tests for algebra-core: elements of M_d, the Jacobi kernels and the order.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from algebra import (
    AlgElem,
    abs_elem,
    hermitian_eig,
    involution,
    is_positive,
    loewner_leq,
    op_norm,
    sqrt_pos,
    svd,
)
from algebra.jacobi import jacobi_eigh, jacobi_svd, lapack_eigh, lapack_svd
from errors import DimensionMismatch, KernelFailure, NotHermitian, NotPositive
from tests.conftest import ginibre, hermitian

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)
dims = st.integers(min_value=1, max_value=4)


class TestInvolution:
    @pytest.mark.parametrize("a, expected", [
        ([[0, 1], [0, 0]], [[0, 0], [1, 0]]),
        (np.eye(2), np.eye(2)),
        ([[1j]], [[-1j]]),
    ])
    def test_examples(self, a, expected):
        assert involution(AlgElem(a)) == AlgElem(expected)

    def test_returns_ndarray_for_ndarray(self):
        out = involution(np.array([[1j, 2]]))
        assert isinstance(out, np.ndarray)
        assert_allclose(out, [[-1j], [2]])


@settings(max_examples=60, deadline=None)
@given(seed=seeds, d=dims)
def test_cstar_axioms(seed, d):
    rng = np.random.default_rng(seed)
    a, b = AlgElem(ginibre(rng, d, d)), AlgElem(ginibre(rng, d, d))
    # anti-automorphism and involutivity
    assert (a @ b).H.allclose(b.H @ a.H, atol=1e-12 * max(1.0, op_norm(a) * op_norm(b)))
    assert a.H.H == a
    # C*-identity
    assert abs(op_norm(a.H @ a) - op_norm(a) ** 2) <= 1e-9 * max(1.0, op_norm(a) ** 2)
    # a* a is positive
    assert is_positive(a.H @ a)


class TestOpNorm:
    def test_hermitian(self):
        assert op_norm(AlgElem(np.diag([3.0, -1.0]))) == pytest.approx(3.0, abs=1e-14)

    def test_shift(self):
        assert op_norm(AlgElem([[0, 2], [0, 0]])) == pytest.approx(2.0, abs=1e-14)

    def test_matches_power_iteration(self, rng):
        a = ginibre(rng, 4, 4)
        gram = a.conj().T @ a
        v = np.ones(4, dtype=complex)
        for _ in range(2000):
            v = gram @ v
            v /= np.linalg.norm(v)
        assert op_norm(a) == pytest.approx(np.sqrt(np.vdot(v, gram @ v).real), rel=1e-8)


class TestHermitianEig:
    def test_diagonal(self):
        spectrum = hermitian_eig(AlgElem(np.diag([2.0, 5.0])))
        assert_allclose(spectrum.eigenvalues, [2.0, 5.0], atol=1e-14)
        assert_allclose(spectrum.basis, np.eye(2), atol=1e-14)

    def test_pauli_x(self):
        assert_allclose(hermitian_eig(np.array([[0, 1], [1, 0]])).eigenvalues, [-1.0, 1.0], atol=1e-14)

    def test_reconstruction(self, rng):
        a = hermitian(rng, 5)
        spectrum = hermitian_eig(a)
        u = spectrum.basis
        assert_allclose(u @ np.diag(spectrum.eigenvalues) @ u.conj().T, a, atol=1e-12)
        assert_allclose(u.conj().T @ u, np.eye(5), atol=1e-12)
        assert np.all(np.diff(spectrum.eigenvalues) >= 0)

    def test_agrees_with_lapack(self, rng):
        a = hermitian(rng, 6)
        ours, _ = jacobi_eigh(a)
        ref, _ = lapack_eigh(a)
        assert_allclose(ours, ref, atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_eig(AlgElem([[1, 1], [0, 1]]))

    def test_phase_convention(self, rng):
        _, basis = jacobi_eigh(hermitian(rng, 4))
        for column in basis.T:
            lead = column[np.flatnonzero(np.abs(column) > 1e-10)[0]]
            assert abs(lead.imag) < 1e-12 and lead.real > 0

    def test_warm_start_agrees_with_cold_start(self, rng):
        a = hermitian(rng, 6)
        nearby = a + 1e-3 * hermitian(rng, 6)
        start = hermitian_eig(a).basis
        warm, basis = jacobi_eigh(nearby, start=start)
        cold, _ = jacobi_eigh(nearby)
        assert_allclose(warm, cold, atol=1e-12)
        assert_allclose(basis @ np.diag(warm) @ basis.conj().T, nearby, atol=1e-12)
        assert_allclose(hermitian_eig(nearby, start=start).eigenvalues, cold, atol=1e-12)

    def test_non_finite_input_raises(self):
        with pytest.raises(KernelFailure):
            jacobi_eigh(np.array([[1.0, np.nan], [np.nan, 2.0]]))


class TestSvd:
    def test_diagonal(self):
        _, sigma, _ = svd(np.diag([2.0, 0.0]))
        assert_allclose(sigma, [2.0, 0.0], atol=1e-14)

    def test_zero(self):
        u, sigma, v = svd(np.zeros((3, 2)))
        assert_allclose(sigma, 0.0)
        assert_allclose(u.conj().T @ u, np.eye(3), atol=1e-12)

    @pytest.mark.parametrize("shape", [(3, 5), (5, 3), (4, 4), (1, 3)])
    def test_reconstruction(self, rng, shape):
        m = ginibre(rng, *shape)
        u, sigma, v = jacobi_svd(m)
        r = len(sigma)
        assert u.shape == (shape[0], shape[0]) and v.shape == (shape[1], shape[1])
        assert_allclose(u[:, :r] @ np.diag(sigma) @ v[:, :r].conj().T, m, atol=1e-12)
        assert_allclose(u.conj().T @ u, np.eye(shape[0]), atol=1e-12)
        assert_allclose(v.conj().T @ v, np.eye(shape[1]), atol=1e-12)
        assert np.all(np.diff(sigma) <= 0)

    def test_squares_are_eigenvalues_of_gram(self, rng):
        m = ginibre(rng, 3, 5)
        _, sigma, _ = svd(m)
        eigenvalues = hermitian_eig(m @ m.conj().T).eigenvalues
        assert_allclose(np.sort(sigma ** 2), eigenvalues, atol=1e-11)

    def test_rank_deficient(self, rng):
        m = ginibre(rng, 4, 2) @ ginibre(rng, 2, 4)
        u, sigma, v = jacobi_svd(m)
        assert sigma[2] < 1e-12 * sigma[0]
        assert_allclose(u[:, :4] @ np.diag(sigma) @ v.conj().T, m, atol=1e-12)

    def test_wide_rank_deficient_matches_lapack(self, rng):
        m = ginibre(rng, 4, 2) @ ginibre(rng, 2, 6)
        u, sigma, v = jacobi_svd(m)
        assert np.all(np.isfinite(u)) and np.all(np.isfinite(sigma)) and np.all(np.isfinite(v))
        assert_allclose(sigma, lapack_svd(m)[1], atol=1e-12 * sigma[0])
        assert_allclose(u @ np.diag(sigma) @ v[:, :4].conj().T, m, atol=1e-12 * sigma[0])
        assert_allclose(v.conj().T @ v, np.eye(6), atol=1e-12)

    def test_tiny_and_zero_columns(self, rng):
        m = ginibre(rng, 5, 2) @ ginibre(rng, 2, 4)
        m[:, 1] *= 1e-160
        m[:, 3] = 0.0
        u, sigma, v = jacobi_svd(m)
        assert np.all(np.isfinite(sigma))
        assert_allclose(sigma, lapack_svd(m)[1], atol=1e-12 * sigma[0])
        assert_allclose(u[:, :4] @ np.diag(sigma) @ v.conj().T, m, atol=1e-12 * sigma[0])
        assert_allclose(u.conj().T @ u, np.eye(5), atol=1e-12)

    def test_uniformly_tiny_matrix(self, rng):
        m = 1e-170 * ginibre(rng, 3, 3)
        _, sigma, _ = jacobi_svd(m)
        assert_allclose(sigma / 1e-170, lapack_svd(m / 1e-170)[1], rtol=1e-10)

    @pytest.mark.parametrize("bad", [np.nan, np.inf])
    def test_non_finite_input_raises(self, bad):
        m = np.eye(3, dtype=complex)
        m[0, 2] = bad
        with pytest.raises(KernelFailure):
            jacobi_svd(m)


class TestOrder:
    @pytest.mark.parametrize("a, expected", [
        (np.diag([1.0, 2.0]), True),
        (np.array([[1.0, 1.0], [0.0, 1.0]]), False),
        (np.diag([1.0, -1e-3]), False),
    ])
    def test_is_positive(self, a, expected):
        assert is_positive(AlgElem(a), tol=1e-9) is expected

    def test_is_positive_scales_by_operator_norm(self):
        # ||a|| = 1 while ||a||_F = sqrt(3)
        assert not is_positive(np.diag([1.0, 1.0, 1.0, -1.5e-9]), tol=1e-9)
        assert is_positive(np.diag([1.0, 1.0, 1.0, -0.5e-9]), tol=1e-9)
        assert is_positive(np.diag([4.0, 4.0, -3e-9]), tol=1e-9)

    def test_loewner_examples(self):
        assert loewner_leq(AlgElem(np.eye(2)), AlgElem(2 * np.eye(2)))
        a, b = AlgElem(np.diag([2.0, 0.0])), AlgElem(np.eye(2))
        assert not loewner_leq(a, b) and not loewner_leq(b, a)
        assert loewner_leq(a, a)

    def test_loewner_shape_mismatch(self):
        with pytest.raises(DimensionMismatch):
            loewner_leq(np.eye(2), np.eye(3))


class TestRoots:
    def test_sqrt_examples(self):
        assert sqrt_pos(AlgElem(np.diag([4.0, 9.0]))).allclose(AlgElem(np.diag([2.0, 3.0])))
        assert sqrt_pos(AlgElem.zeros(2)).allclose(AlgElem.zeros(2))
        p = np.array([[0.5, 0.5], [0.5, 0.5]])
        assert sqrt_pos(AlgElem(p)).allclose(AlgElem(p), atol=1e-12)

    def test_sqrt_rejects_negative(self):
        with pytest.raises(NotPositive):
            sqrt_pos(AlgElem(np.diag([1.0, -1.0])))

    def test_sqrt_squares_back(self, rng):
        g = ginibre(rng, 3, 3)
        a = g.conj().T @ g
        root = sqrt_pos(a)
        assert_allclose(root @ root, a, atol=1e-10)

    def test_abs_examples(self, rng):
        assert abs_elem(AlgElem([[0, -2], [0, 0]])).allclose(AlgElem(np.diag([0.0, 2.0])), atol=1e-12)
        q, _ = np.linalg.qr(ginibre(rng, 3, 3))
        assert_allclose(abs_elem(q), np.eye(3), atol=1e-10)
        pos = np.diag([1.0, 3.0])
        assert_allclose(abs_elem(pos), pos, atol=1e-12)


class TestElement:
    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatch):
            AlgElem(np.ones((2, 3)))

    def test_dimension_checked_in_arithmetic(self):
        with pytest.raises(DimensionMismatch):
            AlgElem.identity(2) + AlgElem.identity(3)

    def test_entries_are_read_only(self):
        a = AlgElem.identity(2)
        with pytest.raises(ValueError):
            a.entries[0, 0] = 5

    def test_unhashable(self):
        with pytest.raises(TypeError):
            hash(AlgElem.identity(1))


def test_lapack_kernel_matches_jacobi(rng, lapack_kernel):
    a = hermitian(rng, 4)
    via_lapack = hermitian_eig(a).eigenvalues
    assert_allclose(via_lapack, jacobi_eigh(a)[0], atol=1e-12)
    assert op_norm(a) == pytest.approx(np.max(np.abs(via_lapack)), rel=1e-12)
