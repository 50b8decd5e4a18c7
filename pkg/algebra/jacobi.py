"""
Jacobi Kernels
Cyclic Jacobi eigensolver for Hermitian matrices and one-sided Jacobi SVD.

Both kernels sweep the index pairs in round-robin order: every round is a set
of disjoint pairs whose rotations commute, so a round is applied as a single
unitary multiplication.
"""

import logging
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from config import config
from errors import KernelFailure

# Configure logging
logger = logging.getLogger(__name__)

_EPS = np.finfo(np.float64).eps
_TINY = np.finfo(np.float64).tiny

Rounds = Tuple[Tuple[np.ndarray, np.ndarray], ...]


@lru_cache(maxsize=None)
def _round_robin(size: int) -> Rounds:
    """Rounds of disjoint pairs (p < q) covering every pair of range(size) once."""
    players = list(range(size)) + ([-1] if size % 2 else [])
    count = len(players)
    rounds = []
    for _ in range(count - 1):
        pairs = sorted(
            (min(a, b), max(a, b))
            for a, b in zip(players[:count // 2], reversed(players[count // 2:]))
            if a >= 0 and b >= 0
        )
        p = np.array([a for a, _ in pairs], dtype=np.intp)
        q = np.array([b for _, b in pairs], dtype=np.intp)
        rounds.append((p, q))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _rotations(app: np.ndarray, aqq: np.ndarray, apq: np.ndarray, threshold: float):
    """
    Parameters of the unitary 2x2 rotations [[c, s], [-s phase, c phase]] that
    diagonalize [[app, apq], [conj(apq), aqq]] for every pair at once.

    The phase of apq is split off first so that the remaining rotation is the
    classical real Jacobi rotation. Pairs with |apq| at or below the threshold
    get the identity.

    Returns:
        Tuple (active mask, c, s, phase)
    """
    g = np.abs(apq)
    active = g > max(threshold, _TINY)
    safe = np.where(active, g, 1.0)
    phase = np.where(active, np.conj(apq) / safe, 1.0)
    theta = (aqq - app) / (2.0 * safe)
    t = np.where(active, np.copysign(1.0, theta) / (np.abs(theta) + np.hypot(theta, 1.0)), 0.0)
    c = 1.0 / np.sqrt(t * t + 1.0)
    return active, c, t * c, phase


def _embed(size: int, p: np.ndarray, q: np.ndarray, c, s, phase) -> np.ndarray:
    rot = np.eye(size, dtype=np.complex128)
    rot[p, p] = c
    rot[p, q] = s
    rot[q, p] = -s * phase
    rot[q, q] = c * phase
    return rot


def _normalize_phases(basis: np.ndarray) -> np.ndarray:
    """Make the first non-negligible component of every column real positive."""
    basis = basis.copy()
    for k in range(basis.shape[1]):
        column = basis[:, k]
        nonzero = np.flatnonzero(np.abs(column) > 1e-10)
        if nonzero.size:
            lead = column[nonzero[0]]
            basis[:, k] = column * (np.conj(lead) / abs(lead))
    return basis


def jacobi_eigh(a: np.ndarray, max_sweeps: int = None,
                start: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Args:
        a: Hermitian matrix (only its Hermitian part is used)
        max_sweeps: Upper limit on full sweeps over the off-diagonal pairs
        start: Optional unitary to rotate into first, e.g. the eigenbasis of a nearby matrix

    Returns:
        Tuple (eigenvalues ascending, unitary matrix of eigenvectors as columns)

    Raises:
        KernelFailure: If the eigenvalues are not finite
    """
    max_sweeps = max_sweeps or config.JACOBI_MAX_SWEEPS
    work = np.array(a, dtype=np.complex128)
    work = 0.5 * (work + work.conj().T)
    size = work.shape[0]
    threshold = size * _EPS * np.linalg.norm(work)
    if start is None:
        vectors = np.eye(size, dtype=np.complex128)
    else:
        vectors = np.array(start, dtype=np.complex128)
        work = vectors.conj().T @ work @ vectors

    for sweep in range(max_sweeps):
        rotated = False
        for p, q in _round_robin(size):
            active, c, s, phase = _rotations(work[p, p].real, work[q, q].real, work[p, q], threshold)
            if not active.any():
                continue
            rot = _embed(size, p, q, c, s, phase)
            work = rot.conj().T @ work @ rot
            work[p[active], q[active]] = 0.0
            work[q[active], p[active]] = 0.0
            vectors = vectors @ rot
            rotated = True
        if not rotated:
            break
    else:
        logger.warning(f"[JACOBI] eigh did not settle after {max_sweeps} sweeps (size {size})")

    eigenvalues = work.diagonal().real.copy()
    if not np.all(np.isfinite(eigenvalues)):
        raise KernelFailure(f"eigh produced non-finite eigenvalues (size {size})")
    order = np.argsort(eigenvalues, kind="stable")
    return eigenvalues[order], _normalize_phases(vectors[:, order])


def jacobi_svd(m: np.ndarray, max_sweeps: int = None) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Singular value decomposition by one-sided (Hestenes) Jacobi.

    Rotations are chosen from the 2x2 blocks of m^H m and applied to the
    columns of m; the left basis is recovered from the rotated columns and
    completed to a unitary with a QR re-orthonormalization. A column pair is
    left alone once its inner product is negligible against ||m||_F^2, so
    (nearly) vanishing columns of rank-deficient input settle.

    Args:
        m: Complex p x q matrix
        max_sweeps: Upper limit on full sweeps over the column pairs

    Returns:
        Tuple (U p x p unitary, singular values descending of length min(p, q), V q x q unitary)

    Raises:
        KernelFailure: If the singular values are not finite
    """
    max_sweeps = max_sweeps or config.JACOBI_MAX_SWEEPS
    m = np.asarray(m, dtype=np.complex128)
    rows, cols = m.shape
    if cols > rows:
        u, sigma, v = jacobi_svd(m.conj().T, max_sweeps)
        return v, sigma, u

    # entrywise scaling keeps ||m||_F^2 clear of underflow and overflow
    scale = float(np.max(np.abs(m))) if m.size else 0.0
    if not (np.isfinite(scale) and scale > 0.0):
        scale = 1.0
    work = m / scale
    right = np.eye(cols, dtype=np.complex128)
    threshold = rows * _EPS * np.vdot(work, work).real
    for sweep in range(max_sweeps):
        rotated = False
        for p, q in _round_robin(cols):
            wp, wq = work[:, p], work[:, q]
            alpha = np.einsum("ij,ij->j", wp.conj(), wp).real
            beta = np.einsum("ij,ij->j", wq.conj(), wq).real
            gamma = np.einsum("ij,ij->j", wp.conj(), wq)
            active, c, s, phase = _rotations(alpha, beta, gamma, threshold)
            if not active.any():
                continue
            rot = _embed(cols, p, q, c, s, phase)
            work = work @ rot
            right = right @ rot
            rotated = True
        if not rotated:
            break
    else:
        logger.warning(f"[JACOBI] svd did not settle after {max_sweeps} sweeps ({rows}x{cols})")

    norms = np.linalg.norm(work, axis=0)
    if not np.all(np.isfinite(norms)):
        raise KernelFailure(f"svd produced non-finite singular values ({rows}x{cols})")
    order = np.argsort(-norms, kind="stable")
    norms = norms[order]
    work = work[:, order]
    right = right[:, order]

    cutoff = _EPS * max(rows, cols) * (norms[0] if cols else 0.0)
    rank = int(np.sum(norms > cutoff))
    left = work[:, :rank] / norms[:rank]
    q_mat, r_mat = np.linalg.qr(np.hstack([left, np.eye(rows, dtype=np.complex128)]))
    lead = r_mat.diagonal()[:rank]
    q_mat[:, :rank] *= lead / np.abs(lead)
    return q_mat[:, :rows], norms * scale, right


def lapack_eigh(a: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """LAPACK eigendecomposition with the same ordering and phase conventions."""
    a = np.asarray(a, dtype=np.complex128)
    eigenvalues, vectors = np.linalg.eigh(0.5 * (a + a.conj().T))
    return eigenvalues, _normalize_phases(vectors)


def lapack_svd(m: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """LAPACK singular value decomposition returning (U, sigma, V)."""
    u, sigma, vh = np.linalg.svd(np.asarray(m, dtype=np.complex128))
    return u, sigma, vh.conj().T


def eigh_kernel(a: np.ndarray, start: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Dispatch to the configured Hermitian eigen kernel."""
    if config.EIGEN_KERNEL == "lapack":
        return lapack_eigh(a)
    return jacobi_eigh(a, start=start)


def svd_kernel(m: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Dispatch to the configured SVD kernel."""
    if config.EIGEN_KERNEL == "lapack":
        return lapack_svd(m)
    return jacobi_svd(m)
