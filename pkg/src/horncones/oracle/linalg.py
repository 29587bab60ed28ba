"""Dense Hermitian eigensolver and singular values for small matrices.

The eigensolver is a cyclic complex Jacobi method working on a whole stack
of matrices at once, so a batch of random samples costs one Python loop
over rotation pairs. Singular values are read off the Hermitian dilation
``[[0, A], [A*, 0]]``, whose spectrum is ``(s, 0, ..., 0, -s reversed)``;
this keeps full accuracy for small singular values, unlike ``A A*``.
"""

from __future__ import annotations

import numpy as np

from ..errors import DimensionMismatch, NotConverged, NotHermitian

__all__ = [
    "jacobi_eigh",
    "eigh",
    "eigenvalues_hermitian",
    "singular_values",
    "svd",
    "dilation",
    "random_unitary",
    "random_hermitian",
    "random_matrix",
    "random_real_symmetric",
    "random_orthogonal",
    "hermitian_residual",
]

MAX_SWEEPS = 50
_EPS = np.finfo(float).eps


def hermitian_residual(M: np.ndarray) -> float:
    M = np.asarray(M)
    return float(np.abs(M - M.conj().swapaxes(-1, -2)).max()) if M.size else 0.0


def _as_stack(M) -> tuple[np.ndarray, bool]:
    M = np.array(M, dtype=complex)
    single = M.ndim == 2
    if single:
        M = M[None]
    if M.ndim != 3 or M.shape[1] != M.shape[2]:
        raise DimensionMismatch(f"expected square matrices, got shape {M.shape}")
    return M, single


def jacobi_eigh(M, check: bool = True, tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a stack ``(B, n, n)`` (or one ``(n, n)``) of Hermitian matrices.

    Returns ``(e, U)`` with eigenvalues in decreasing order and
    ``M = U diag(e) U*``.
    """
    M, single = _as_stack(M)
    B, n, _ = M.shape
    if check:
        scale = max(1.0, float(np.abs(M).max()) if M.size else 1.0)
        if hermitian_residual(M) > tol * scale:
            raise NotHermitian(f"matrix is not Hermitian (residual {hermitian_residual(M):.3e})")
    M = (M + M.conj().swapaxes(1, 2)) / 2
    V = np.broadcast_to(np.eye(n, dtype=complex), (B, n, n)).copy()
    norm = np.sqrt((np.abs(M) ** 2).sum(axis=(1, 2)))
    target = 2 * n * _EPS * np.maximum(norm, np.finfo(float).tiny)
    offdiag = ~np.eye(n, dtype=bool)
    converged = n < 2
    for _ in range(MAX_SWEEPS):
        if converged:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(M, V, p, q, target)
        off = np.sqrt((np.abs(M[:, offdiag]) ** 2).sum(axis=1))
        converged = bool(np.all(off <= target))
    if not converged:
        raise NotConverged(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    e = np.diagonal(M, axis1=1, axis2=2).real.copy()
    order = np.argsort(-e, axis=1, kind="stable")
    e = np.take_along_axis(e, order, axis=1)
    V = np.take_along_axis(V, order[:, None, :], axis=2)
    if single:
        return e[0], V[0]
    return e, V


def _rotate(M: np.ndarray, V: np.ndarray, p: int, q: int, target: np.ndarray) -> None:
    """Annihilate ``M[:, p, q]`` in place with ``M <- G* M G`` and ``V <- V G``."""
    b = M[:, p, q]
    ab = np.abs(b)
    active = ab > 0.05 * target / M.shape[1] ** 2
    if not active.any():
        return
    a = M[:, p, p].real
    d = M[:, q, q].real
    safe = np.where(active, ab, 1.0)
    tau = (d - a) / (2 * safe)
    sign = np.where(tau >= 0, 1.0, -1.0)
    t = sign / (np.abs(tau) + np.sqrt(1 + tau * tau))
    c = 1 / np.sqrt(1 + t * t)
    s = t * c
    phase = np.where(active, np.conj(b) / safe, 1.0)  # e^{-i phi}
    c = np.where(active, c, 1.0)
    s = np.where(active, s, 0.0)
    g10 = -s * phase
    g11 = c * phase
    # columns: M[:, :, (p, q)] @ G
    cp = M[:, :, p].copy()
    cq = M[:, :, q]
    M[:, :, p] = cp * c[:, None] + cq * g10[:, None]
    M[:, :, q] = cp * s[:, None] + cq * g11[:, None]
    # rows: G* @ M[:, (p, q), :]
    rp = M[:, p, :].copy()
    rq = M[:, q, :]
    M[:, p, :] = rp * c[:, None] + rq * np.conj(g10)[:, None]
    M[:, q, :] = rp * s[:, None] + rq * np.conj(g11)[:, None]
    M[:, p, q] = 0
    M[:, q, p] = 0
    M[:, p, p] = M[:, p, p].real
    M[:, q, q] = M[:, q, q].real
    vp = V[:, :, p].copy()
    vq = V[:, :, q]
    V[:, :, p] = vp * c[:, None] + vq * g10[:, None]
    V[:, :, q] = vp * s[:, None] + vq * g11[:, None]


def eigh(M, check: bool = True) -> tuple[np.ndarray, np.ndarray]:
    return jacobi_eigh(M, check=check)


def eigenvalues_hermitian(M, check: bool = True) -> np.ndarray:
    """Decreasing eigenvalues of a Hermitian matrix (or a stack of them)."""
    return jacobi_eigh(M, check=check)[0]


def dilation(A) -> np.ndarray:
    """The Hermitian matrix ``[[0, A], [A*, 0]]`` (stacks allowed)."""
    A = np.asarray(A, dtype=complex)
    p, q = A.shape[-2:]
    H = np.zeros(A.shape[:-2] + (p + q, p + q), dtype=complex)
    H[..., :p, p:] = A
    H[..., p:, :p] = A.conj().swapaxes(-1, -2)
    return H


def singular_values(A) -> np.ndarray:
    """Decreasing singular values (``min(p, q)`` of them) of a matrix or stack."""
    A = np.asarray(A, dtype=complex)
    if A.ndim < 2 or min(A.shape[-2:]) < 1:
        raise DimensionMismatch(f"need a nonempty matrix, got shape {A.shape}")
    k = min(A.shape[-2:])
    e = eigenvalues_hermitian(dilation(A), check=False)
    return np.maximum(e[..., :k], 0.0)


def svd(A) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin SVD ``A = U diag(s) V*`` of a matrix (or a stack), from the dilation's eigenvectors.

    Columns belonging to a zero singular value are returned as zero vectors;
    they do not contribute to the product.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim not in (2, 3):
        raise DimensionMismatch("svd takes a matrix or a stack of matrices")
    p, q = A.shape[-2:]
    k = min(p, q)
    e, W = jacobi_eigh(dilation(A), check=False)
    s = np.maximum(e[..., :k], 0.0)
    U = np.sqrt(2) * W[..., :p, :k]
    V = np.sqrt(2) * W[..., p:, :k]
    top = np.maximum(s[..., :1], 1.0) if k else 1.0
    tiny = (s <= 1e-13 * top)[..., None, :]
    return np.where(tiny, 0, U), s, np.where(tiny, 0, V)


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_unitary(n: int, seed=None) -> np.ndarray:
    """Haar-random ``n x n`` unitary: QR of a complex Gaussian matrix, phases fixed."""
    rng = _rng(seed)
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def random_orthogonal(n: int, seed=None) -> np.ndarray:
    rng = _rng(seed)
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    return Q * np.sign(np.diagonal(R))


def _spectrum(rng: np.random.Generator, n: int, nonneg: bool = False) -> np.ndarray:
    """Small integer spectrum with frequent ties and zeros."""
    lo = 0 if nonneg else -3
    return rng.integers(lo, 4, size=n).astype(float)


def random_hermitian(n: int, seed=None, structured: float = 0.5) -> np.ndarray:
    """GUE-like Hermitian matrix, or with probability ``structured`` ``U diag(d) U*``
    for an integer spectrum ``d`` with ties (boundary points of the cones)."""
    rng = _rng(seed)
    if rng.random() < structured:
        U = random_unitary(n, rng)
        return (U * _spectrum(rng, n)) @ U.conj().T
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (G + G.conj().T) / 2


def random_real_symmetric(n: int, seed=None, structured: float = 0.5) -> np.ndarray:
    rng = _rng(seed)
    if rng.random() < structured:
        O = random_orthogonal(n, rng)
        return (O * _spectrum(rng, n)) @ O.T
    G = rng.standard_normal((n, n))
    return (G + G.T) / 2


def random_matrix(p: int, q: int, seed=None, structured: float = 0.5) -> np.ndarray:
    """Complex Gaussian ``p x q`` matrix, or with probability ``structured`` one with
    prescribed integer singular values (ties, zeros, low rank)."""
    rng = _rng(seed)
    if rng.random() < structured:
        k = min(p, q)
        U = random_unitary(p, rng)[:, :k]
        V = random_unitary(q, rng)[:, :k]
        return (U * _spectrum(rng, k, nonneg=True)) @ V.conj().T
    return (rng.standard_normal((p, q)) + 1j * rng.standard_normal((p, q))) / np.sqrt(2)
