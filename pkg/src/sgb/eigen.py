"""Smallest nonzero eigenvalue of the generalized symmetric problem
L x = lambda M x with diagonal M, by blocked preconditioned conjugate-gradient
eigeniteration, plus a dense full-spectrum oracle for small instances."""

from __future__ import annotations

import math

import numpy as np
from scipy import sparse

from .errors import (
    ConvergenceError,
    DeflationError,
    DomainError,
    IllConditionedError,
    SizeError,
)
from .mesh import DiagMass, SparseSym

_MASK64 = (1 << 64) - 1


def _lcg_block(seed: int, rows: int, cols: int) -> np.ndarray:
    """Deterministic start block from a 64-bit linear-congruential stream."""
    state = (int(seed) & _MASK64) or 1
    out = np.empty(rows * cols)
    for i in range(rows * cols):
        state = (6364136223846793005 * state + 1442695040888963407) & _MASK64
        out[i] = (state >> 11) / float(1 << 53)
    return out.reshape(rows, cols) - 0.5


def _coerce(L, M):
    A = L.matrix if isinstance(L, SparseSym) else sparse.csr_matrix(L)
    w = M.weights if isinstance(M, DiagMass) else np.asarray(M, dtype=float)
    if A.shape[0] != A.shape[1]:
        raise DomainError(f"L must be square, got {A.shape}")
    if w.ndim != 1 or w.shape[0] != A.shape[0]:
        raise DomainError("M must be a diagonal of matching dimension")
    return A, w


def smallest_nonzero_eig(
    L,
    M,
    tol: float = 1e-8,
    block_size: int = 8,
    iter_cap: int = 5000,
    seed: int = 12345,
) -> tuple[float, np.ndarray]:
    """Minimum of the Rayleigh quotient over the M-orthogonal complement of
    the constants.

    Blocked preconditioned CG eigeniteration (LOBPCG-type): Jacobi/diagonal
    preconditioner, explicit M-orthogonal deflation of the constant vector
    every iteration, deterministic LCG start block.  Converged when the
    relative change of the smallest Ritz value drops below ``tol`` and its
    residual satisfies ||L x - lambda M x|| <= tol ||L x||.

    Returns (lambda1, x) with x M-normalized.  Raises ConvergenceError after
    ``iter_cap`` iterations, IllConditionedError for mass dynamic range above
    1e12, and DeflationError if the result is indistinguishable from the
    constant mode.
    """
    if not 1e-14 < tol < 1e-4:
        raise DomainError(f"tol must lie in (1e-14, 1e-4), got {tol}")
    A, mw = _coerce(L, M)
    n = A.shape[0]
    if np.any(mw <= 0):
        raise DomainError("mass weights must be positive")
    if mw.max() / mw.min() > 1e12:
        raise IllConditionedError(
            f"mass dynamic range {mw.max() / mw.min():.3e} exceeds 1e12"
        )

    b = min(max(4, int(block_size)), n - 1)
    m_total = mw.sum()
    diag = A.diagonal()
    precond = np.where(diag > 0, 1.0 / np.where(diag > 0, diag, 1.0), 1.0)
    # M-normalized constant vector, deflated from every block each iteration
    const = (np.ones(n) / math.sqrt(m_total)).reshape(-1, 1)

    def m_orthonormalize(Z):
        """M-orthonormal basis of the numerically independent columns, or None."""
        if Z is None or Z.shape[1] == 0:
            return None
        G = Z.T @ (mw[:, None] * Z)
        G = 0.5 * (G + G.T)
        w, Q = np.linalg.eigh(G)
        if w.size == 0 or w[-1] <= 0:
            return None
        keep = w > 1e-12 * w[-1]
        if not keep.any():
            return None
        return Z @ (Q[:, keep] / np.sqrt(w[keep])[None, :])

    def col_norms(Z):
        return np.sqrt(np.einsum("ij,ij->j", Z, Z))

    def project_clean(Z, bases):
        """Remove the spans of `bases`; drop columns annihilated by the
        projection (they carry roundoff, not search directions)."""
        pre = col_norms(Z)
        for B in bases:
            Z = Z - B @ (B.T @ (mw[:, None] * Z))
        post = col_norms(Z)
        keep = post > 1e-10 * np.maximum(pre, 1e-300)
        if not keep.any():
            return None
        return Z[:, keep]

    X = m_orthonormalize(project_clean(_lcg_block(seed, n, b), [const]))
    if X is None:
        raise DomainError("start block collapsed under deflation")
    # initial Rayleigh-Ritz on the start block
    T = X.T @ (A @ X)
    lam, Y = np.linalg.eigh(0.5 * (T + T.T))
    X = X @ Y
    b = X.shape[1]

    P = None
    lam_prev = math.inf
    AX = A @ X
    for _ in range(iter_cap):
        # curb roundoff leakage of the constant; AX is unaffected because the
        # constants lie in the kernel of L
        X -= const @ (const.T @ (mw[:, None] * X))
        R = AX - (mw[:, None] * X) * lam[None, :]
        res = float(np.linalg.norm(R[:, 0]))
        ref = max(float(np.linalg.norm(AX[:, 0])), 1e-300)
        rel = abs(lam[0] - lam_prev) / max(abs(lam[0]), 1e-300)
        if rel < tol and res <= tol * ref:
            break
        lam_prev = lam[0]

        W = m_orthonormalize(project_clean(R * precond[:, None], [const, X]))
        if W is None:
            if res <= tol * ref:
                break
            raise ConvergenceError("residual basis collapsed before convergence")
        blocks = [X, W]
        if P is not None:
            P = m_orthonormalize(project_clean(P, [const, X, W]))
            if P is not None:
                blocks.append(P)
        B = np.concatenate(blocks, axis=1)
        AB = A @ B
        T = B.T @ AB
        w, Y = np.linalg.eigh(0.5 * (T + T.T))
        lam = w[:b]
        X = B @ Y[:, :b]
        AX = AB @ Y[:, :b]
        Yp = Y[:, :b].copy()
        Yp[:b, :] = 0.0  # drop the X-block: pure search direction
        P = B @ Yp
    else:
        raise ConvergenceError(f"no convergence within {iter_cap} iterations")

    lam1 = float(lam[0])
    if lam1 <= 1e-8 * (diag.sum() / n):
        raise DeflationError(f"eigenvalue {lam1:.3e} not separated from the constant mode")
    x = X[:, :1] - const @ (const.T @ (mw[:, None] * X[:, :1]))
    x = x.ravel()
    x /= math.sqrt(float(x @ (mw * x)))
    return lam1, x


def _jacobi_eigh(A0: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi rotations on a dense symmetric matrix, to machine precision."""
    A = A0.copy()
    n = A.shape[0]
    V = np.eye(n)
    fro = np.linalg.norm(A0)
    if fro == 0.0:
        return np.zeros(n), V
    for _ in range(100):
        # explicit off-diagonal norm: the sum-of-squares difference cancels
        # catastrophically once off is tiny
        offmat = A - np.diag(np.diag(A))
        off = np.linalg.norm(offmat)
        if off <= 1e-14 * fro:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-18 * fro:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                colp, colq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * colp - s * colq
                A[:, q] = s * colp + c * colq
                rowp, rowq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * rowp - s * rowq
                A[q, :] = s * rowp + c * rowq
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    return np.diag(A).copy(), V


def dense_eig_oracle(L, M) -> tuple[np.ndarray, np.ndarray]:
    """Full generalized symmetric spectrum via the M^{-1/2} similarity and
    Jacobi rotations.  Returns (sorted eigenvalues, M-orthonormal eigenvectors
    as columns).  Capped at dimension 400."""
    A, mw = _coerce(L, M)
    n = A.shape[0]
    if n > 400:
        raise SizeError(f"dense oracle capped at 400, got dimension {n}")
    if np.any(mw <= 0):
        raise DomainError("mass weights must be positive")
    rt = np.sqrt(mw)
    B = A.toarray() / np.outer(rt, rt)
    B = 0.5 * (B + B.T)
    vals, vecs = _jacobi_eigh(B)
    order = np.argsort(vals)
    return vals[order], (vecs / rt[:, None])[:, order]
