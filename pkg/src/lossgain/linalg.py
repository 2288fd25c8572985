"""Small dense matrix kernel.

Matrices are plain ``numpy`` arrays. The symmetric eigensolver is a cyclic
Jacobi method using round-robin ordering, so each step applies ``n // 2``
disjoint plane rotations at once.
"""

from functools import lru_cache

import numpy as np

from ._tolerance import default_tol
from .exceptions import NotSymmetricError, ShapeMismatchError

__all__ = [
    "as_matrix",
    "max_norm",
    "is_symmetric",
    "is_antisymmetric",
    "is_positive_definite",
    "eig_sym",
    "commutator",
    "anticommutator",
    "split_symmetric",
    "decompose",
    "sign_canonical",
]


def as_matrix(m, square=True):
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ShapeMismatchError(f"expected a 2-D matrix, got shape {a.shape}")
    if square and a.shape[0] != a.shape[1]:
        raise ShapeMismatchError(f"expected a square matrix, got shape {a.shape}")
    return a


def max_norm(m):
    a = np.asarray(m)
    return float(np.max(np.abs(a))) if a.size else 0.0


def _scaled_residual(residual, reference):
    scale = max_norm(reference)
    return max_norm(residual) / (scale if scale > 0 else 1.0)


def is_symmetric(m, tol=None):
    a = as_matrix(m)
    return _scaled_residual(a.T - a, a) <= default_tol(tol)


def is_antisymmetric(m, tol=None):
    a = as_matrix(m)
    return _scaled_residual(a.T + a, a) <= default_tol(tol)


@lru_cache(maxsize=64)
def _round_robin(n):
    """Pairings for one Jacobi sweep; each round pairs every index once.

    Odd ``n`` gets a dummy index ``n`` whose pairs are dropped.
    """
    size = n + (n % 2)
    players = list(range(size))
    rounds = []
    for _ in range(size - 1):
        half = size // 2
        pairs = [(players[i], players[size - 1 - i]) for i in range(half)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        if pairs:
            p, q = np.array(pairs).T
            rounds.append((p, q))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _jacobi(a, max_sweeps, rtol):
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return np.diag(a).copy(), v
    rounds = _round_robin(n)
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n), v
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= rtol * scale:
            break
        for p, q in rounds:
            apq = a[p, q]
            active = np.abs(apq) > 1e-300
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rot = np.eye(n)
            rot[p, p] = c
            rot[q, q] = c
            rot[p, q] = s
            rot[q, p] = -s
            a = rot.T @ a @ rot
            # keep exact symmetry; rounding otherwise drifts the two triangles apart
            a = 0.5 * (a + a.T)
            v = v @ rot
    return np.diag(a).copy(), v


def sign_canonical(vectors):
    """Flip columns so the first entry above noise level is positive."""
    v = np.array(vectors, dtype=float, copy=True)
    for j in range(v.shape[1]):
        col = v[:, j]
        big = np.flatnonzero(np.abs(col) > 1e-12 * max(np.max(np.abs(col)), 1e-300))
        if big.size and col[big[0]] < 0:
            v[:, j] = -col
    return v


def eig_sym(m, tol=None, max_sweeps=60):
    """Eigen-decomposition of a real symmetric matrix.

    Parameters
    ----------
    m : array_like, shape (n, n)
        Real symmetric matrix.
    tol : float, optional
        Relative symmetry tolerance (max-norm). Defaults to ``1e-10``.
    max_sweeps : int
        Upper bound on Jacobi sweeps.

    Returns
    -------
    eigenvalues : ndarray, shape (n,)
        Sorted in descending order.
    eigenvectors : ndarray, shape (n, n)
        Orthogonal matrix whose columns are the eigenvectors; each column has
        its first significant component positive.

    Raises
    ------
    NotSymmetricError
        If ``m`` is not symmetric within ``tol``.
    """
    a = as_matrix(m)
    if np.iscomplexobj(a):
        if max_norm(a.imag) > default_tol(tol) * max(max_norm(a), 1.0):
            raise NotSymmetricError("eig_sym expects a real matrix")
        a = a.real
    a = a.astype(float)
    if not is_symmetric(a, tol):
        raise NotSymmetricError(
            f"matrix is not symmetric: |M^T - M|_max = {max_norm(a.T - a):.3e}"
        )
    a = 0.5 * (a + a.T)
    vals, vecs = _jacobi(a, max_sweeps, rtol=4 * np.finfo(float).eps)
    vecs = sign_canonical(vecs)
    order = list(np.argsort(-vals, kind="stable"))
    # runs of (numerically) equal eigenvalues: descending lexicographic order of vectors
    gap = 1e-12 * max(max_norm(a), 1e-300)
    start = 0
    for i in range(1, len(order) + 1):
        if i == len(order) or vals[order[i - 1]] - vals[order[i]] > gap:
            run = order[start:i]
            order[start:i] = sorted(run, key=lambda j: tuple(-np.round(vecs[:, j], 12)))
            start = i
    order = np.array(order)
    return vals[order], vecs[:, order]


def is_positive_definite(m, tol=None):
    vals, _ = eig_sym(m, tol)
    return bool(vals[-1] > 0)


def _conformable(a, b):
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise ShapeMismatchError(f"shapes {a.shape} and {b.shape} are not conformable")
    return a, b


def commutator(a, b):
    """Return ``ab - ba``."""
    a, b = _conformable(a, b)
    return a @ b - b @ a


def anticommutator(a, b):
    """Return ``ab + ba``."""
    a, b = _conformable(a, b)
    return a @ b + b @ a


def split_symmetric(m):
    """Return the (symmetric, antisymmetric) parts of ``m``."""
    a = as_matrix(m)
    return 0.5 * (a + a.T), 0.5 * (a - a.T)


def decompose(m):
    """Unique split ``m = diagonal + symmetric-hollow + antisymmetric``."""
    sym, anti = split_symmetric(m)
    diag = np.diag(np.diag(sym))
    return diag, sym - diag, anti
