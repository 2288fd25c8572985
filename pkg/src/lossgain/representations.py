"""Concrete matrix representations of loss-gain systems.

Each builder returns a :class:`RepresentationBundle` holding the
:class:`~lossgain.system.SystemSpec` together with closed-form eigenvalues of
the kinetic matrix and a positivity predicate, so numerics can be checked
against formulas.
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .exceptions import BadShapeError
from .linalg import as_matrix, is_antisymmetric
from .system import SystemSpec

__all__ = [
    "RepresentationBundle",
    "build_alpha_shifted",
    "build_pairwise",
    "build_beta_modified",
    "build_appendix_rep1",
    "build_appendix_rep2",
    "build_landau",
    "REPRESENTATIONS",
]

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]])
# -i * sigma_y written as a real matrix
MINUS_I_SIGMA_Y = np.array([[0.0, -1.0], [1.0, 0.0]])
EPS2 = np.array([[0.0, 1.0], [-1.0, 0.0]])


@dataclass(frozen=True)
class RepresentationBundle:
    """A system plus the closed forms it should reproduce.

    Attributes
    ----------
    spec : SystemSpec
    analytic_eigenvalues : ndarray
        Eigenvalues of the kinetic matrix from the closed form, descending.
    positivity_condition : callable
        ``positivity_condition(**params) -> bool``.
    label : str
    params : dict
    analytic : dict
        Extra closed-form quantities. Matrix-valued entries that depend on
        the configuration are callables of ``X``.
    """

    spec: SystemSpec
    analytic_eigenvalues: np.ndarray
    positivity_condition: Callable
    label: str
    params: dict = field(default_factory=dict)
    analytic: dict = field(default_factory=dict)

    @property
    def positive(self):
        return bool(self.positivity_condition(**self.params))


def _descending(vals):
    return np.sort(np.asarray(vals, dtype=float))[::-1]


def _fd_jacobian(func, x, h=1e-6):
    x = np.asarray(x, dtype=float)
    step = h * max(1.0, float(np.max(np.abs(x))))
    cols = []
    for j in range(x.size):
        e = np.zeros_like(x)
        e[j] = step
        cols.append((np.asarray(func(x + e)) - np.asarray(func(x - e))) / (2 * step))
    return np.column_stack(cols)


def _block_field(m, f):
    """Assemble ``(F, J)`` on R^{2m} from a block-local description.

    ``f`` is ``None`` (identity), a list of ``m`` per-block maps
    ``(x_odd, x_even) -> (F_odd, F_even)`` (optionally ``(map, jacobian)``
    pairs), or a single map on R^{2m} that is checked for block locality.
    """
    n = 2 * m
    if f is None:
        return None, None
    if callable(f):
        rng = np.random.default_rng(0)
        for _ in range(3):
            jac = _fd_jacobian(f, rng.normal(size=n))
            mask = np.kron(np.eye(m), np.ones((2, 2))) == 0
            if np.any(np.abs(jac[mask]) > 1e-6 * max(1.0, np.max(np.abs(jac)))):
                raise BadShapeError("field map couples different blocks")
        return f, None
    blocks = list(f)
    if len(blocks) != m:
        raise BadShapeError(f"expected {m} block maps, got {len(blocks)}")
    maps, jacs = [], []
    for blk in blocks:
        if isinstance(blk, tuple):
            maps.append(blk[0])
            jacs.append(blk[1])
        elif callable(blk):
            maps.append(blk)
            jacs.append(None)
        else:
            raise BadShapeError("block maps must be callables or (map, jacobian) pairs")

    def field_f(x):
        x = np.asarray(x, dtype=float)
        return np.concatenate([np.asarray(g(x[2 * i : 2 * i + 2]), dtype=float) for i, g in enumerate(maps)])

    def field_jac(x):
        x = np.asarray(x, dtype=float)
        jac = np.zeros((n, n))
        for i, (g, dg) in enumerate(zip(maps, jacs)):
            xi = x[2 * i : 2 * i + 2]
            jac[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = dg(xi) if dg is not None else _fd_jacobian(g, xi)
        return jac

    return field_f, field_jac


def _q_values(spec, m, x):
    from .system import field_jacobian

    jac = field_jacobian(spec, np.zeros(2 * m) if x is None else x)
    return np.array([np.trace(jac[2 * i : 2 * i + 2, 2 * i : 2 * i + 2]) for i in range(m)])


def _pairwise_matrices(m, gamma):
    big_m = np.kron(np.eye(m), SIGMA_X)
    a_mat = 0.5 * gamma * np.kron(np.eye(m), MINUS_I_SIGMA_Y)
    return big_m, a_mat


def build_alpha_shifted(m_mat, a_mat, alpha, field_f=None, field_jacobian=None, label="alpha-shifted"):
    """Shift a symmetric ``M`` by ``alpha^2 I``: ``D_A`` picks up ``alpha^2 R``."""
    m_mat = as_matrix(m_mat).astype(float)
    big_m = m_mat + alpha**2 * np.eye(m_mat.shape[0])
    vals = np.linalg.eigvalsh(m_mat) + alpha**2
    spec = SystemSpec(big_m, a_mat, field_f, field_jacobian, constant_jacobian=field_f is None, label=label)
    return RepresentationBundle(
        spec,
        _descending(vals),
        lambda alpha, base_min: alpha**2 + base_min > 0,
        label,
        {"alpha": alpha, "base_min": float(vals.min() - alpha**2)},
    )


def build_pairwise(m, gamma, alpha=0.0, f=None):
    """Block representation with pairwise balanced loss and gain.

    ``M = I_m (x) sigma_x``, ``A = (gamma/2) I_m (x) (-i sigma_y)`` and
    ``D = M R = gamma chi (x) sigma_z`` with ``chi_ii = Q_i / 2``, where ``Q_i``
    is the trace of the i-th 2x2 block of ``J``.
    """
    if m < 1:
        raise BadShapeError("need at least one block")
    big_m, a_mat = _pairwise_matrices(m, gamma)
    field_f, field_jac = _block_field(m, f)
    spec = SystemSpec(
        big_m + alpha**2 * np.eye(2 * m),
        a_mat,
        field_f,
        field_jac,
        constant_jacobian=f is None,
        label="pairwise",
    )

    def r_closed(x=None):
        q = _q_values(spec, m, x)
        return 0.5 * gamma * np.kron(np.diag(q), MINUS_I_SIGMA_Y)

    def d_closed(x=None):
        q = _q_values(spec, m, x)
        return gamma * np.kron(np.diag(0.5 * q), SIGMA_Z)

    return RepresentationBundle(
        spec,
        _descending([alpha**2 + 1] * m + [alpha**2 - 1] * m),
        lambda m, gamma, alpha: alpha**2 > 1,
        "pairwise",
        {"m": m, "gamma": gamma, "alpha": alpha},
        {"M": big_m, "r_mat": r_closed, "d_pair": d_closed, "q": lambda x=None: _q_values(spec, m, x)},
    )


def build_beta_modified(m, gamma, alpha, beta1, beta2, f=None):
    """Pairwise representation with ``M -> beta1 M + alpha^2 I + beta2 I_m (x) sigma_z``.

    The velocity matrix becomes ``beta1 D + D_O + alpha^2 R`` where ``D_O``
    is symmetric with vanishing diagonal and already carries ``beta2``.
    """
    if m < 1:
        raise BadShapeError("need at least one block")
    m0, a_mat = _pairwise_matrices(m, gamma)
    big_m = beta1 * m0 + alpha**2 * np.eye(2 * m) + beta2 * np.kron(np.eye(m), SIGMA_Z)
    field_f, field_jac = _block_field(m, f)
    spec = SystemSpec(big_m, a_mat, field_f, field_jac, constant_jacobian=f is None, label="beta-modified")
    rad = np.hypot(beta1, beta2)

    def d_offsym(x=None):
        q = _q_values(spec, m, x)
        return 0.5 * beta2 * gamma * np.kron(np.diag(q), -SIGMA_X)

    def r_closed(x=None):
        q = _q_values(spec, m, x)
        return 0.5 * gamma * np.kron(np.diag(q), MINUS_I_SIGMA_Y)

    def d_closed(x=None):
        q = _q_values(spec, m, x)
        d_pair = gamma * np.kron(np.diag(0.5 * q), SIGMA_Z)
        return beta1 * d_pair + d_offsym(x) + alpha**2 * r_closed(x)

    return RepresentationBundle(
        spec,
        _descending([alpha**2 + rad] * m + [alpha**2 - rad] * m),
        lambda m, gamma, alpha, beta1, beta2: alpha**2 > np.hypot(beta1, beta2),
        "beta-modified",
        {"m": m, "gamma": gamma, "alpha": alpha, "beta1": beta1, "beta2": beta2},
        {"d_offsym": d_offsym, "d_mat": d_closed, "r_mat": r_closed},
    )


def _check_generic_a(n, a_mat):
    if n < 2:
        raise BadShapeError("need n >= 2")
    if a_mat is None:
        return np.zeros((n, n))
    a = np.asarray(a_mat, dtype=float)
    if a.shape != (n, n) or not is_antisymmetric(a):
        raise BadShapeError(f"a_mat must be an antisymmetric {n}x{n} matrix")
    return a


def _rep1_positive(n, p, q):
    # exact: smallest eigenvalue p - 2|q| cos(pi/(n+1)) must be positive
    return p - 2 * abs(q) * np.cos(np.pi / (n + 1)) > 0


def build_appendix_rep1(n, p, q, a_mat=None, field_f=None, field_jacobian=None):
    """Tridiagonal ``M = p I + q T`` with generic antisymmetric ``A``.

    With the default ``F = X`` one has ``R = 2A``.
    """
    a = _check_generic_a(n, a_mat)
    tri = np.eye(n, k=1) + np.eye(n, k=-1)
    big_m = p * np.eye(n) + q * tri
    spec = SystemSpec(big_m, a, field_f, field_jacobian, constant_jacobian=field_f is None, label="appendix1")
    k = np.arange(1, n + 1)
    ij = np.outer(k, k)
    o_closed = np.sqrt(2.0 / (n + 1)) * np.sin(ij * np.pi / (n + 1))

    def d_closed(r):
        up = np.vstack([r[1:], np.zeros((1, n))])
        down = np.vstack([np.zeros((1, n)), r[:-1]])
        return p * r + q * (up + down)

    return RepresentationBundle(
        spec,
        _descending(p + 2 * q * np.cos(k * np.pi / (n + 1))),
        _rep1_positive,
        "appendix1",
        {"n": n, "p": p, "q": q},
        {
            "o_mat": o_closed,
            "eig_by_column": p + 2 * q * np.cos(k * np.pi / (n + 1)),
            "d_from_r": d_closed,
            "sufficient_positive": p > 2 * abs(q),
        },
    )


def _rep2_positive(n, p, q):
    return p > 0 and -p / (n - 1) < q < p


def build_appendix_rep2(n, p, q, a_mat=None, field_f=None, field_jacobian=None):
    """Uniform off-diagonal ``M_ij = p delta_ij + q (1 - delta_ij)``."""
    a = _check_generic_a(n, a_mat)
    big_m = (p - q) * np.eye(n) + q * np.ones((n, n))
    spec = SystemSpec(big_m, a, field_f, field_jacobian, constant_jacobian=field_f is None, label="appendix2")

    def split_from_r(r):
        col = r.sum(axis=0)  # col[j] = sum_k R_kj
        d_s = 0.5 * q * (col[None, :] + col[:, None])
        d_a = (p - q) * r + 0.5 * q * (col[None, :] - col[:, None])
        return d_s, d_a

    return RepresentationBundle(
        spec,
        _descending([p - q] * (n - 1) + [p + (n - 1) * q]),
        _rep2_positive,
        "appendix2",
        {"n": n, "p": p, "q": q},
        {"split_from_r": split_from_r},
    )


def build_landau(b, c, gamma):
    """Two-dimensional Landau system with loss and gain.

    ``M = 1/2 [[B+C, gamma], [gamma, B-C]]``, ``A = R/2`` with
    ``R = [[0, 1], [-1, 0]]`` and ``F = X``.
    """
    big_m = 0.5 * np.array([[b + c, gamma], [gamma, b - c]], dtype=float)
    spec = SystemSpec(big_m, 0.5 * EPS2, label="landau")
    delta = float(np.hypot(c, gamma))
    return RepresentationBundle(
        spec,
        _descending([(b + delta) / 2, (b - delta) / 2]),
        lambda b, c, gamma: b > np.hypot(c, gamma),
        "landau",
        {"b": b, "c": c, "gamma": gamma},
        {
            "r_mat": EPS2.copy(),
            "d_mat": 0.5 * np.array([[-gamma, b + c], [-(b - c), gamma]], dtype=float),
            "delta": delta,
        },
    )


REPRESENTATIONS = {
    "landau": build_landau,
    "pairwise": build_pairwise,
    "beta-modified": build_beta_modified,
    "appendix1": build_appendix_rep1,
    "appendix2": build_appendix_rep2,
}
