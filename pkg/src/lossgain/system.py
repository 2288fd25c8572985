"""Hamiltonian systems with balanced loss and gain.

A system is fixed by the kinetic matrix ``big_m`` (real symmetric,
non-singular), an antisymmetric ``a_mat``, a field map ``F(X)`` and a
potential ``V(X)``. The Hamiltonian is ``Pi^T M Pi + V`` with
``Pi = P + A F(X)``; eliminating momenta gives

    X'' = 2 M R(X) X' - 2 M dV/dX,   R = A J - (A J)^T,  J = dF/dX.

Units: hbar = mass = charge = 1.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ._tolerance import default_tol
from .exceptions import (
    BadShapeError,
    NonFiniteError,
    NotSymmetricError,
    SingularMatrixError,
)
from .linalg import as_matrix, decompose, is_antisymmetric, is_symmetric, max_norm

__all__ = [
    "QuadraticPotential",
    "SystemSpec",
    "DerivedMatrices",
    "BalanceReport",
    "Trajectory",
    "derive_matrices",
    "check_balance",
    "equations_of_motion",
    "flow_divergence",
    "integrate",
    "hamiltonian_value",
    "potential_gradient",
    "field_jacobian",
]


class QuadraticPotential:
    """``V(X) = 1/2 X^T K X + g^T X + c`` with an exact gradient.

    Integrators use the explicit coefficients to take the affine fast path.
    """

    def __init__(self, hessian=None, linear=None, constant=0.0, n=None):
        if hessian is None and linear is None and n is None:
            raise ValueError("need hessian, linear or n to fix the dimension")
        if n is None:
            n = len(linear) if hessian is None else np.shape(hessian)[0]
        self.hessian = np.zeros((n, n)) if hessian is None else np.array(hessian, dtype=float)
        self.linear = np.zeros(n) if linear is None else np.array(linear, dtype=float)
        self.constant = float(constant)
        if not is_symmetric(self.hessian):
            raise NotSymmetricError("potential hessian must be symmetric")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return float(0.5 * x @ self.hessian @ x + self.linear @ x + self.constant)

    def gradient(self, x):
        return self.hessian @ np.asarray(x, dtype=float) + self.linear

    def __neg__(self):
        return QuadraticPotential(-self.hessian, -self.linear, -self.constant)

    def __repr__(self):
        return (
            f"QuadraticPotential(hessian={self.hessian.tolist()}, "
            f"linear={self.linear.tolist()}, constant={self.constant})"
        )


def _identity(x):
    return np.asarray(x, dtype=float)


@dataclass(frozen=True)
class SystemSpec:
    """Loss-gain system specification.

    Attributes
    ----------
    big_m : ndarray, shape (n, n)
        Kinetic matrix, real symmetric and non-singular.
    a_mat : ndarray, shape (n, n)
        Real antisymmetric matrix entering the gauge potential ``A F``.
    field_f : callable, optional
        ``F(X)``; defaults to the identity.
    field_jacobian : callable, optional
        ``J(X) = dF/dX``. Central differences are used when omitted.
    potential : callable, optional
        ``V(X)``; ``None`` means ``V = 0``. A :class:`QuadraticPotential`
        (or any object with a ``gradient`` method) supplies its own gradient.
    constant_jacobian : bool
        Set when ``J`` does not depend on ``X`` (``R`` is then constant).
    """

    big_m: np.ndarray
    a_mat: np.ndarray
    field_f: Optional[Callable] = None
    field_jacobian: Optional[Callable] = None
    potential: Optional[Callable] = None
    constant_jacobian: bool = False
    label: str = ""
    tol: Optional[float] = None
    _m_inv: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        big_m = as_matrix(self.big_m).astype(float)
        a_mat = as_matrix(self.a_mat).astype(float)
        if big_m.shape != a_mat.shape:
            raise BadShapeError(f"big_m {big_m.shape} and a_mat {a_mat.shape} differ")
        if not is_symmetric(big_m, self.tol):
            raise NotSymmetricError("big_m must be symmetric")
        if not is_antisymmetric(a_mat, self.tol):
            raise BadShapeError("a_mat must be antisymmetric")
        tol_det = default_tol(self.tol) * max_norm(big_m)
        det = np.linalg.det(big_m)
        if not np.isfinite(det) or abs(det) < tol_det or max_norm(big_m) == 0:
            raise SingularMatrixError(f"kinetic matrix is singular (|det| = {abs(det):.3e})")
        object.__setattr__(self, "big_m", big_m)
        object.__setattr__(self, "a_mat", a_mat)
        object.__setattr__(self, "_m_inv", np.linalg.inv(big_m))
        if self.field_f is None and self.field_jacobian is None:
            object.__setattr__(self, "constant_jacobian", True)

    @property
    def n(self):
        return self.big_m.shape[0]

    @property
    def m_inv(self):
        return self._m_inv

    def with_potential(self, potential):
        return SystemSpec(
            self.big_m,
            self.a_mat,
            self.field_f,
            self.field_jacobian,
            potential,
            self.constant_jacobian,
            self.label,
            self.tol,
        )

    def field(self, x):
        f = self.field_f or _identity
        return np.asarray(f(np.asarray(x, dtype=float)), dtype=float)

    def is_affine(self):
        """True when the equations of motion are affine in ``(X, X')``."""
        pot_ok = self.potential is None or isinstance(self.potential, QuadraticPotential)
        return bool(self.constant_jacobian and pot_ok)


def _fd_step(x):
    return 1e-6 * max(1.0, float(np.max(np.abs(x))) if np.size(x) else 1.0)


def field_jacobian(spec, x):
    """``J(X)``: analytic when provided, else central differences."""
    x = np.asarray(x, dtype=float)
    if spec.field_jacobian is not None:
        return np.asarray(spec.field_jacobian(x), dtype=float)
    if spec.field_f is None:
        return np.eye(spec.n)
    h = _fd_step(x)
    jac = np.empty((spec.n, spec.n))
    for j in range(spec.n):
        e = np.zeros(spec.n)
        e[j] = h
        jac[:, j] = (spec.field(x + e) - spec.field(x - e)) / (2 * h)
    return jac


def potential_gradient(spec, x):
    x = np.asarray(x, dtype=float)
    pot = spec.potential
    if pot is None:
        return np.zeros(spec.n)
    if hasattr(pot, "gradient"):
        return np.asarray(pot.gradient(x), dtype=float)
    h = _fd_step(x)
    grad = np.empty(spec.n)
    for j in range(spec.n):
        e = np.zeros(spec.n)
        e[j] = h
        grad[j] = (pot(x + e) - pot(x - e)) / (2 * h)
    return grad


@dataclass(frozen=True)
class DerivedMatrices:
    """``R``, ``D = M R`` and the split ``D = D_diag + D_offsym + D_anti``."""

    r_mat: np.ndarray
    d_mat: np.ndarray
    d_diag: np.ndarray
    d_offsym: np.ndarray
    d_anti: np.ndarray

    @property
    def eta(self):
        """Loss-gain/coupling matrix of the generic second-order form (``-2 D``)."""
        return -2.0 * self.d_mat

    @property
    def trace(self):
        return float(np.trace(self.d_mat))


def r_matrix(spec, at=None):
    x = np.zeros(spec.n) if at is None else np.asarray(at, dtype=float)
    aj = spec.a_mat @ field_jacobian(spec, x)
    return aj - aj.T


def derive_matrices(spec, at=None):
    """Compute ``R``, ``D`` and the decomposition of ``D`` at configuration ``at``."""
    r = r_matrix(spec, at)
    d = spec.big_m @ r
    d_diag, d_offsym, d_anti = decompose(d)
    return DerivedMatrices(r, d, d_diag, d_offsym, d_anti)


@dataclass(frozen=True)
class BalanceReport:
    balanced: bool
    total: float
    gain: tuple
    loss: tuple
    neutral: tuple

    @property
    def pairwise(self):
        """True when gains and losses cancel in equal-magnitude pairs."""
        return len(self.gain) == len(self.loss)


def check_balance(eta_diag, tol=None):
    """Check ``sum(eta_ii) = 0`` and report which indices gain or lose.

    A positive ``eta_ii`` is loss and a negative one is gain. Indices are
    0-based.
    """
    eta = np.asarray(eta_diag, dtype=float).ravel()
    scale = max(float(np.max(np.abs(eta))) if eta.size else 0.0, 1.0)
    t = default_tol(tol)
    total = float(np.sum(eta))
    thresh = t * scale
    gain = tuple(int(i) for i in np.flatnonzero(eta < -thresh))
    loss = tuple(int(i) for i in np.flatnonzero(eta > thresh))
    neutral = tuple(int(i) for i in np.flatnonzero(np.abs(eta) <= thresh))
    return BalanceReport(abs(total) <= thresh, total, gain, loss, neutral)


def _affine_operator(spec):
    """``(L, b)`` with ``d/dt (X, X') = L (X, X') + b`` for affine systems."""
    n = spec.n
    r = r_matrix(spec)
    two_d = 2.0 * spec.big_m @ r
    lin = np.zeros((2 * n, 2 * n))
    lin[:n, n:] = np.eye(n)
    lin[n:, n:] = two_d
    b = np.zeros(2 * n)
    if spec.potential is not None:
        lin[n:, :n] = -2.0 * spec.big_m @ spec.potential.hessian
        b[n:] = -2.0 * spec.big_m @ spec.potential.linear
    return lin, b


def equations_of_motion(spec):
    """First-order vector field ``y -> y'`` on ``y = (X, X')``."""
    n = spec.n
    two_m = 2.0 * spec.big_m
    if spec.constant_jacobian:
        two_d = two_m @ r_matrix(spec)

        def rhs(y):
            y = np.asarray(y, dtype=float)
            x, v = y[:n], y[n:]
            return np.concatenate([v, two_d @ v - two_m @ potential_gradient(spec, x)])

    else:

        def rhs(y):
            y = np.asarray(y, dtype=float)
            x, v = y[:n], y[n:]
            acc = two_m @ (r_matrix(spec, x) @ v) - two_m @ potential_gradient(spec, x)
            return np.concatenate([v, acc])

    return rhs


def flow_divergence(spec, state, h=1e-6):
    """Divergence of the phase-space flow at ``state`` by central differences."""
    rhs = equations_of_motion(spec)
    y = np.asarray(state, dtype=float)
    total = 0.0
    for i in range(y.size):
        e = np.zeros_like(y)
        e[i] = h
        total += (rhs(y + e)[i] - rhs(y - e)[i]) / (2 * h)
    return total


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # shape (len(times), 2n): X then X'

    @property
    def n(self):
        return self.states.shape[1] // 2

    @property
    def positions(self):
        return self.states[:, : self.n]

    @property
    def velocities(self):
        return self.states[:, self.n :]

    def __len__(self):
        return len(self.times)


def _rk4_affine_propagator(lin, b, h):
    dim = lin.shape[0]
    hl = h * lin
    eye = np.eye(dim)
    hl2 = hl @ hl
    hl3 = hl2 @ hl
    prop = eye + hl + hl2 / 2 + hl3 / 6 + hl3 @ hl / 24
    shift = h * (eye + hl / 2 + hl2 / 6 + hl3 / 24) @ b
    return prop, shift


def integrate(spec, x0, v0, t_end, dt, generic=False):
    """Fixed-step classical RK4 from ``(x0, v0)`` at ``t = 0`` to ``t_end``.

    The step is shrunk to ``t_end / ceil(t_end / dt)`` so the last sample
    lands exactly on ``t_end``. Affine systems (constant ``R``, quadratic
    ``V``) use the RK4 propagator matrix, which is algebraically the same
    update; ``generic=True`` forces stage-by-stage evaluation.

    Raises
    ------
    NonFiniteError
        When the state overflows.
    """
    if not dt > 0 or not t_end > 0:
        raise ValueError("dt and t_end must be positive")
    x0 = np.asarray(x0, dtype=float).ravel()
    v0 = np.asarray(v0, dtype=float).ravel()
    if x0.size != spec.n or v0.size != spec.n:
        raise BadShapeError(f"initial data must have length {spec.n}")
    steps = max(1, int(np.ceil(t_end / dt - 1e-9)))
    h = t_end / steps
    states = np.empty((steps + 1, 2 * spec.n))
    states[0] = np.concatenate([x0, v0])
    with np.errstate(over="ignore", invalid="ignore"):
        if spec.is_affine() and not generic:
            prop, shift = _rk4_affine_propagator(*_affine_operator(spec), h)
            y = states[0]
            for k in range(steps):
                y = prop @ y + shift
                states[k + 1] = y
        else:
            rhs = equations_of_motion(spec)
            y = states[0]
            for k in range(steps):
                k1 = rhs(y)
                k2 = rhs(y + 0.5 * h * k1)
                k3 = rhs(y + 0.5 * h * k2)
                k4 = rhs(y + h * k3)
                y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
                states[k + 1] = y
    if not np.all(np.isfinite(states)):
        bad = int(np.argmax(~np.all(np.isfinite(states), axis=1)))
        raise NonFiniteError(f"state became non-finite at t = {bad * h:.6g}")
    times = h * np.arange(steps + 1)
    times[-1] = t_end
    return Trajectory(times, states)


def hamiltonian_value(spec, x, v):
    """Energy ``1/4 X'^T M^{-1} X' + V(X)``; accepts single states or stacks."""
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    kinetic = 0.25 * np.einsum("...i,ij,...j->...", v, spec.m_inv, v)
    if spec.potential is None:
        pot = np.zeros_like(kinetic)
    elif x.ndim == 1:
        pot = spec.potential(x)
    else:
        pot = np.array([spec.potential(xi) for xi in x])
    out = kinetic + pot
    return float(out) if np.ndim(out) == 0 else out
