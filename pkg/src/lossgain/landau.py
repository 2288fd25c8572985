"""Classical Landau problem with balanced loss and gain.

Kinetic matrix ``M = 1/2 [[B+C, g], [g, B-C]]`` with ``R = [[0, 1], [-1, 0]]``
and ``F = X``. Eigenvalues ``lambda_pm = (B +/- Delta)/2`` with
``Delta = sqrt(C^2 + g^2)``; the effective field is
``|w| = sqrt|B^2 - Delta^2|``. Orbits are written in terms of the
rotation ``O(theta)`` diagonalizing ``M``, ``S = diag(sqrt|lambda_pm|)`` and
the complex parameters ``xi_1, xi_2``.
"""

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator

from ._tolerance import default_tol
from .exceptions import BoundarySingularError, GammaZeroUndefinedError, RegionMismatchError
from .representations import EPS2, build_landau
from .system import QuadraticPotential

__all__ = [
    "LandauParams",
    "OrbitConstants",
    "MotionConstants",
    "derive_params",
    "fit_constants",
    "closed_form",
    "constants_of_motion",
    "z_invariant",
    "orbit_ellipse",
    "gamma_zero_limit",
    "hall_potential",
    "hall_drift",
    "hall_solve",
    "hall_frame_field",
    "LandauOrbit",
]

REGION_LABELS = {1: "I", 2: "II", 3: "III"}


@dataclass(frozen=True)
class LandauParams:
    b: float
    c: float
    gamma: float
    delta: float
    lambda_plus: float
    lambda_minus: float
    omega: float  # |w|
    region: int
    theta: float
    xi1: complex
    xi2: complex
    phi1: float
    phi2: float

    @property
    def region_label(self):
        return REGION_LABELS[self.region]

    @property
    def o_mat(self):
        c, s = np.cos(self.theta), np.sin(self.theta)
        return np.array([[c, -s], [s, c]])

    @property
    def s_mat(self):
        return np.diag(np.sqrt([abs(self.lambda_plus), abs(self.lambda_minus)]))

    @property
    def eta(self):
        return np.diag(np.sign([self.lambda_plus, self.lambda_minus]))

    @property
    def big_m(self):
        return 0.5 * np.array([[self.b + self.c, self.gamma], [self.gamma, self.b - self.c]])

    @property
    def xi(self):
        """Ground-state parameter ``sqrt(2/|w|) (sqrt|l+| + i sqrt|l-|)``."""
        return np.sqrt(2.0 / self.omega) * complex(
            np.sqrt(abs(self.lambda_plus)), np.sqrt(abs(self.lambda_minus))
        )

    @property
    def period(self):
        return 2 * np.pi / self.omega

    def spec(self, potential=None):
        return build_landau(self.b, self.c, self.gamma).spec.with_potential(potential)


def _check_boundary(b, delta, tol):
    lp, lm = (b + delta) / 2, (b - delta) / 2
    scale = max(abs(lp), abs(lm))
    if scale == 0 or min(abs(lp), abs(lm)) <= default_tol(tol) * scale:
        raise BoundarySingularError(f"B = {b:g} lies on the boundary |B| = Delta = {delta:g}")
    return lp, lm


def derive_params(b, c, gamma, tol=None):
    """All derived Landau quantities.

    Raises
    ------
    BoundarySingularError
        When ``|B| = Delta`` (singular kinetic matrix).
    GammaZeroUndefinedError
        When ``gamma = 0`` and ``C != 0``: the rotation angle has no limit.
    """
    b, c, gamma = float(b), float(c), float(gamma)
    delta = float(np.hypot(c, gamma))
    lp, lm = _check_boundary(b, delta, tol)
    if gamma == 0.0:
        if c != 0.0:
            raise GammaZeroUndefinedError("rotation angle undefined for gamma = 0 with C != 0")
        theta = np.pi / 4
    else:
        theta = float(np.arctan((delta - c) / gamma))
    omega = float(np.sqrt(abs(b * b - delta * delta)))
    region = 1 if b > delta else (3 if b < -delta else 2)
    rp, rm = np.sqrt(abs(lp)), np.sqrt(abs(lm))
    pref = 2.0 / np.sqrt(omega)
    xi1 = pref * complex(rp * np.cos(theta), rm * np.sin(theta))
    xi2 = pref * complex(-rp * np.sin(theta), rm * np.cos(theta))
    phi1 = float(np.arctan(np.sqrt(abs(lm) / abs(lp)) * np.tan(theta)))
    phi2 = float(np.arctan(np.sqrt(abs(lp) / abs(lm)) * np.tan(theta)))
    return LandauParams(b, c, gamma, delta, lp, lm, omega, region, theta, xi1, xi2, phi1, phi2)


@dataclass(frozen=True)
class OrbitConstants:
    """Integration constants of a free orbit.

    ``center`` is the fixed point ``(c1, c2)``; ``amp`` holds two linear
    amplitudes. In Regions I and III ``amp = K (cos d, sin d)`` where ``K`` is
    the scaled cyclotron radius and ``d`` a phase; in Region II ``amp`` are
    the weights of the ``cosh`` and ``sinh`` modes.
    """

    center: np.ndarray
    amp: np.ndarray
    region: int

    @property
    def radius(self):
        return float(np.hypot(*self.amp))

    @property
    def phase(self):
        return float(np.arctan2(self.amp[1], self.amp[0]))


def _basis(p, t):
    """Rows ``x(t)``, columns ``(c1, c2, a1, a2)``; returns (pos, vel) of shape (..., 2, 4)."""
    t = np.asarray(t, dtype=float)
    w = p.omega
    zero = np.zeros_like(t)
    one = np.ones_like(t)
    if p.region == 2:
        ch, sh = np.cosh(w * t), np.sinh(w * t)
        os_ = p.o_mat @ p.s_mat
        col0, col1 = os_[:, 0], os_[:, 1]
        m1 = np.multiply.outer(col0, ch) + np.multiply.outer(col1, sh)  # cosh-led mode
        m2 = np.multiply.outer(col0, sh) + np.multiply.outer(col1, ch)
        d1 = w * m2
        d2 = w * m1
        pos = np.stack(
            [np.stack([one, zero, m1[0], m2[0]], -1), np.stack([zero, one, m1[1], m2[1]], -1)], -2
        )
        vel = np.stack(
            [np.stack([zero, zero, d1[0], d2[0]], -1), np.stack([zero, zero, d1[1], d2[1]], -1)], -2
        )
        return pos, vel
    # Region I: phases (w t - phi), x2 mode with a minus sign; Region III: (w t + phi), plus sign
    sp, sx = (-1.0, -1.0) if p.region == 1 else (1.0, 1.0)
    r1, r2 = abs(p.xi1), abs(p.xi2)
    a = w * t + sp * p.phi1
    b = w * t + sp * p.phi2
    pos = np.stack(
        [
            np.stack([one, zero, r1 * np.cos(a), -r1 * np.sin(a)], -1),
            np.stack([zero, one, sx * r2 * np.sin(b), sx * r2 * np.cos(b)], -1),
        ],
        -2,
    )
    vel = np.stack(
        [
            np.stack([zero, zero, -w * r1 * np.sin(a), -w * r1 * np.cos(a)], -1),
            np.stack([zero, zero, sx * w * r2 * np.cos(b), -sx * w * r2 * np.sin(b)], -1),
        ],
        -2,
    )
    return pos, vel


def fit_constants(params, x0, v0):
    """Solve the 4x4 linear system matching the closed form to ``(x0, v0)`` at ``t = 0``."""
    pos, vel = _basis(params, 0.0)
    lhs = np.vstack([pos, vel])
    rhs = np.concatenate([np.asarray(x0, dtype=float), np.asarray(v0, dtype=float)])
    coef = np.linalg.solve(lhs, rhs)
    return OrbitConstants(coef[:2], coef[2:], params.region)


def closed_form(params, constants, t):
    """Position and velocity of the free orbit at times ``t``.

    Regions I and III (``K`` the radius, ``d`` the phase of ``constants``)::

        x1 = c1 + K |xi1| cos(|w| t -/+ phi1 + d)
        x2 = c2 -/+ K |xi2| sin(|w| t -/+ phi2 + d)

    with the upper signs in Region I. Region II::

        X = C + O S [a1 (cosh, sinh) + a2 (sinh, cosh)](|w| t)

    Returns
    -------
    x, v : ndarray, shape (..., 2)
    """
    if constants.region != params.region:
        raise RegionMismatchError(
            f"constants fitted in region {REGION_LABELS[constants.region]}, "
            f"params are in region {params.region_label}"
        )
    pos, vel = _basis(params, t)
    coef = np.concatenate([constants.center, constants.amp])
    return pos @ coef, vel @ coef


def z_invariant(params, v):
    """``Z = xi1 v2 + xi2 v1``; ``|Z| / (2|w|)`` is the orbit radius ``K`` off Region II."""
    v = np.asarray(v, dtype=float)
    return params.xi1 * v[..., 1] + params.xi2 * v[..., 0]


@dataclass(frozen=True)
class MotionConstants:
    """Cyclotron centre ``C^a`` in the frame and its image in x-space."""

    c_vec: np.ndarray
    center_x: np.ndarray


def constants_of_motion(params, x, v):
    """``C^a = Xc + (1/|w|) R eta Xc'`` with ``Xc = S^{-1} O^T X``.

    Accepts single states or stacks (last axis of length 2).
    """
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    to_frame = np.linalg.inv(params.s_mat) @ params.o_mat.T
    xc = x @ to_frame.T
    vc = v @ to_frame.T
    c_vec = xc + vc @ (EPS2 @ params.eta).T / params.omega
    return MotionConstants(c_vec, c_vec @ (params.o_mat @ params.s_mat).T)


def orbit_ellipse(params, constants):
    """Semi-axes ``(a, b)`` and major-axis angle of a Region I/III orbit."""
    if params.region == 2:
        raise RegionMismatchError("Region II orbits are not closed")
    rho = constants.radius * params.omega / 2.0  # frame radius
    axes = rho * np.sqrt([abs(params.lambda_plus), abs(params.lambda_minus)])
    cols = params.o_mat
    k = int(np.argmax(axes))
    return float(axes.max()), float(axes.min()), float(np.arctan2(cols[1, k], cols[0, k]))


def gamma_zero_limit(b, c, amp, phi1_in, t, gamma=0.0):
    """Centred orbit in the smooth ``gamma -> 0`` limit.

    ``x1 = |A| cos(w t + phi1)``, ``x2 = -s r |A| sin(w t + phi2)`` with
    ``w = sqrt(B^2 - C^2 - gamma^2)``, ``r = sqrt((B-C)/(B+C))`` and
    ``s = sign(B + C)``. Exact at ``gamma = 0``; first-order otherwise.
    """
    b, c = float(b), float(c)
    if abs(abs(b) - abs(c)) <= default_tol() * max(abs(b), abs(c), 1.0):
        raise BoundarySingularError("B = +/- C: orbit degenerates")
    w2 = b * b - c * c - gamma * gamma
    if w2 <= 0:
        raise RegionMismatchError("limit orbit needs |B| > sqrt(C^2 + gamma^2)")
    w = np.sqrt(w2)
    phi2 = np.arctan2(w * np.sin(phi1_in) - 2 * gamma * np.cos(phi1_in),
                      w * np.cos(phi1_in) + 2 * gamma * np.sin(phi1_in))
    ratio = np.sqrt((b - c) / (b + c))
    t = np.asarray(t, dtype=float)
    x1 = abs(amp) * np.cos(w * t + phi1_in)
    x2 = -np.sign(b + c) * ratio * abs(amp) * np.sin(w * t + phi2)
    return x1, x2


def _hall_params(b, gamma):
    p = derive_params(b, 0.0, gamma)
    if p.region != 1:
        raise RegionMismatchError(f"Hall analysis needs Region I, got {p.region_label}")
    return p


def hall_potential(b, gamma, e_field):
    """``V = -(E/w^2)(B x1 - gamma x2)``, a uniform field ``E`` along x1."""
    w2 = b * b - gamma * gamma
    if w2 == 0:
        raise BoundarySingularError("B = +/- gamma")
    return QuadraticPotential(linear=-(e_field / w2) * np.array([b, -gamma]), n=2)


def hall_drift(b, gamma, e_field):
    """Drift velocity ``-(E/w^2)(gamma, B)`` and Hall angle ``arctan(B/gamma)``."""
    p = _hall_params(b, gamma)
    w2 = p.omega**2
    drift = -(e_field / w2) * np.array([gamma, b])
    angle = np.pi / 2 if gamma == 0 else float(np.arctan(b / gamma))
    return drift, angle


def hall_solve(params, e_field, x0, v0, t):
    """Orbit in the Hall potential: a free orbit plus uniform drift."""
    if params.c != 0:
        raise RegionMismatchError("Hall solution assumes C = 0")
    drift, _ = hall_drift(params.b, params.gamma, e_field)
    const = fit_constants(params, x0, np.asarray(v0, dtype=float) - drift)
    x, v = closed_form(params, const, t)
    t = np.asarray(t, dtype=float)
    return x + t[..., None] * drift, v + drift


def hall_frame_field(params, e_field):
    """Effective field ``-2 dV/dXc`` acting in the canonical frame (C = 0)."""
    pot = hall_potential(params.b, params.gamma, e_field)
    return -2.0 * params.s_mat @ params.o_mat.T @ pot.linear


class LandauOrbit(BaseEstimator):
    """Closed-form orbit fitted to initial data.

    Parameters
    ----------
    b, c, gamma : float
        Field, velocity coupling and loss-gain strength.
    e_field : float
        Uniform electric field along x1 (requires ``c = 0`` when nonzero).

    Examples
    --------
    >>> orbit = LandauOrbit(b=2.0, gamma=1.0).fit([1.0, 0.0], [0.0, 0.5])
    >>> x = orbit.predict([0.0, 1.0])
    """

    def __init__(self, b=2.0, c=0.0, gamma=0.0, e_field=0.0):
        self.b = b
        self.c = c
        self.gamma = gamma
        self.e_field = e_field

    def fit(self, x0, v0):
        self.params_ = derive_params(self.b, self.c, self.gamma)
        self.x0_ = np.asarray(x0, dtype=float)
        self.v0_ = np.asarray(v0, dtype=float)
        if self.e_field:
            self.drift_, self.hall_angle_ = hall_drift(self.b, self.gamma, self.e_field)
        else:
            self.drift_ = np.zeros(2)
        self.constants_ = fit_constants(self.params_, self.x0_, self.v0_ - self.drift_)
        return self

    def _eval(self, t):
        x, v = closed_form(self.params_, self.constants_, t)
        t = np.asarray(t, dtype=float)
        return x + t[..., None] * self.drift_, v + self.drift_

    def predict(self, t):
        return self._eval(t)[0]

    def predict_velocity(self, t):
        return self._eval(t)[1]
