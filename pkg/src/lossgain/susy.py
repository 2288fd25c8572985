"""Pauli Hamiltonian with loss and gain and its two supercharge pairs.

Spin-dependent operators are expanded on the Pauli basis
``(I, sigma_x, sigma_y, sigma_z)`` with phase-space operators as
coefficients. Products of tensor terms use

    {X A, Y B} = ({X, Y}{A, B} + [X, Y][A, B]) / 2
    [X A, Y B] = ([X, Y]{A, B} + {X, Y}[A, B]) / 2

so that only brackets with a nonzero spin factor are ever formed.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import sympy

from .exceptions import RegionMismatchError, TruncationWarning
from .phase_ops import PhaseOperator, anticommutator, commutator, coordinates, product
from .quantum import FockOperator, _exact_params, fock_matrix, spectrum

__all__ = [
    "PAULI",
    "SpinPhaseOperator",
    "build_pauli_hamiltonian",
    "Supercharges",
    "build_supercharges",
    "susy_identities",
    "SusySpectrum",
    "susy_spectrum_check",
]

PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]]),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
BASIS = ("I", "x", "y", "z")


def _pauli_decompose(mat):
    """Coefficients of a 2x2 matrix on the Pauli basis."""
    out = {}
    for c, sig in enumerate(PAULI):
        v = np.trace(sig @ mat) / 2
        if abs(v) > 1e-12:
            out[c] = complex(round(v.real, 12), round(v.imag, 12))
    return out


def _table(bracket):
    return {(a, b): _pauli_decompose(bracket(PAULI[a], PAULI[b])) for a in range(4) for b in range(4)}


_ANTI = _table(lambda x, y: x @ y + y @ x)
_COMM = _table(lambda x, y: x @ y - y @ x)


def _number(v, exact):
    if not exact:
        return v
    return sympy.nsimplify(v.real, rational=True) + sympy.I * sympy.nsimplify(v.imag, rational=True)


class SpinPhaseOperator:
    """Operator ``sum_c X_c sigma_c`` with phase-space coefficients ``X_c``.

    Parameters
    ----------
    terms : dict or iterable of (matrix, PhaseOperator)
        A dict maps basis labels ``"I", "x", "y", "z"`` (or indices 0..3)
        to coefficients; pairs with arbitrary 2x2 matrices are reduced onto
        the basis.
    exact : bool
    """

    def __init__(self, terms=(), exact=False):
        self.exact = bool(exact)
        coeffs = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for key, op in items:
            if isinstance(key, str):
                parts = {BASIS.index(key): 1}
            elif isinstance(key, (int, np.integer)):
                parts = {int(key): 1}
            else:
                parts = _pauli_decompose(np.asarray(key, dtype=complex))
            if not isinstance(op, PhaseOperator):
                op = PhaseOperator.scalar(op, self.exact)
            for c, k in parts.items():
                term = op * _number(k, self.exact)
                coeffs[c] = coeffs[c] + term if c in coeffs else term
        self.coeffs = coeffs

    def coefficient(self, label):
        c = BASIS.index(label) if isinstance(label, str) else int(label)
        return self.coeffs.get(c, PhaseOperator.scalar(0, self.exact))

    def __add__(self, other):
        out = dict(self.coeffs)
        for c, op in other.coeffs.items():
            out[c] = out[c] + op if c in out else op
        return SpinPhaseOperator(out, self.exact or other.exact)

    def __neg__(self):
        return SpinPhaseOperator({c: -op for c, op in self.coeffs.items()}, self.exact)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return SpinPhaseOperator({c: op * k for c, op in self.coeffs.items()}, self.exact)

    def _combine(self, other, sym_table, sym_op, anti_table, anti_op):
        out = {}
        exact = self.exact or other.exact
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                for table, op in ((sym_table, sym_op), (anti_table, anti_op)):
                    parts = table[(a, b)]
                    if not parts:
                        continue
                    br = op(x, y)
                    for c, k in parts.items():
                        term = br * (_number(k, exact) / 2 if exact else k / 2)
                        out[c] = out[c] + term if c in out else term
        return SpinPhaseOperator(out, exact)

    def anticommutator(self, other):
        return self._combine(other, _ANTI, anticommutator, _COMM, commutator)

    def commutator(self, other):
        return self._combine(other, _ANTI, commutator, _COMM, anticommutator)

    def residual(self):
        return max((op.residual() for op in self.coeffs.values()), default=0.0)

    def is_zero(self, tol=None):
        return all(op.is_zero(tol) for op in self.coeffs.values())

    def matrix(self, n_max):
        """Matrix on the truncated Fock space tensored with spin (spin index fastest)."""
        dim = (n_max + 1) ** 2
        mat = np.zeros((2 * dim, 2 * dim), dtype=complex)
        for c, op in self.coeffs.items():
            mat += np.kron(fock_matrix(op, n_max).matrix, PAULI[c])
        return mat


def _require(params, need_c_zero=False):
    if params.region != 1:
        raise RegionMismatchError(f"supersymmetric form needs Region I, got Region {params.region_label}")
    if need_c_zero and params.c != 0:
        raise RegionMismatchError("the Q supercharges assume C = 0")


def _frame_momenta(params, exact):
    """``Pi``, ``Pi_hat = S O^T Pi`` and scalar data in the chosen arithmetic."""
    x1, x2, p1, p2 = coordinates(exact)
    if exact:
        b, c, g, lp, lm, omega, (cth, sth) = _exact_params(params)
        sq, half = sympy.sqrt, sympy.Rational(1, 2)
    else:
        b, c, g = params.b, params.c, params.gamma
        lp, lm, omega = params.lambda_plus, params.lambda_minus, params.omega
        cth, sth = np.cos(params.theta), np.sin(params.theta)
        sq, half = np.sqrt, 0.5
    pi1, pi2 = p1 + x2 * half, p2 - x1 * half
    ph1 = pi1 * (sq(lp) * cth) + pi2 * (sq(lp) * sth)
    ph2 = pi1 * (-sq(lm) * sth) + pi2 * (sq(lm) * cth)
    return (pi1, pi2), (ph1, ph2), dict(b=b, c=c, g=g, lp=lp, lm=lm, omega=omega, sq=sq, half=half)


def build_pauli_hamiltonian(params, exact=False, form="pi"):
    """Pauli Hamiltonian ``Pi^T M Pi + (|w|/2) sigma_z`` in Region I.

    ``form="pi"`` builds it from the original kinetic momenta,
    ``(B/2)(Pi_1^2 + Pi_2^2) + (gamma/2){Pi_1, Pi_2}`` plus the ``C`` term;
    ``form="frame"`` builds ``Pi_hat_1^2 + Pi_hat_2^2 + (|w|/2) sigma_z``.

    Raises
    ------
    RegionMismatchError
        Outside Region I.
    """
    _require(params)
    (pi1, pi2), (ph1, ph2), s = _frame_momenta(params, exact)
    half = s["half"]
    if form == "pi":
        kin = ((product(pi1, pi1) + product(pi2, pi2)) * (s["b"] * half)
               + anticommutator(pi1, pi2) * (s["g"] * half)
               + (product(pi1, pi1) - product(pi2, pi2)) * (s["c"] * half))
    elif form == "frame":
        kin = product(ph1, ph1) + product(ph2, ph2)
    else:
        raise ValueError("form must be 'pi' or 'frame'")
    zeeman = PhaseOperator.scalar(s["omega"] * half, exact)
    return SpinPhaseOperator({"I": kin, "z": zeeman}, exact)


def _half_angle(cos2, sin2, sq, half):
    """cos and sin of ``t`` from cos and sin of ``2t``, with ``cos t >= 0``."""
    cos_t = sq((1 + cos2) * half)
    sin_t = sq((1 - cos2) * half)
    if sin2 < 0:
        sin_t = -sin_t
    return cos_t, sin_t


@dataclass
class Supercharges:
    q1: SpinPhaseOperator
    q2: SpinPhaseOperator
    big_q1: SpinPhaseOperator
    big_q2: SpinPhaseOperator
    theta_tilde: float
    literal_q1: SpinPhaseOperator
    literal_q2: SpinPhaseOperator
    literal_theta_tilde: float
    q1_pi_expansion: SpinPhaseOperator
    exact: bool


def build_supercharges(params, exact=False):
    """Two pairs of supercharges for the Region-I Pauli Hamiltonian (C = 0).

    ``q1 = sx Pi_hat_1 - sy Pi_hat_2`` and ``q2 = sx Pi_hat_2 + sy Pi_hat_1``.
    The second pair is written in the original momenta,

        Q1 = sqrt(B/2)[(sx Pi_1 + sy Pi_2) cos t + (sx Pi_2 + sy Pi_1) sin t]
        Q2 = sqrt(B/2)[(sx Pi_1 - sy Pi_2) sin t + (sx Pi_2 - sy Pi_1) cos t]

    with ``sin 2t = gamma/B`` and ``cos 2t = -|w|/B``. The pair built with
    ``t = -arctan(gamma/|w|)/2`` is kept as ``literal_q1, literal_q2`` for
    comparison, together with the direct expansion of ``q1`` in ``Pi``.

    Raises
    ------
    RegionMismatchError
        Outside Region I or for C != 0.
    """
    _require(params, need_c_zero=True)
    (pi1, pi2), (ph1, ph2), s = _frame_momenta(params, exact)
    sq, half, b, g, omega = s["sq"], s["half"], s["b"], s["g"], s["omega"]

    def spin(x=None, y=None):
        terms = {}
        if x is not None:
            terms["x"] = x
        if y is not None:
            terms["y"] = y
        return SpinPhaseOperator(terms, exact)

    q1 = spin(ph1, -ph2)
    q2 = spin(ph2, ph1)

    def q_pair(cos_t, sin_t):
        pref = sq(b * half)
        big1 = spin((pi1 * cos_t + pi2 * sin_t) * pref, (pi2 * cos_t + pi1 * sin_t) * pref)
        big2 = spin((pi1 * sin_t + pi2 * cos_t) * pref, (-pi2 * sin_t - pi1 * cos_t) * pref)
        return big1, big2

    cos_t, sin_t = _half_angle(-omega / b, g / b, sq, half)
    big_q1, big_q2 = q_pair(cos_t, sin_t)
    norm = sq(omega**2 + g**2)
    lit_cos, lit_sin = _half_angle(omega / norm, -g / norm, sq, half)
    lit_q1, lit_q2 = q_pair(lit_cos, lit_sin)

    # q1 written out at theta = pi/4 with a minus sign on the sigma_y term
    expansion = spin((pi1 + pi2) * sq(s["lp"] * half), -(pi1 - pi2) * sq(s["lm"] * half))

    theta_tilde = 0.5 * float(np.arctan2(float(g), -float(omega)))
    literal = -0.5 * float(np.arctan(float(g) / float(omega)))
    return Supercharges(q1, q2, big_q1, big_q2, theta_tilde, lit_q1, lit_q2, literal, expansion, exact)


def susy_identities(params, exact=True):
    """Residuals of the supersymmetry algebra; ``name -> (residual, holds)``.

    Mixed ``{q_a, Q_b}`` and the literal-angle pair are reported with
    ``holds`` describing whether they equal the target, not asserted.
    """
    h = build_pauli_hamiltonian(params, exact)
    h_frame = build_pauli_hamiltonian(params, exact, form="frame")
    sc = build_supercharges(params, exact)
    two_h = h.scale(2)
    checks = {
        "H_S: Pi form = frame form": h - h_frame,
        "{q1,q1}=2H": sc.q1.anticommutator(sc.q1) - two_h,
        "{q2,q2}=2H": sc.q2.anticommutator(sc.q2) - two_h,
        "{q1,q2}=0": sc.q1.anticommutator(sc.q2),
        "{Q1,Q1}=2H": sc.big_q1.anticommutator(sc.big_q1) - two_h,
        "{Q2,Q2}=2H": sc.big_q2.anticommutator(sc.big_q2) - two_h,
        "{Q1,Q2}=0": sc.big_q1.anticommutator(sc.big_q2),
        "[H,q1]=0": h.commutator(sc.q1),
        "[H,q2]=0": h.commutator(sc.q2),
        "[H,Q1]=0": h.commutator(sc.big_q1),
        "[H,Q2]=0": h.commutator(sc.big_q2),
    }
    report = {
        "{q1,Q1}": sc.q1.anticommutator(sc.big_q1),
        "{q1,Q2}": sc.q1.anticommutator(sc.big_q2),
        "{q2,Q1}": sc.q2.anticommutator(sc.big_q1),
        "{q2,Q2}": sc.q2.anticommutator(sc.big_q2),
        "literal {Q1,Q1}=2H": sc.literal_q1.anticommutator(sc.literal_q1) - two_h,
        "literal {Q2,Q2}=2H": sc.literal_q2.anticommutator(sc.literal_q2) - two_h,
        "q1 = printed Pi expansion": sc.q1 - sc.q1_pi_expansion,
    }
    out = {}
    for name, op in {**checks, **report}.items():
        holds = bool(op.is_zero())
        out[name] = (0.0 if exact and holds else op.residual(), holds)
    return out


@dataclass(frozen=True)
class SusySpectrum:
    ground_energy: float
    up_levels: list
    down_levels: list
    pairing_residual: float
    omega: float
    n_max: int


def susy_spectrum_check(params, n_max=30, n_levels=3):
    """Diagonalise the Pauli Hamiltonian on Fock space times spin.

    The spin-down tower starts at zero and every spin-up level ``n`` pairs
    with spin-down level ``n + 1``; ``pairing_residual`` is the largest
    ``|E_up(n) - E_down(n+1)|`` over the first ``n_levels - 1`` pairs.
    """
    _require(params)
    if n_levels > n_max / 3:
        warnings.warn(f"{n_levels} levels requested; only n <= n_max/3 is trusted",
                      TruncationWarning, stacklevel=2)
    mat = build_pauli_hamiltonian(params).matrix(n_max)
    w = params.omega
    sectors = {}
    for name, idx in (("up", 0), ("down", 1)):
        block = mat[idx::2, idx::2]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TruncationWarning)
            sectors[name] = spectrum(FockOperator(n_max, block), n_levels + 1, w, min_multiplicity=2)
    up = [lv.energy for lv in sectors["up"]][:n_levels]
    down = [lv.energy for lv in sectors["down"]][:n_levels + 1]
    pairs = min(len(up), len(down) - 1)
    pairing = max((abs(up[n] - down[n + 1]) for n in range(pairs)), default=float("nan"))
    return SusySpectrum(float(down[0]), up, down, float(pairing), float(w), n_max)
