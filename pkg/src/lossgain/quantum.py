"""Quantum Landau problem with balanced loss and gain.

Operator identities are checked in the exact phase-space algebra of
:mod:`lossgain.phase_ops`; spectra come from a truncated two-mode Fock
basis. Units: hbar = 1.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import sympy

from .exceptions import GridTooCoarseError, NotHermitianError, RegionMismatchError, TruncationWarning
from .landau import derive_params, hall_frame_field
from .phase_ops import PhaseOperator, commutator, coordinates, product

__all__ = [
    "Ladder",
    "build_ladder",
    "ladder_identities",
    "FockOperator",
    "fock_matrix",
    "landau_hamiltonian",
    "Level",
    "spectrum",
    "inverted_oscillator_min",
    "GroundStateReport",
    "ground_state_eval",
    "HallQuantum",
    "hall_quantum",
]


def _require_region_one(params):
    if params.region != 1:
        raise RegionMismatchError(f"needs Region I, got Region {params.region_label}")


def _exact_params(params):
    """Sympy versions of the Landau parameters (rationalised inputs)."""
    b, c, g = (sympy.nsimplify(v, rational=True) for v in (params.b, params.c, params.gamma))
    delta = sympy.sqrt(c**2 + g**2)
    lp, lm = (b + delta) / 2, (b - delta) / 2
    omega = sympy.sqrt(sympy.Abs(b**2 - delta**2))
    # cos/sin of theta = arctan((Delta - C)/g) in radicals, theta in (-pi/2, pi/2)
    t = sympy.Integer(1) if g == 0 else (delta - c) / g
    cth = 1 / sympy.sqrt(1 + t**2)
    return b, c, g, lp, lm, omega, (cth, t * cth)


@dataclass(frozen=True)
class Ladder:
    """Operators of the Region-I Landau problem.

    ``pi_hat`` are ``S O^T Pi``; ``a`` lowers the Landau level, ``b`` moves
    within a level; ``h`` is ``|w| (a^dag a + 1/2)``; ``j_cal`` is
    ``b^dag b - a^dag a`` and ``j3`` the ordinary angular momentum.
    """

    a: PhaseOperator
    a_dag: PhaseOperator
    b: PhaseOperator
    b_dag: PhaseOperator
    h: PhaseOperator
    j_cal: PhaseOperator
    j3: PhaseOperator
    pi: tuple
    pi_hat: tuple
    xi: object
    omega: object
    exact: bool


def build_ladder(params, exact=False):
    """Ladder operators in the original coordinates.

    ``a = (Pi_hat_1 + i Pi_hat_2)/sqrt|w|`` and
    ``b = (K_hat_1 - i K_hat_2)/sqrt|w|`` where ``K = P - A X`` is the
    guiding-centre momentum and ``K_hat = S O^T K``.

    Raises
    ------
    RegionMismatchError
        Outside Region I.
    """
    _require_region_one(params)
    x1, x2, p1, p2 = coordinates(exact)
    if exact:
        _, _, _, lp, lm, omega, (cth, sth) = _exact_params(params)
        sq = sympy.sqrt
        unit = sympy.I
        half = sympy.Rational(1, 2)
    else:
        lp, lm, omega, theta = params.lambda_plus, params.lambda_minus, params.omega, params.theta
        sq = np.sqrt
        cth, sth = np.cos(theta), np.sin(theta)
        unit = 1j
        half = 0.5
    pi1, pi2 = p1 + x2 * half, p2 - x1 * half
    k1, k2 = p1 - x2 * half, p2 + x1 * half
    # S O^T with O = [[c, -s], [s, c]]
    t11, t12 = sq(lp) * cth, sq(lp) * sth
    t21, t22 = -sq(lm) * sth, sq(lm) * cth
    ph1, ph2 = pi1 * t11 + pi2 * t12, pi1 * t21 + pi2 * t22
    kh1, kh2 = k1 * t11 + k2 * t12, k1 * t21 + k2 * t22
    norm = 1 / sq(omega)
    a = (ph1 + ph2 * unit) * norm
    a_dag = (ph1 - ph2 * unit) * norm
    b = (kh1 - kh2 * unit) * norm
    b_dag = (kh1 + kh2 * unit) * norm
    h = (product(a_dag, a) + half) * omega
    j_cal = product(b_dag, b) - product(a_dag, a)
    j3 = product(x1, p2) - product(x2, p1)
    xi = sq(2 / omega) * (sq(lp) + unit * sq(lm))
    return Ladder(a, a_dag, b, b_dag, h, j_cal, j3, (pi1, pi2), (ph1, ph2), xi, omega, exact)


def _printed_ladder(params, ladder):
    """The ``xi``-forms of ``a, a^dag, b, b^dag`` valid for C = 0."""
    x1, x2, p1, p2 = coordinates(ladder.exact)
    xi = ladder.xi
    xs = sympy.conjugate(xi) if ladder.exact else np.conj(xi)
    half = sympy.Rational(1, 2) if ladder.exact else 0.5
    pi1, pi2 = p1 + x2 * half, p2 - x1 * half
    k1, k2 = p1 - x2 * half, p2 + x1 * half
    return {
        "a": (pi1 * xs + pi2 * xi) * half,
        "a_dag": (pi1 * xi + pi2 * xs) * half,
        "b": (k1 * xi + k2 * xs) * half,
        "b_dag": (k1 * xs + k2 * xi) * half,
    }


def ladder_identities(params, exact=True):
    """Residuals of the Region-I ladder algebra.

    Returns a dict ``name -> (residual, holds)``; in exact mode ``holds``
    means a zero remainder after simplification.
    """
    lad = build_ladder(params, exact)
    one = PhaseOperator.scalar(1, exact)
    x1, x2, p1, p2 = coordinates(exact)
    half = sympy.Rational(1, 2) if exact else 0.5
    unit = sympy.I if exact else 1j
    checks = {
        "[x1,p1]=i": commutator(x1, p1) - unit,
        "[Pi_hat1,Pi_hat2]=i|w|/2": commutator(*lad.pi_hat) - unit * lad.omega * half,
        "[a,a+]=1": commutator(lad.a, lad.a_dag) - one,
        "[b,b+]=1": commutator(lad.b, lad.b_dag) - one,
        "[a,b]=0": commutator(lad.a, lad.b),
        "[a,b+]=0": commutator(lad.a, lad.b_dag),
        "[a+,b]=0": commutator(lad.a_dag, lad.b),
        "[a+,b+]=0": commutator(lad.a_dag, lad.b_dag),
        "[H,b]=0": commutator(lad.h, lad.b),
        "[H,b+]=0": commutator(lad.h, lad.b_dag),
        "[H,J]=0": commutator(lad.h, lad.j_cal),
        "[J,b]=-b": commutator(lad.j_cal, lad.b) + lad.b,
        "[J,b+]=b+": commutator(lad.j_cal, lad.b_dag) - lad.b_dag,
        "[J,a]=a": commutator(lad.j_cal, lad.a) - lad.a,
        "[J,a+]=-a+": commutator(lad.j_cal, lad.a_dag) + lad.a_dag,
        "H=Pi_hat^T Pi_hat": lad.h - product(lad.pi_hat[0], lad.pi_hat[0]) - product(lad.pi_hat[1], lad.pi_hat[1]),
    }
    # H against Pi^T M Pi in the original coordinates
    big_m = params.big_m if not exact else None
    if exact:
        b, c, g, *_ = _exact_params(params)
        big_m = [[(b + c) / 2, g / 2], [g / 2, (b - c) / 2]]
    pi = lad.pi
    h_orig = sum((product(pi[i], pi[j]) * big_m[i][j] for i in range(2) for j in range(2)),
                 PhaseOperator.scalar(0, exact))
    checks["H=Pi^T M Pi"] = lad.h - h_orig
    if params.c == 0:
        printed = _printed_ladder(params, lad)
        for name in ("a", "a_dag", "b", "b_dag"):
            checks[f"{name} = xi-form"] = getattr(lad, name) - printed[name]
        xi = lad.xi
        xs = sympy.conjugate(xi) if exact else np.conj(xi)
        abs2 = xi * xs
        plain = product(x1, p1) - product(x2, p2)  # plain operator products
        weyl = PhaseOperator(0, None, product(x1, p1).quadratic - product(x2, p2).quadratic, exact)
        checks["x1p1-x2p2 ordering-free"] = plain - weyl
        rhs = lad.j3 * (abs2 * half) + plain * ((xi**2 + xs**2) / 4)
        checks["J = |xi|^2 J3/2 + (xi^2+xi*^2)(x1p1-x2p2)/4"] = lad.j_cal - rhs
    out = {}
    for name, op in checks.items():
        holds = bool(op.is_zero())
        # a proven exact zero reports 0 rather than its 30-digit rounding
        out[name] = (0.0 if exact and holds else op.residual(), holds)
    return out


# ---------------------------------------------------------------------------
# truncated Fock backend


@dataclass(frozen=True)
class FockOperator:
    n_max: int
    matrix: np.ndarray

    @property
    def dim(self):
        return self.matrix.shape[0]

    def is_hermitian(self, tol=1e-12):
        scale = max(1.0, float(np.max(np.abs(self.matrix))))
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T))) <= tol * scale


def _mode_matrices(n_max):
    c = np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), 1)
    x = (c + c.T) / np.sqrt(2)
    p = 1j * (c.T - c) / np.sqrt(2)
    eye = np.eye(n_max + 1)
    return (np.kron(x, eye), np.kron(eye, x), np.kron(p, eye), np.kron(eye, p))


def fock_matrix(op, n_max):
    """Matrix of a phase-space operator on the truncated two-mode basis.

    Quadratic symbols map to symmetrised products ``(Z_i Z_j + Z_j Z_i)/2``.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    op = op.numeric()
    zs = _mode_matrices(n_max)
    dim = (n_max + 1) ** 2
    mat = op.constant * np.eye(dim, dtype=complex)
    for i in range(4):
        if op.linear[i] != 0:
            mat = mat + op.linear[i] * zs[i]
    for i in range(4):
        for j in range(i, 4):
            q = op.quadratic[i, j]
            if q == 0:
                continue
            sym = zs[i] @ zs[j] + zs[j] @ zs[i]
            # Q_ij and Q_ji each contribute sym/2
            mat = mat + (q * sym if i != j else q * (sym / 2))
    return FockOperator(n_max, mat)


def landau_hamiltonian(params):
    """``Pi^T M Pi`` with ``Pi = P + (1/2) R X`` as a phase-space operator."""
    x1, x2, p1, p2 = coordinates()
    pi1, pi2 = p1 + 0.5 * x2, p2 - 0.5 * x1
    m = params.big_m
    return (product(pi1, pi1) * m[0, 0] + product(pi2, pi2) * m[1, 1]
            + (product(pi1, pi2) + product(pi2, pi1)) * m[0, 1])


@dataclass(frozen=True)
class Level:
    energy: float
    degeneracy: int


def _clusters(vals, tol):
    out = []
    start = 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[i] - vals[i - 1] > tol:
            out.append(Level(float(np.mean(vals[start:i])), i - start))
            start = i
    return out


def spectrum(h, k, scale=1.0, degeneracy_tol=1e-6, min_multiplicity=1, merge_window=1e-3):
    """Lowest ``k`` distinct levels of a Hermitian Fock operator.

    Eigenvalues closer than ``degeneracy_tol * scale`` form one level.
    Levels with fewer than ``min_multiplicity`` states are dropped (use 2 to
    discard isolated truncation artefacts of Landau problems), and among
    levels within ``merge_window * scale`` of each other only the most
    degenerate is kept.

    Raises
    ------
    NotHermitianError
    """
    if not h.is_hermitian():
        raise NotHermitianError("operator matrix is not Hermitian")
    if k > h.n_max / 3:
        warnings.warn(
            f"{k} levels requested; only n <= n_max/3 = {h.n_max / 3:.1f} is trusted",
            TruncationWarning,
            stacklevel=2,
        )
    vals = np.linalg.eigvalsh(0.5 * (h.matrix + h.matrix.conj().T))
    levels = [lv for lv in _clusters(vals, degeneracy_tol * scale) if lv.degeneracy >= min_multiplicity]
    kept = []
    for lv in levels:
        if kept and lv.energy - kept[-1].energy <= merge_window * scale:
            if lv.degeneracy > kept[-1].degeneracy:
                kept[-1] = lv
            continue
        kept.append(lv)
    return kept[:k]


def inverted_oscillator_min(omega, k2, n_max):
    """Lowest eigenvalue of ``P^2 - (|w|^2/4)(X - 2 k2/|w|)^2`` on ``n_max + 1`` oscillator states.

    Decreases without bound as ``n_max`` grows: no bound states.
    """
    c = np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), 1)
    x = (c + c.T) / np.sqrt(2)
    p = 1j * (c.T - c) / np.sqrt(2)
    shift = x - (2 * k2 / omega) * np.eye(n_max + 1)
    h = p @ p - (omega**2 / 4) * shift @ shift
    return float(np.linalg.eigvalsh(0.5 * (h + h.conj().T))[0])


# ---------------------------------------------------------------------------
# ground states on a grid


@dataclass(frozen=True)
class GroundStateReport:
    m: int
    residual: float
    residual_coarse: float
    printed_residual: float
    axis_ratio: float
    predicted_axis_ratio: float
    grid: int
    half_width: float
    density: np.ndarray


def _d1(f, h, axis):
    """Fourth-order central first derivative (interior; edges left at zero)."""
    out = np.zeros_like(f)
    sl = [slice(None)] * f.ndim

    def s(a, b):
        idx = list(sl)
        idx[axis] = slice(a, f.shape[axis] + b if b <= 0 else b)
        return f[tuple(idx)]

    core = list(sl)
    core[axis] = slice(2, -2)
    out[tuple(core)] = (s(0, -4) - 8 * s(1, -3) + 8 * s(3, -1) - s(4, 0)) / (12 * h)
    return out


def _wavefunction(xi, m, x1, x2, width=1.0):
    w = xi * x1 - np.conj(xi) * x2
    return w**m * np.exp(-width * np.abs(w) ** 2 / 8)


def _annihilation_residual(xi, m, n, half_width, width=1.0):
    axis = np.linspace(-half_width, half_width, n)
    h = axis[1] - axis[0]
    x1, x2 = np.meshgrid(axis, axis, indexing="ij")
    phi = _wavefunction(xi, m, x1, x2, width)
    d1 = _d1(phi, h, 0)
    d2 = _d1(phi, h, 1)
    xs = np.conj(xi)
    # a = (1/2)[xi* (p1 + x2/2) + xi (p2 - x1/2)], p = -i d
    a_phi = 0.5 * (xs * (-1j * d1 + 0.5 * x2 * phi) + xi * (-1j * d2 - 0.5 * x1 * phi))
    inner = (slice(2, -2), slice(2, -2))
    res = np.linalg.norm(a_phi[inner]) / np.linalg.norm(phi[inner])
    return float(res), phi, axis


def _bilinear(img, axis, px, py):
    h = axis[1] - axis[0]
    fx = (px - axis[0]) / h
    fy = (py - axis[0]) / h
    i = np.clip(np.floor(fx).astype(int), 0, len(axis) - 2)
    j = np.clip(np.floor(fy).astype(int), 0, len(axis) - 2)
    tx, ty = fx - i, fy - j
    return ((1 - tx) * (1 - ty) * img[i, j] + tx * (1 - ty) * img[i + 1, j]
            + (1 - tx) * ty * img[i, j + 1] + tx * ty * img[i + 1, j + 1])


def _locus_axis_ratio(density, axis, m, n_rays=180):
    """Axis ratio of the ellipse through the density ridge (half-max contour for m = 0)."""
    top = density.max()
    r_max = axis[-1] * 0.98
    radii = np.linspace(0, r_max, 4000)
    pts = []
    for ang in np.linspace(0, np.pi, n_rays, endpoint=False):
        cx, cy = np.cos(ang), np.sin(ang)
        prof = _bilinear(density, axis, radii * cx, radii * cy)
        if m == 0:
            k = int(np.argmax(prof < 0.5 * top))
            r0, r1 = radii[k - 1], radii[k]
            f0, f1 = prof[k - 1] - 0.5 * top, prof[k] - 0.5 * top
            r = r0 - f0 * (r1 - r0) / (f1 - f0)
        else:
            k = int(np.argmax(prof))
            k = min(max(k, 1), len(radii) - 2)
            y0, y1, y2 = prof[k - 1], prof[k], prof[k + 1]
            denom = y0 - 2 * y1 + y2
            r = radii[k] + (0.5 * (y0 - y2) / denom if denom != 0 else 0.0) * (radii[1] - radii[0])
        pts.append((r * cx, r * cy))
    pts = np.array(pts)
    # x^T G x = 1 with G = [[g11, g12], [g12, g22]]
    design = np.column_stack([pts[:, 0] ** 2, 2 * pts[:, 0] * pts[:, 1], pts[:, 1] ** 2])
    g11, g12, g22 = np.linalg.lstsq(design, np.ones(len(pts)), rcond=None)[0]
    ev = np.linalg.eigvalsh(np.array([[g11, g12], [g12, g22]]))
    return float(np.sqrt(ev[0] / ev[1]))


def ground_state_eval(params, m=0, grid=512, half_width=None, tol=1e-3):
    """Check ``a phi = 0`` for ``phi = w^m exp(-|w|^2/8)``, ``w = xi x1 - xi* x2``.

    The annihilation operator is applied with fourth-order central
    differences on a ``grid x grid`` lattice. ``half_width`` defaults to six
    oscillator lengths of the state along its wide axis.

    Raises
    ------
    GridTooCoarseError
        When the residual exceeds ``tol`` and still drops under refinement
        (discretisation-dominated).
    """
    _require_region_one(params)
    if params.c != 0:
        raise RegionMismatchError("ground-state form assumes C = 0")
    xi = params.xi
    kappa_min = abs(xi) ** 2 - abs((xi**2).real)
    if half_width is None:
        half_width = 6.0 * 2.0 / np.sqrt(kappa_min)
    res, phi, axis = _annihilation_residual(xi, m, grid, half_width)
    res_coarse, _, _ = _annihilation_residual(xi, m, grid // 2, half_width)
    if res > tol and res_coarse > 4 * res:
        raise GridTooCoarseError(
            f"residual {res:.3e} on {grid}^2 grid is discretisation-dominated (coarse {res_coarse:.3e})"
        )
    printed_res, _, _ = _annihilation_residual(xi, m, grid, half_width, width=params.omega)
    density = np.abs(phi) ** 2
    ratio = _locus_axis_ratio(density, axis, m)
    predicted = float(np.sqrt(abs(params.lambda_minus) / abs(params.lambda_plus)))
    return GroundStateReport(m, res, res_coarse, printed_res, ratio, predicted, grid, float(half_width), density)


# ---------------------------------------------------------------------------
# quantum Hall


@dataclass(frozen=True)
class HallQuantum:
    field: np.ndarray  # effective field in the canonical frame
    field_norm: float
    k2: float
    energies: np.ndarray
    oracle_energies: np.ndarray
    center_shift: float
    mean_current_frame: float  # <J_2> in the rotated frame
    current_x: np.ndarray  # mean velocity mapped back to (x1, x2)


def _shifted_oscillator_levels(omega, field_norm, k2, n_levels, basis=160):
    """Independent oracle: ``P^2 + (k2 - |w| X/2)^2 - |E| X/2`` in an oscillator basis."""
    c = np.diag(np.sqrt(np.arange(1, basis, dtype=float)), 1)
    length = np.sqrt(2.0 / omega)
    x = length * (c + c.T) / np.sqrt(2)
    p = 1j * (c.T - c) / (np.sqrt(2) * length)
    eye = np.eye(basis)
    kin = k2 * eye - 0.5 * omega * x
    h = p @ p + kin @ kin - 0.5 * field_norm * x
    return np.linalg.eigvalsh(0.5 * (h + h.conj().T))[:n_levels]


def hall_quantum(params, e_field, k2, n_levels=6):
    """Landau levels tilted by a uniform field.

    ``E_{n,k2} = (n + 1/2)|w| - (|E_c|^2 + 4 k2 |w| |E_c|) / (4 |w|^2)`` with
    ``E_c`` the effective field in the canonical frame.
    """
    _require_region_one(params)
    if params.c != 0:
        raise RegionMismatchError("Hall analysis assumes C = 0")
    w = params.omega
    field = hall_frame_field(params, e_field)
    fn = float(np.hypot(*field))
    n = np.arange(n_levels)
    energies = (n + 0.5) * w - (fn**2 + 4 * k2 * w * fn) / (4 * w**2)
    oracle = _shifted_oscillator_levels(w, fn, k2, n_levels)
    rot = np.array([[0.0, 1.0], [-1.0, 0.0]])
    v_frame = rot @ field / w
    current_x = params.o_mat @ params.s_mat @ v_frame
    return HallQuantum(field, fn, float(k2), energies, oracle, 2 * k2 / w + fn / w**2, -fn / w, current_x)
