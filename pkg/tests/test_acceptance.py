"""Acceptance criteria 1-11; each prints one PASS/FAIL line."""

import time
import warnings

import numpy as np
import pytest

from lossgain.frame import CanonicalFrame
from lossgain.landau import closed_form, constants_of_motion, derive_params, fit_constants
from lossgain.quantum import fock_matrix, ground_state_eval, hall_quantum, ladder_identities, landau_hamiltonian, spectrum
from lossgain.representations import (build_appendix_rep1, build_appendix_rep2, build_beta_modified, build_landau,
                                      build_pairwise)
from lossgain.exceptions import SingularMatrixError, TruncationWarning
from lossgain.susy import susy_identities, susy_spectrum_check
from lossgain.system import derive_matrices, integrate
from lossgain.verify import hall_mean_velocity

pytestmark = pytest.mark.acceptance


@pytest.fixture
def report(capsys):
    def _report(n, passed, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if passed else 'FAIL'} {detail}")
        assert passed, detail

    return _report


def _mx(a):
    return float(np.max(np.abs(a)))


def test_criterion_01_structural(report):
    start = time.perf_counter()
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(100):
        bundle = build_pairwise(int(rng.integers(1, 5)), float(rng.uniform(-3, 3)))
        big_m = bundle.spec.big_m
        r = bundle.spec.a_mat - bundle.spec.a_mat.T  # F = X
        d = big_m @ r
        np.testing.assert_allclose(derive_matrices(bundle.spec).r_mat, r, atol=1e-14)
        for x, y in ((big_m, r), (big_m, d), (r, d)):
            worst = max(worst, _mx(x @ y + y @ x))
    specs = [build_pairwise(3, 0.7).spec, build_pairwise(2, 0.7, alpha=1.3).spec,
             build_beta_modified(2, 0.7, 1.1, 0.8, 0.4).spec, build_appendix_rep1(5, 2.0, 0.6).spec,
             build_appendix_rep2(5, 2.0, 0.3).spec, build_landau(2.0, 0.5, 1.0).spec]
    trace = max(abs(np.trace(s.big_m @ derive_matrices(s).r_mat)) for s in specs)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-10 and trace <= 1e-10 and elapsed < 1.0
    report(1, ok, f"anticommutator={worst:.2e} trace={trace:.2e} tol=1e-10 time={elapsed:.2f}s")


def test_criterion_02_eigenvalues(report):
    start = time.perf_counter()
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 17))
        p, q = rng.uniform(-3, 3, size=2)
        k = np.arange(1, n + 1)
        pairs = (
            ((p * np.eye(n) + q * (np.eye(n, k=1) + np.eye(n, k=-1))), p + 2 * q * np.cos(k * np.pi / (n + 1))),
            ((p - q) * np.eye(n) + q * np.ones((n, n)), np.r_[np.full(n - 1, p - q), p + (n - 1) * q]),
        )
        for mat, analytic in pairs:
            scale = max(1.0, _mx(analytic))
            worst = max(worst, _mx(np.sort(np.linalg.eigvalsh(mat)) - np.sort(analytic)) / scale)
        while True:
            b, c, g = rng.uniform(-3, 3, size=3)
            try:
                big_m = build_landau(b, c, g).spec.big_m
                break
            except SingularMatrixError:
                continue
        delta = np.hypot(c, g)
        worst = max(worst, _mx(np.sort(np.linalg.eigvalsh(big_m)) - np.sort([(b + delta) / 2, (b - delta) / 2])))
    elapsed = time.perf_counter() - start
    report(2, worst <= 1e-10 and elapsed < 1.0, f"max error={worst:.2e} tol=1e-10 time={elapsed:.2f}s")


def test_criterion_03_frame(report):
    specs = [build_landau(2.0, 0.5, 1.0).spec, build_landau(0.0, 0.5, 1.0).spec, build_landau(-2.0, 0.5, 1.0).spec,
             build_appendix_rep1(4, 1.0, 1.0).spec, build_appendix_rep2(4, 1.0, 0.5).spec]
    worst = 0.0
    for spec in specs:
        fr = CanonicalFrame().fit(spec)
        s_inv = np.linalg.inv(fr.s_mat_)
        metric = s_inv @ fr.o_mat_.T @ spec.big_m @ fr.o_mat_ @ s_inv - fr.eta_
        r_cal = fr.s_mat_ @ fr.o_mat_.T @ derive_matrices(spec).r_mat @ fr.o_mat_ @ fr.s_mat_
        worst = max(worst, _mx(metric), _mx(np.diag(fr.eta_ @ r_cal)))
    report(3, worst <= 1e-10, f"max residual={worst:.2e} tol=1e-10")


def _orbit(b, gamma, t_end):
    p = derive_params(b, 0.0, gamma)
    x0, v0 = (0.3, -0.2), (0.5, 0.4)
    traj = integrate(p.spec(), x0, v0, t_end, 1e-3)
    x, _ = closed_form(p, fit_constants(p, x0, v0), traj.times)
    return p, traj, _mx(traj.positions - x) / _mx(x)


def test_criterion_04_closed_form(report):
    start = time.perf_counter()
    err = {label: _orbit(b, 1.0, t)[2] for label, b, t in (("I", 2.0, 10.0), ("III", -2.0, 10.0), ("II", 0.0, 5.0))}
    elapsed = time.perf_counter() - start
    ok = err["I"] <= 1e-6 and err["III"] <= 1e-6 and err["II"] <= 1e-5 and elapsed < 10.0
    report(4, ok, f"I={err['I']:.2e} III={err['III']:.2e} (tol 1e-6) II={err['II']:.2e} (tol 1e-5) time={elapsed:.2f}s")


def test_criterion_05_conservation(report):
    worst = 0.0
    for b in (2.0, -2.0):
        p, traj, _ = _orbit(b, 1.0, 10.0)
        m_inv = np.linalg.inv(p.big_m)
        energy = 0.25 * np.einsum("ti,ij,tj->t", traj.velocities, m_inv, traj.velocities)
        cv = constants_of_motion(p, traj.positions, traj.velocities).c_vec
        worst = max(worst, _mx(energy - energy[0]) / abs(energy[0]), _mx(cv - cv[0]) / _mx(cv[0]))
    report(5, worst <= 1e-8, f"max relative drift={worst:.2e} tol=1e-8")


def test_criterion_06_hall(report):
    mean = hall_mean_velocity(2.0, 1.0, 1.0)
    err_v = _mx(mean - np.array([-1 / 3, -2 / 3]))
    # the drift makes the Hall angle with -E
    err_angle = abs(np.arctan2(-mean[1], -mean[0]) - np.arctan(2.0))
    small = hall_mean_velocity(2.0, 1e-3, 1.0)
    err_small = _mx(small - np.array([0.0, -0.5]))
    ok = err_v <= 1e-4 and err_angle <= 1e-6 and err_small <= 1e-3
    report(6, ok, f"velocity={err_v:.2e} (tol 1e-4) angle={err_angle:.2e} (tol 1e-6) "
                  f"gamma->0={err_small:.2e} (tol 1e-3)")


def _fock_levels(gamma, n_max):
    p = derive_params(2.0, 0.0, gamma)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        return spectrum(fock_matrix(landau_hamiltonian(p), n_max), 3, p.omega, min_multiplicity=2)


def test_criterion_07_spectrum(report):
    start = time.perf_counter()
    levels = _fock_levels(1.0, 30)
    elapsed = time.perf_counter() - start
    got = np.array([lv.energy for lv in levels])
    err = _mx(got / (np.sqrt(3) * np.array([0.5, 1.5, 2.5])) - 1) if len(got) == 3 else np.inf
    smaller = _fock_levels(1.0, 20)
    grows = all(a.degeneracy >= b.degeneracy for a, b in zip(levels, smaller)) and \
        levels[0].degeneracy > smaller[0].degeneracy
    by_gamma = np.array([[lv.degeneracy for lv in _fock_levels(g, 30)] for g in (0.0, 0.5, 1.0, 1.5)])
    monotone = bool(np.all(np.diff(by_gamma, axis=0) <= 0))
    ok = err <= 1e-5 and grows and monotone and elapsed < 60.0
    report(7, ok, f"relative error={err:.2e} tol=1e-5 degeneracy={[lv.degeneracy for lv in levels]} "
                  f"grows with n_max={grows} non-increasing in gamma={monotone} time={elapsed:.2f}s")


def test_criterion_08_operators(report):
    res = ladder_identities(derive_params(2.0, 0.0, 1.0), exact=True)
    failed = [k for k, (_, holds) in res.items() if not holds]
    report(8, not failed, f"{len(res)} identities, exact failures={failed}")


def test_criterion_09_susy(report):
    p = derive_params(2.0, 0.0, 1.0)
    res = susy_identities(p, exact=True)
    algebra = [k for k in res if k[:3] in ("{q1", "{q2", "{Q1", "{Q2") and k.endswith(("2H", "=0"))]
    failed = [k for k in algebra if not res[k][1]]
    sp = susy_spectrum_check(p, 30)
    ok = len(algebra) == 6 and not failed and abs(sp.ground_energy) <= 1e-6 and sp.pairing_residual <= 1e-6 * sp.omega
    report(9, ok, f"exact failures={failed} ground={sp.ground_energy:.2e} pairing/|w|="
                  f"{sp.pairing_residual / sp.omega:.2e} tol=1e-6")


def test_criterion_10_ground_state(report):
    p = derive_params(2.0, 0.0, 1.0)
    predicted = abs(p.xi.imag / p.xi.real)
    worst_res, worst_ratio = 0.0, 0.0
    for m in (0, 1, 2):
        rep = ground_state_eval(p, m, grid=512)
        worst_res = max(worst_res, rep.residual)
        worst_ratio = max(worst_ratio, abs(rep.axis_ratio - predicted))
    ok = worst_res <= 1e-3 and worst_ratio <= 1e-2
    report(10, ok, f"residual={worst_res:.2e} (tol 1e-3) axis ratio error={worst_ratio:.2e} (tol 1e-2)")


def _fd_levels(omega, field_norm, k2, n_levels, half_width=14.0, n=3001):
    """Five-point finite differences for ``-d^2/dX^2 + (k2 - |w|X/2)^2 - |E|X/2``."""
    x, h = np.linspace(-half_width, half_width, n, retstep=True)
    x = x + 2 * k2 / omega + field_norm / omega**2  # centre on the shifted well
    lap = (np.diag(np.full(n, -30.0)) + 16 * (np.eye(n, k=1) + np.eye(n, k=-1))
           - (np.eye(n, k=2) + np.eye(n, k=-2))) / (12 * h**2)
    pot = (k2 - omega * x / 2) ** 2 - field_norm * x / 2
    return np.linalg.eigvalsh(-lap + np.diag(pot))[:n_levels]


def test_criterion_11_quantum_hall(report):
    p = derive_params(2.0, 0.0, 1.0)
    worst = 0.0
    for k2 in (-1.0, 0.0, 1.0):
        h = hall_quantum(p, 1.0, k2)
        oracle = _fd_levels(p.omega, h.field_norm, k2, 6)
        worst = max(worst, _mx((h.energies - oracle) / oracle))
    report(11, worst <= 1e-5, f"max relative error={worst:.2e} tol=1e-5")
