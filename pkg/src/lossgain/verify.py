"""Invariant suite run by ``lossgain verify``.

Every check returns a :class:`Check` carrying its residual and tolerance;
:func:`run_suite` collects them into a JSON-ready manifest.
"""

import warnings
from dataclasses import asdict, dataclass

import numpy as np

from .exceptions import SingularMatrixError
from .frame import CanonicalFrame
from .landau import (closed_form, constants_of_motion, derive_params, fit_constants, hall_drift, hall_potential)
from .linalg import anticommutator, eig_sym, max_norm
from .quantum import (fock_matrix, ground_state_eval, hall_quantum, ladder_identities, landau_hamiltonian, spectrum)
from .representations import (build_appendix_rep1, build_appendix_rep2, build_beta_modified, build_landau,
                              build_pairwise)
from .susy import susy_identities, susy_spectrum_check
from .system import derive_matrices, hamiltonian_value, integrate

__all__ = ["Check", "DEFAULTS", "run_suite", "CHECKS"]

DEFAULTS = {
    "b": 2.0,
    "c": 0.0,
    "gamma": 1.0,
    "e_field": 1.0,
    "n_max": 30,
    "draws": 100,
    "seed": 0,
    "exact": True,
    "grid": 512,
}


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float
    passed: bool

    def as_dict(self):
        return asdict(self)


def _check(name, residual, tol):
    residual = float(residual)
    return Check(name, residual, float(tol), bool(residual <= tol))


def _rel(a, b):
    return max_norm(np.asarray(a) - np.asarray(b)) / max(max_norm(np.asarray(b)), 1e-300)


def structural(cfg):
    rng = np.random.default_rng(cfg["seed"])
    worst = 0.0
    for _ in range(cfg["draws"]):
        m = int(rng.integers(1, 5))
        gamma = float(rng.uniform(-3, 3))
        spec = build_pairwise(m, gamma).spec
        d = derive_matrices(spec)
        big_m, r, dm = spec.big_m, d.r_mat, d.d_mat
        for x, y in ((big_m, r), (big_m, dm), (r, dm)):
            worst = max(worst, max_norm(anticommutator(x, y)))
    traces = [
        derive_matrices(bundle.spec).trace
        for bundle in (
            build_pairwise(3, 0.7),
            build_pairwise(2, 0.7, alpha=1.3),
            build_beta_modified(2, 0.7, 1.1, 0.8, 0.4),
            build_appendix_rep1(5, 2.0, 0.6),
            build_appendix_rep2(5, 2.0, 0.3),
            build_landau(cfg["b"], cfg["c"], cfg["gamma"]),
        )
    ]
    return [_check("pairwise anticommutators", worst, 1e-10),
            _check("trace(MR) over representations", max(abs(t) for t in traces), 1e-10)]


def eigenvalues(cfg):
    rng = np.random.default_rng(cfg["seed"] + 1)
    worst = {"appendix1": 0.0, "appendix2": 0.0, "landau": 0.0}
    for _ in range(cfg["draws"]):
        n = int(rng.integers(2, 17))
        while True:
            p, q = rng.uniform(-3, 3, size=2)
            try:
                bundles = (build_appendix_rep1(n, p, q), build_appendix_rep2(n, p, q))
                break
            except SingularMatrixError:  # redraw off the boundary
                continue
        for bundle in bundles:
            vals, _ = eig_sym(bundle.spec.big_m)
            scale = max(1.0, float(np.max(np.abs(vals))))
            worst[bundle.label] = max(worst[bundle.label],
                                      float(np.max(np.abs(vals - bundle.analytic_eigenvalues))) / scale)
        while True:
            b, c, g = rng.uniform(-3, 3, size=3)
            try:
                bundle = build_landau(b, c, g)
                break
            except SingularMatrixError:
                continue
        vals, _ = eig_sym(bundle.spec.big_m)
        worst["landau"] = max(worst["landau"], float(np.max(np.abs(vals - bundle.analytic_eigenvalues))))
    return [_check(f"eigenvalues {k}", v, 1e-10) for k, v in worst.items()]


def frame_identities(cfg):
    b, g = abs(cfg["b"]), cfg["gamma"]
    cases = {
        "landau I": build_landau(b, cfg["c"], g).spec,
        "landau II": build_landau(0.0, cfg["c"], g if g else 1.0).spec,
        "landau III": build_landau(-b, cfg["c"], g).spec,
        "appendix1": build_appendix_rep1(4, 1.0, 1.0).spec,
        "appendix2": build_appendix_rep2(4, 1.0, 0.5).spec,
    }
    out = []
    for name, spec in cases.items():
        fr = CanonicalFrame().fit(spec)
        res = max(fr.metric_residual(), fr.hidden_loss_residual(), fr.similarity_residual())
        out.append(_check(f"frame {name}", res, 1e-10))
    return out


def _orbit_error(b, c, g, t_end, x0=(0.3, -0.2), v0=(0.5, 0.4)):
    p = derive_params(b, c, g)
    traj = integrate(p.spec(), x0, v0, t_end, 1e-3)
    const = fit_constants(p, x0, v0)
    x, _ = closed_form(p, const, traj.times)
    return _rel(traj.positions, x), p, traj


def classical(cfg):
    b, c, g = abs(cfg["b"]), cfg["c"], cfg["gamma"]
    out = []
    for label, bb, t_end, tol in (("I", b, 10.0, 1e-6), ("III", -b, 10.0, 1e-6), ("II", 0.0, 5.0, 1e-5)):
        gg = g if label != "II" or g else 1.0
        err, p, traj = _orbit_error(bb, c, gg, t_end)
        out.append(_check(f"closed form region {label}", err, tol))
        if label == "II":
            continue
        spec = p.spec()
        energy = hamiltonian_value(spec, traj.positions, traj.velocities)
        drift_e = float(np.max(np.abs(energy - energy[0]))) / max(abs(energy[0]), 1e-300)
        cv = constants_of_motion(p, traj.positions, traj.velocities).c_vec
        drift_c = float(np.max(np.abs(cv - cv[0]))) / max(float(np.max(np.abs(cv[0]))), 1e-300)
        out.append(_check(f"energy drift region {label}", drift_e, 1e-8))
        out.append(_check(f"cyclotron centre drift region {label}", drift_c, 1e-8))
    return out


def hall_mean_velocity(b, gamma, e_field, t_target=200.0, dt=1e-3):
    """Mean velocity over a whole number of cyclotron periods near ``t_target``."""
    p = derive_params(b, 0.0, gamma)
    periods = max(1, int(round(t_target / p.period)))
    t_end = periods * p.period
    spec = p.spec(hall_potential(b, gamma, e_field))
    traj = integrate(spec, (0.0, 0.0), (0.0, 0.0), t_end, dt)
    return (traj.positions[-1] - traj.positions[0]) / t_end


def hall(cfg):
    b, g, e = abs(cfg["b"]), cfg["gamma"], cfg["e_field"]
    drift, angle = hall_drift(b, g, e)
    mean = hall_mean_velocity(b, g, e)
    out = [_check("hall mean velocity", max_norm(mean - drift), 1e-4)]
    # the drift direction is set by the Hall angle
    out.append(_check("hall angle", abs(np.arctan2(drift[1], drift[0]) - (angle - np.pi)), 1e-6))
    small, _ = hall_drift(b, 1e-3, e)
    out.append(_check("hall gamma -> 0 transverse drift", max_norm(small - np.array([0.0, -e / b])), 1e-3))
    return out


def quantum_spectrum(cfg):
    b, g, n_max = abs(cfg["b"]), cfg["gamma"], cfg["n_max"]
    p = derive_params(b, 0.0, g)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        levels = spectrum(fock_matrix(landau_hamiltonian(p), n_max), 3, p.omega, min_multiplicity=2)
    target = (np.arange(3) + 0.5) * p.omega
    got = np.array([lv.energy for lv in levels])
    err = float(np.max(np.abs(got - target) / target)) if len(got) == 3 else np.inf
    return [_check("fock landau levels", err, 1e-5)]


def operator_identities(cfg):
    p = derive_params(abs(cfg["b"]), cfg["c"], cfg["gamma"])
    res = ladder_identities(p, exact=cfg["exact"])
    failed = [k for k, (_, holds) in res.items() if not holds]
    worst = max(r for r, _ in res.values())
    return [Check("ladder algebra", worst, 0.0 if cfg["exact"] else 1e-10, not failed)]


def supersymmetry(cfg):
    p = derive_params(abs(cfg["b"]), 0.0, cfg["gamma"])
    res = susy_identities(p, exact=cfg["exact"])
    asserted = {k: v for k, v in res.items() if k.startswith(("{q1,q", "{q2,q", "{Q1,Q", "{Q2,Q", "[H", "H_S"))}
    failed = [k for k, (_, holds) in asserted.items() if not holds]
    worst = max(r for r, _ in asserted.values())
    sp = susy_spectrum_check(p, cfg["n_max"])
    return [Check("susy algebra", worst, 0.0 if cfg["exact"] else 1e-10, not failed),
            _check("susy zero-energy ground", abs(sp.ground_energy), 1e-6),
            _check("susy cross-spin pairing", sp.pairing_residual / sp.omega, 1e-6)]


def ground_state(cfg):
    p = derive_params(abs(cfg["b"]), 0.0, cfg["gamma"])
    out = []
    for m in (0, 1, 2):
        rep = ground_state_eval(p, m, grid=cfg["grid"])
        out.append(_check(f"ground state m={m} annihilation", rep.residual, 1e-3))
        out.append(_check(f"ground state m={m} axis ratio", abs(rep.axis_ratio - rep.predicted_axis_ratio), 1e-2))
    return out


def quantum_hall(cfg):
    p = derive_params(abs(cfg["b"]), 0.0, cfg["gamma"])
    worst = 0.0
    for k2 in (-1.0, 0.0, 1.0):
        h = hall_quantum(p, cfg["e_field"], k2)
        worst = max(worst, float(np.max(np.abs(h.energies - h.oracle_energies) / np.abs(h.oracle_energies))))
    return [_check("quantum hall levels", worst, 1e-5)]


CHECKS = {
    "structural": structural,
    "eigenvalues": eigenvalues,
    "frame": frame_identities,
    "classical": classical,
    "hall": hall,
    "spectrum": quantum_spectrum,
    "operators": operator_identities,
    "susy": supersymmetry,
    "ground_state": ground_state,
    "quantum_hall": quantum_hall,
}


def run_suite(config=None, only=None):
    """Run the checks and return ``{"passed": bool, "checks": [...]}``."""
    cfg = dict(DEFAULTS)
    cfg.update(config or {})
    rows = []
    for group, func in CHECKS.items():
        if only and group not in only:
            continue
        rows.extend(dict(c.as_dict(), group=group) for c in func(cfg))
    return {"passed": all(r["passed"] for r in rows), "checks": rows}
