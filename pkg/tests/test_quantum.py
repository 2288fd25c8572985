import warnings

import numpy as np
import pytest

from lossgain.exceptions import GridTooCoarseError, NotHermitianError, RegionMismatchError, TruncationWarning
from lossgain.landau import derive_params, hall_drift
from lossgain.quantum import (FockOperator, build_ladder, fock_matrix, ground_state_eval, hall_quantum,
                              inverted_oscillator_min, ladder_identities, landau_hamiltonian, spectrum)


def _levels(b, gamma, n_max=30, k=3):
    p = derive_params(b, 0.0, gamma)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        return p, spectrum(fock_matrix(landau_hamiltonian(p), n_max), k, p.omega, min_multiplicity=2)


class TestLadder:
    def test_exact_region_one(self):
        res = ladder_identities(derive_params(2.0, 0.0, 1.0), exact=True)
        assert all(holds for _, holds in res.values()), [k for k, (_, h) in res.items() if not h]
        assert max(r for r, _ in res.values()) == 0.0

    @pytest.mark.parametrize("c", [0.0, 0.5, -0.3])
    def test_float(self, c):
        res = ladder_identities(derive_params(2.0, c, 1.0), exact=False)
        assert max(r for r, _ in res.values()) < 1e-10

    @pytest.mark.slow
    def test_exact_general_c(self):
        res = ladder_identities(derive_params(2.0, 0.5, 1.0), exact=True)
        assert all(holds for _, holds in res.values())

    def test_requires_region_one(self):
        with pytest.raises(RegionMismatchError):
            build_ladder(derive_params(0.0, 0.0, 1.0))


class TestFockSpectrum:
    # near the Region I boundary |w| shrinks and truncation error grows
    @pytest.mark.parametrize("gamma, rtol", [(0.0, 1e-5), (0.5, 1e-5), (1.0, 1e-5), (1.5, 1e-4)])
    def test_landau_levels(self, gamma, rtol):
        p, levels = _levels(2.0, gamma)
        got = np.array([lv.energy for lv in levels])
        np.testing.assert_allclose(got, (np.arange(3) + 0.5) * p.omega, rtol=rtol)

    def test_gamma_zero_spacing_is_b(self):
        _, levels = _levels(2.0, 0.0)
        assert levels[1].energy - levels[0].energy == pytest.approx(2.0, rel=1e-5)

    def test_degeneracy_shrinks_with_gamma(self):
        ground = [_levels(2.0, g)[1][0].degeneracy for g in (0.0, 0.5, 1.0, 1.5)]
        assert ground == sorted(ground, reverse=True)
        assert ground[0] > ground[-1]

    def test_degeneracy_grows_with_truncation(self):
        small = _levels(2.0, 1.0, n_max=20)[1][0].degeneracy
        large = _levels(2.0, 1.0, n_max=40)[1][0].degeneracy
        assert large > small

    def test_truncation_warning(self):
        p = derive_params(2.0, 0.0, 1.0)
        with pytest.warns(TruncationWarning):
            spectrum(fock_matrix(landau_hamiltonian(p), 6), 3, p.omega)

    def test_not_hermitian(self):
        with pytest.raises(NotHermitianError):
            spectrum(FockOperator(3, np.triu(np.ones((16, 16)))), 1)

    def test_inverted_oscillator_unbounded(self):
        mins = [inverted_oscillator_min(1.0, 0.2, n) for n in (20, 40, 80)]
        assert mins[0] > mins[1] > mins[2]


class TestGroundState:
    @pytest.mark.parametrize("m", [0, 1, 2])
    def test_annihilated(self, m):
        rep = ground_state_eval(derive_params(2.0, 0.0, 1.0), m)
        assert rep.residual <= 1e-3
        assert rep.axis_ratio == pytest.approx(rep.predicted_axis_ratio, abs=1e-2)

    def test_circle_without_loss_gain(self):
        rep = ground_state_eval(derive_params(2.0, 0.0, 0.0), 1)
        assert rep.axis_ratio == pytest.approx(1.0, abs=1e-3)

    def test_coarse_grid(self):
        with pytest.raises(GridTooCoarseError):
            ground_state_eval(derive_params(2.0, 0.0, 1.0), 2, grid=32)

    def test_needs_c_zero(self):
        with pytest.raises(RegionMismatchError):
            ground_state_eval(derive_params(2.0, 0.5, 1.0))


class TestHall:
    @pytest.mark.parametrize("k2", [-1.0, 0.0, 1.0])
    def test_levels_match_oracle(self, k2):
        h = hall_quantum(derive_params(2.0, 0.0, 1.0), 1.0, k2)
        np.testing.assert_allclose(h.energies, h.oracle_energies, rtol=1e-5)

    def test_zero_field_is_landau(self):
        p = derive_params(2.0, 0.0, 1.0)
        h = hall_quantum(p, 0.0, 0.7)
        np.testing.assert_allclose(h.energies, (np.arange(6) + 0.5) * p.omega)

    @pytest.mark.parametrize("gamma", [0.0, 0.5, 1.0])
    def test_current_matches_classical_drift(self, gamma):
        h = hall_quantum(derive_params(2.0, 0.0, gamma), 1.0, 0.0)
        drift, _ = hall_drift(2.0, gamma, 1.0)
        np.testing.assert_allclose(h.current_x, drift, atol=1e-12)

    def test_field_norm_scales_with_e(self):
        p = derive_params(2.0, 0.0, 1.0)
        assert hall_quantum(p, 2.0, 0.0).field_norm == pytest.approx(2 * hall_quantum(p, 1.0, 0.0).field_norm)
