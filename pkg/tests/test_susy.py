import numpy as np
import pytest
import sympy

from lossgain.exceptions import RegionMismatchError
from lossgain.landau import derive_params
from lossgain.phase_ops import coordinates
from lossgain.quantum import fock_matrix
from lossgain.susy import (PAULI, SpinPhaseOperator, build_pauli_hamiltonian, build_supercharges, susy_identities,
                           susy_spectrum_check)

ASSERTED = ("H_S: Pi form = frame form", "{q1,q1}=2H", "{q2,q2}=2H", "{q1,q2}=0", "{Q1,Q1}=2H", "{Q2,Q2}=2H",
            "{Q1,Q2}=0", "[H,q1]=0", "[H,q2]=0", "[H,Q1]=0", "[H,Q2]=0")


@pytest.fixture(scope="module")
def exact_identities():
    return susy_identities(derive_params(2.0, 0.0, 1.0), exact=True)


class TestAlgebra:
    def test_exact(self, exact_identities):
        for name in ASSERTED:
            residual, holds = exact_identities[name]
            assert holds and residual == 0.0, name

    def test_reported_relations_fail(self, exact_identities):
        # the two supercharge pairs do not anticommute with each other
        for name in ("{q1,Q1}", "{q1,Q2}", "{q2,Q1}", "{q2,Q2}"):
            assert exact_identities[name][1] is False
        assert not exact_identities["literal {Q1,Q1}=2H"][1]
        assert not exact_identities["q1 = printed Pi expansion"][1]

    @pytest.mark.parametrize("gamma", [0.0, 0.4, 1.3])
    def test_float(self, gamma):
        res = susy_identities(derive_params(2.0, 0.0, gamma), exact=False)
        assert max(res[k][0] for k in ASSERTED) < 1e-10

    def test_general_c_q_pair(self):
        p = derive_params(2.0, 0.5, 1.0)
        with pytest.raises(RegionMismatchError):
            susy_identities(p, exact=False)
        # the Hamiltonian itself is fine
        h = build_pauli_hamiltonian(p) - build_pauli_hamiltonian(p, form="frame")
        assert h.residual() < 1e-12

    def test_region_two(self):
        with pytest.raises(RegionMismatchError):
            build_pauli_hamiltonian(derive_params(0.0, 0.0, 1.0))


class TestHamiltonian:
    def test_zeeman_coefficient(self):
        h = build_pauli_hamiltonian(derive_params(2.0, 0.0, 1.0), exact=True)
        assert sympy.simplify(h.coefficient("z").constant - sympy.sqrt(3) / 2) == 0

    def test_zeeman_without_loss_gain(self):
        h = build_pauli_hamiltonian(derive_params(3.0, 0.0, 0.0))
        assert h.coefficient("z").constant == pytest.approx(1.5)

    def test_bad_form(self):
        with pytest.raises(ValueError):
            build_pauli_hamiltonian(derive_params(2.0, 0.0, 1.0), form="other")

    def test_supercharges_hermitian(self):
        sc = build_supercharges(derive_params(2.0, 0.0, 1.0))
        for q in (sc.q1, sc.q2, sc.big_q1, sc.big_q2):
            for op in q.coeffs.values():
                assert op.is_hermitian()


class TestSpectrum:
    @pytest.mark.parametrize("gamma", [0.0, 1.0])
    def test_pairing(self, gamma):
        sp = susy_spectrum_check(derive_params(2.0, 0.0, gamma), n_max=30)
        assert abs(sp.ground_energy) < 1e-6
        assert sp.pairing_residual / sp.omega < 1e-6
        np.testing.assert_allclose(sp.up_levels, (np.arange(3) + 1) * sp.omega, rtol=1e-5)


class TestSpinOperator:
    def test_projector_reduction(self):
        x1, *_ = coordinates()
        op = SpinPhaseOperator([(np.array([[1, 0], [0, 0]]), x1)])
        assert set(op.coeffs) == {0, 3}
        assert op.coefficient("I").equals(x1 * 0.5)
        assert op.coefficient("z").equals(x1 * 0.5)

    def test_pauli_products(self):
        one = SpinPhaseOperator({"x": 1.0})
        two = SpinPhaseOperator({"y": 1.0})
        comm = one.commutator(two)
        assert comm.coefficient("z").constant == pytest.approx(2j)
        assert one.anticommutator(two).is_zero()

    def test_matrix_layout(self):
        x1, _, p1, _ = coordinates()
        op = SpinPhaseOperator({"x": x1, "z": p1})
        n = 4
        expected = np.kron(fock_matrix(x1, n).matrix, PAULI[1]) + np.kron(fock_matrix(p1, n).matrix, PAULI[3])
        np.testing.assert_allclose(op.matrix(n), expected)
