import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lossgain.exceptions import NotSymmetricError, ShapeMismatchError
from lossgain.linalg import (anticommutator, as_matrix, commutator, decompose, eig_sym, is_antisymmetric,
                             is_positive_definite, is_symmetric, max_norm, split_symmetric)
from lossgain.representations import build_landau, build_pairwise
from lossgain.system import derive_matrices

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


class TestEigSym:
    def test_diagonal(self):
        vals, vecs = eig_sym(np.diag([2.0, 1.0]))
        np.testing.assert_allclose(vals, [2.0, 1.0])
        np.testing.assert_allclose(vecs, np.eye(2))

    def test_landau_matrix(self):
        vals, _ = eig_sym(0.5 * np.array([[2.0, 1.0], [1.0, 2.0]]))
        np.testing.assert_allclose(vals, [1.5, 0.5], atol=1e-14)

    def test_tridiagonal(self):
        m = 3 * np.eye(3) + np.eye(3, k=1) + np.eye(3, k=-1)
        vals, _ = eig_sym(m)
        np.testing.assert_allclose(vals, [3 + np.sqrt(2), 3, 3 - np.sqrt(2)], atol=1e-13)

    def test_sign_convention(self):
        _, vecs = eig_sym(np.array([[0.0, 1.0], [1.0, 0.0]]))
        for col in vecs.T:
            first = col[np.flatnonzero(np.abs(col) > 1e-12)[0]]
            assert first > 0

    def test_degenerate_order_is_deterministic(self):
        vals, vecs = eig_sym(np.eye(3))
        np.testing.assert_allclose(vals, 1.0)
        np.testing.assert_allclose(vecs, np.eye(3))

    def test_rejects_nonsymmetric(self):
        with pytest.raises(NotSymmetricError):
            eig_sym(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(ShapeMismatchError):
            eig_sym(np.ones((2, 3)))

    @settings(max_examples=60, deadline=None)
    @given(arrays(np.float64, (5, 5), elements=st.floats(-10, 10)))
    def test_reconstructs(self, a):
        m = a + a.T
        vals, vecs = eig_sym(m)
        scale = max(1.0, max_norm(m))
        assert np.all(np.diff(vals) <= 1e-12 * scale)
        assert max_norm(vecs.T @ vecs - np.eye(5)) < 1e-12
        assert max_norm(vecs @ np.diag(vals) @ vecs.T - m) < 1e-11 * scale
        np.testing.assert_allclose(vals, np.sort(np.linalg.eigvalsh(m))[::-1], atol=1e-11 * scale)


def test_pauli_commutator():
    np.testing.assert_allclose(commutator(SX, SY), 2j * SZ)


def test_pairwise_anticommutator_vanishes():
    spec = build_pairwise(2, 0.8).spec
    r = derive_matrices(spec).r_mat
    assert max_norm(anticommutator(spec.big_m, r)) <= 1e-10


def test_landau_split_of_d():
    spec = build_landau(2.0, 0.3, 1.0).spec
    r = derive_matrices(spec).r_mat
    # M symmetric, R antisymmetric: the commutator is the symmetric part
    d_s = 0.5 * commutator(spec.big_m, r)
    d_a = 0.5 * anticommutator(spec.big_m, r)
    assert max_norm(d_s + d_a - spec.big_m @ r) < 1e-15
    assert is_symmetric(d_s) and is_antisymmetric(d_a)


def test_conformability():
    with pytest.raises(ShapeMismatchError):
        commutator(np.eye(2), np.eye(3))


def test_as_matrix_rejects_vectors():
    with pytest.raises(ShapeMismatchError):
        as_matrix(np.ones(3))


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, (4, 4), elements=st.floats(-5, 5)))
def test_decompose_is_unique_split(a):
    diag, hollow, anti = decompose(a)
    assert max_norm(diag + hollow + anti - a) < 1e-14
    assert max_norm(np.diag(hollow)) == 0
    assert is_symmetric(hollow) and is_antisymmetric(anti)
    sym, asym = split_symmetric(a)
    assert max_norm(sym - (diag + hollow)) == 0


def test_positive_definite():
    assert is_positive_definite(np.diag([1.0, 2.0]))
    assert not is_positive_definite(np.diag([1.0, -2.0]))
