import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lossgain.exceptions import DegreeOverflowError, ShapeMismatchError
from lossgain.phase_ops import OMEGA, PhaseOperator, anticommutator, commutator, coordinates, poisson, product

X1, X2 = sympy.symbols("x1 x2", real=True)
PSI = sympy.exp(-(X1**2) / 3 - X2**2 / 5 + X1 * X2 / 7) * (1 + X1 + 2 * X2**2)


def _apply(op, psi):
    """Act with a Weyl-ordered symbol on a function of (x1, x2)."""
    xs = (X1, X2)

    def z(i, f):
        return xs[i] * f if i < 2 else -sympy.I * sympy.diff(f, xs[i - 2])

    op = op.numeric()
    out = complex(op.constant) * psi
    for i in range(4):
        if op.linear[i] != 0:
            out += complex(op.linear[i]) * z(i, psi)
    for i in range(4):
        for j in range(4):
            q = op.quadratic[i, j]
            if q != 0:
                out += complex(q) * (z(i, z(j, psi)) + z(j, z(i, psi))) / 2
    return out


def _same_action(lhs, rhs):
    diff = sympy.lambdify((X1, X2), lhs - rhs, "numpy")
    scale = sympy.lambdify((X1, X2), rhs, "numpy")
    pts = np.array([[0.3, -0.7], [1.1, 0.4], [-0.5, 0.9]])
    return max(abs(diff(*p)) for p in pts) <= 1e-10 * max(1.0, max(abs(scale(*p)) for p in pts))


ints = st.integers(-3, 3)
linear_ops = st.builds(lambda c, l: PhaseOperator(c, l), ints, st.lists(ints, min_size=4, max_size=4))
quadratic_ops = st.builds(
    lambda c, l, q: PhaseOperator(c, l, np.array(q).reshape(4, 4)),
    ints, st.lists(ints, min_size=4, max_size=4), st.lists(ints, min_size=16, max_size=16),
)


class TestCanonical:
    def test_brackets(self):
        x1, x2, p1, p2 = coordinates()
        assert commutator(x1, p1).equals(1j)
        assert commutator(x2, p2).equals(1j)
        assert commutator(x1, p2).is_zero()
        assert commutator(p1, p2).is_zero()

    def test_symplectic_form(self):
        z = coordinates()
        for i in range(4):
            for j in range(4):
                assert commutator(z[i], z[j]).equals(1j * OMEGA[i, j])

    def test_exact_mode(self):
        x1, _, p1, _ = coordinates(exact=True)
        c = commutator(x1, p1)
        assert c.exact and c.constant == sympy.I


class TestProducts:
    def test_linear_product_constant(self):
        x1, _, p1, _ = coordinates()
        # x p = Weyl(x p) + i/2
        assert product(x1, p1).constant == pytest.approx(0.5j)
        assert product(p1, x1).constant == pytest.approx(-0.5j)

    def test_degree_overflow(self):
        x1, _, p1, _ = coordinates()
        with pytest.raises(DegreeOverflowError):
            product(product(x1, p1), x1)

    def test_shape_checked(self):
        with pytest.raises(ShapeMismatchError):
            PhaseOperator(0, [1, 2, 3])

    @settings(max_examples=25, deadline=None)
    @given(linear_ops, linear_ops)
    def test_product_matches_differential_operators(self, f, g):
        assert _same_action(_apply(product(f, g), PSI), _apply(f, _apply(g, PSI)))

    @settings(max_examples=25, deadline=None)
    @given(quadratic_ops, quadratic_ops)
    def test_commutator_matches_differential_operators(self, f, g):
        lhs = _apply(commutator(f, g), PSI)
        rhs = _apply(f, _apply(g, PSI)) - _apply(g, _apply(f, PSI))
        assert _same_action(lhs, rhs)


class TestAlgebra:
    @settings(max_examples=40, deadline=None)
    @given(quadratic_ops, quadratic_ops, quadratic_ops)
    def test_jacobi(self, f, g, h):
        total = poisson(f, poisson(g, h)) + poisson(g, poisson(h, f)) + poisson(h, poisson(f, g))
        assert total.is_zero(1e-9)

    @settings(max_examples=40, deadline=None)
    @given(quadratic_ops, quadratic_ops)
    def test_antisymmetry(self, f, g):
        assert (commutator(f, g) + commutator(g, f)).is_zero()

    def test_hermitian(self):
        x1, _, p1, _ = coordinates()
        assert anticommutator(x1, p1).is_hermitian()
        assert not product(x1, p1).is_hermitian()
        assert (product(x1, p1) - 0.5j).is_hermitian()

    def test_adjoint_of_ladder(self):
        x1, _, p1, _ = coordinates()
        a = (x1 + 1j * p1) / np.sqrt(2)
        ad = a.adjoint()
        assert commutator(a, ad).equals(1.0)

    def test_symbol(self):
        x1, x2, p1, _ = coordinates()
        op = product(x1, x1) + 2 * p1 - x2
        np.testing.assert_allclose(op.symbol([[1.0, 2.0, 3.0, 0.0]]), [1.0 + 6.0 - 2.0])
