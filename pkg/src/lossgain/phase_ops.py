"""Exact algebra of phase-space operators of degree at most two.

An operator is stored by its Weyl symbol ``c + l.z + z^T Q z`` on
``z = (x1, x2, p1, p2)`` with ``Q`` symmetric. For such symbols the Moyal
bracket equals the Poisson bracket, so commutators are exact::

    [f, g] = i {f, g},   {f, g} = (grad f)^T Omega (grad g)

and the product of two linear symbols is ``l.z m.z + (i/2) l^T Omega m``.
Coefficients are complex floats by default; ``exact=True`` switches to
sympy expressions so identities can be checked with zero remainder.
"""

import numpy as np
import sympy

from ._tolerance import default_tol
from .exceptions import DegreeOverflowError, ShapeMismatchError

__all__ = ["OMEGA", "PhaseOperator", "coordinates", "commutator", "anticommutator"]

DIM = 4
OMEGA = np.block([[np.zeros((2, 2), dtype=int), np.eye(2, dtype=int)],
                  [-np.eye(2, dtype=int), np.zeros((2, 2), dtype=int)]])
NAMES = ("x1", "x2", "p1", "p2")


_X = sympy.Symbol("x")


def _exact_zero(v):
    v = sympy.sympify(v)
    if v == 0:
        return True
    if abs(complex(sympy.N(v, 30))) > 1e-20:
        return False
    v = sympy.expand(v)
    if v == 0:
        return True
    # coefficients are algebraic numbers: zero iff the minimal polynomial is x
    try:
        return sympy.minimal_polynomial(v, _X) == _X
    except (NotImplementedError, sympy.polys.polyerrors.NotAlgebraic):
        return sympy.simplify(v) == 0


def _exact_array(a):
    arr = np.empty(np.shape(a), dtype=object)
    flat = np.asarray(a, dtype=object).ravel()
    arr.ravel()[:] = [sympy.sympify(v) for v in flat]
    return arr


class PhaseOperator:
    """Weyl-ordered operator of degree at most two in ``(x1, x2, p1, p2)``.

    Parameters
    ----------
    constant : scalar
    linear : array_like, shape (4,)
    quadratic : array_like, shape (4, 4)
        Symmetrised on construction.
    exact : bool
        Store sympy expressions instead of complex floats.
    """

    __slots__ = ("constant", "linear", "quadratic", "exact")

    def __init__(self, constant=0, linear=None, quadratic=None, exact=False):
        self.exact = bool(exact)
        lin = np.zeros(DIM) if linear is None else linear
        quad = np.zeros((DIM, DIM)) if quadratic is None else quadratic
        if np.shape(lin) != (DIM,) or np.shape(quad) != (DIM, DIM):
            raise ShapeMismatchError("linear must have shape (4,) and quadratic (4, 4)")
        if self.exact:
            self.constant = sympy.sympify(constant)
            self.linear = _exact_array(lin)
            q = _exact_array(quad)
            self.quadratic = (q + q.T) / 2
        else:
            self.constant = complex(constant)
            self.linear = np.asarray(lin, dtype=complex).copy()
            q = np.asarray(quad, dtype=complex)
            self.quadratic = 0.5 * (q + q.T)

    # construction helpers
    @classmethod
    def coordinate(cls, name, exact=False):
        lin = np.zeros(DIM, dtype=int)
        lin[NAMES.index(name)] = 1
        return cls(0, lin, None, exact)

    @classmethod
    def scalar(cls, value, exact=False):
        return cls(value, None, None, exact)

    def _like(self, constant, linear, quadratic):
        return PhaseOperator(constant, linear, quadratic, self.exact)

    def _coerce(self, other):
        if isinstance(other, PhaseOperator):
            if other.exact == self.exact:
                return other
            return PhaseOperator(other.constant, other.linear, other.quadratic, self.exact or other.exact)
        return PhaseOperator.scalar(other, self.exact)

    @property
    def degree(self):
        if not self._vanishes(self.quadratic):
            return 2
        if not self._vanishes(self.linear):
            return 1
        return 0

    def _vanishes(self, arr):
        if self.exact:
            return all(_exact_zero(v) for v in np.asarray(arr, dtype=object).ravel())
        return not np.any(np.asarray(arr) != 0)

    # linear structure
    def __add__(self, other):
        o = self._coerce(other)
        exact = self.exact or o.exact
        a = self if self.exact == exact else self._coerce_to(exact)
        return PhaseOperator(a.constant + o.constant, a.linear + o.linear, a.quadratic + o.quadratic, exact)

    __radd__ = __add__

    def _coerce_to(self, exact):
        return PhaseOperator(self.constant, self.linear, self.quadratic, exact)

    def __neg__(self):
        return self._like(-self.constant, -self.linear, -self.quadratic)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k):
        if self.exact:
            k = sympy.sympify(k)
        return self._like(k * self.constant, k * self.linear, k * self.quadratic)

    def __mul__(self, other):
        if isinstance(other, PhaseOperator):
            return product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, PhaseOperator):
            return product(other, self)
        return self.scale(other)

    def __truediv__(self, k):
        if self.exact:
            return self.scale(1 / sympy.sympify(k))
        return self.scale(1.0 / k)

    def adjoint(self):
        """Hermitian conjugate: complex conjugate of the Weyl symbol."""
        if self.exact:
            conj = np.vectorize(sympy.conjugate, otypes=[object])
            return self._like(sympy.conjugate(self.constant), conj(self.linear), conj(self.quadratic))
        return self._like(np.conj(self.constant), np.conj(self.linear), np.conj(self.quadratic))

    def is_hermitian(self, tol=None):
        return (self - self.adjoint()).is_zero(tol)

    # comparisons
    def _entries(self):
        return [self.constant, *self.linear.ravel(), *self.quadratic.ravel()]

    def residual(self):
        """Max-abs coefficient, as a float (30-digit evaluation in exact mode)."""
        if self.exact:
            return max(float(abs(sympy.N(v, 30))) for v in self._entries())
        return float(max(abs(self.constant), np.max(np.abs(self.linear)), np.max(np.abs(self.quadratic))))

    def is_zero(self, tol=None):
        """Exact test in exact mode; ``residual <= tol`` (default 1e-10) otherwise."""
        if self.exact:
            return all(_exact_zero(v) for v in self._entries())
        return self.residual() <= default_tol(tol)

    def equals(self, other, tol=None):
        return (self - self._coerce(other)).is_zero(tol)

    def numeric(self):
        """Complex-float copy (evaluates sympy coefficients)."""
        if not self.exact:
            return self
        to_c = np.vectorize(lambda v: complex(sympy.N(v)), otypes=[complex])
        return PhaseOperator(complex(sympy.N(self.constant)), to_c(self.linear), to_c(self.quadratic))

    def symbol(self, z):
        """Evaluate the Weyl symbol at phase-space points ``z`` (..., 4)."""
        op = self.numeric()
        z = np.asarray(z, dtype=complex)
        return op.constant + z @ op.linear + np.einsum("...i,ij,...j->...", z, op.quadratic, z)

    def __repr__(self):
        terms = []
        op = self
        if self.exact:
            terms.append(str(sympy.simplify(op.constant)))
        else:
            terms.append(f"{op.constant:.6g}")
        for i, name in enumerate(NAMES):
            terms.append(f"{op.linear[i]}*{name}")
        return f"PhaseOperator({' + '.join(terms)}, quadratic={op.quadratic.tolist()})"


def coordinates(exact=False):
    """``(x1, x2, p1, p2)`` as operators."""
    return tuple(PhaseOperator.coordinate(n, exact) for n in NAMES)


def _omega(exact):
    return OMEGA.astype(object) if exact else OMEGA.astype(float)


def _pair(f, g):
    exact = f.exact or g.exact
    if f.exact != exact:
        f = f._coerce_to(exact)
    if g.exact != exact:
        g = g._coerce_to(exact)
    return f, g, exact


def poisson(f, g):
    """Poisson bracket ``{f, g}`` of two symbols of degree at most two."""
    f, g, exact = _pair(f, g)
    om = _omega(exact)
    lf, lg, qf, qg = f.linear, g.linear, f.quadratic, g.quadratic
    const = lf @ om @ lg
    lin = 2 * (qf @ om @ lg) - 2 * (qg @ om @ lf)
    quad = 4 * (qf @ om @ qg)
    return PhaseOperator(const, lin, quad, exact)


def commutator(f, g):
    """Exact ``[f, g] = i {f, g}``."""
    br = poisson(f, g)
    return br.scale(sympy.I if br.exact else 1j)


def product(f, g):
    """Operator product, defined when the result has degree at most two."""
    f, g, exact = _pair(f, g)
    df, dg = f.degree, g.degree
    if df == 0:
        return g.scale(f.constant)
    if dg == 0:
        return f.scale(g.constant)
    if df + dg > 2:
        raise DegreeOverflowError(f"product of degree {df} and {dg} operators exceeds degree two")
    # both linear (possibly with constants)
    om = _omega(exact)
    half_i = sympy.I / 2 if exact else 0.5j
    lf, lg = f.linear, g.linear
    const = f.constant * g.constant + half_i * (lf @ om @ lg)
    lin = f.constant * lg + g.constant * lf
    outer = np.multiply.outer(lf, lg)
    return PhaseOperator(const, lin, outer, exact)


def anticommutator(f, g):
    """``fg + gf``; both factors linear or one of them a constant."""
    return product(f, g) + product(g, f)


PhaseOperator.commutator = commutator
PhaseOperator.anticommutator = anticommutator
