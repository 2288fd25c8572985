"""Region classification and the canonical frame that hides loss and gain.

For a kinetic matrix ``M = O diag(lambda) O^T`` put ``S = diag(sqrt|lambda|)``
and ``eta = diag(sign lambda)``. The linear canonical map

    Xc = S^{-1} O^T X,   Pc = S O^T P

turns the system into ``H = Pi_c^T eta Pi_c + V`` with
``Pi_c = Pc + (Rc / 2) Xc`` and ``Rc = S O^T R O S``, which has no
loss-gain terms on the diagonal of ``eta Rc``.
"""

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._tolerance import default_tol
from .exceptions import BoundarySingularError, NotSymmetricError
from .linalg import as_matrix, eig_sym, is_symmetric, max_norm
from .system import QuadraticPotential, SystemSpec, r_matrix

__all__ = ["RegionReport", "classify", "roman", "CanonicalFrame", "build_frame"]


def roman(k):
    """Roman numeral for a positive integer."""
    table = [(1000, "M"), (900, "CM"), (500, "D"), (400, "CD"), (100, "C"), (90, "XC"),
             (50, "L"), (40, "XL"), (10, "X"), (9, "IX"), (5, "V"), (4, "IV"), (1, "I")]
    out = []
    for value, sym in table:
        count, k = divmod(k, value)
        out.append(sym * count)
    return "".join(out)


@dataclass(frozen=True)
class RegionReport:
    """Signature data of a kinetic matrix.

    ``region_index`` is one plus the number of negative eigenvalues, so
    Region-I is positive definite and Region-(N+1) negative definite.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    signs: np.ndarray
    region_index: int

    @property
    def label(self):
        return roman(self.region_index)

    @property
    def eta(self):
        return np.diag(self.signs.astype(float))

    def as_dict(self):
        return {
            "region": self.label,
            "region_index": self.region_index,
            "eigenvalues": [float(v) for v in self.eigenvalues],
            "eta": [int(s) for s in self.signs],
        }


def classify(big_m, tol=None):
    """Classify the parameter region of a kinetic matrix by its signature.

    Raises
    ------
    BoundarySingularError
        If an eigenvalue is zero within ``1e-10 * max|M|``.
    """
    big_m = as_matrix(big_m).astype(float)
    if not is_symmetric(big_m, tol):
        raise NotSymmetricError("kinetic matrix must be symmetric")
    vals, vecs = eig_sym(big_m, tol)
    scale = max_norm(big_m)
    thresh = default_tol(tol) * scale
    if scale == 0 or np.any(np.abs(vals) <= thresh):
        raise BoundarySingularError(
            f"kinetic matrix has a vanishing eigenvalue (min |lambda| = {np.min(np.abs(vals)):.3e}); "
            "parameters lie on a region boundary"
        )
    signs = np.where(vals > 0, 1, -1)
    return RegionReport(vals, vecs, signs, int(np.sum(signs < 0)) + 1)


class CanonicalFrame(TransformerMixin, BaseEstimator):
    """Linear canonical map into the frame without loss-gain terms.

    Parameters
    ----------
    at : array_like, optional
        Configuration where ``R`` is evaluated; only matters when the field
        map is nonlinear, in which case the frame is local.
    tol : float, optional
        Relative tolerance for symmetry and singularity checks.

    Attributes
    ----------
    o_mat_ : ndarray
        Proper rotation (``det = +1``) whose columns are eigenvectors of ``M``.
    s_mat_ : ndarray
        ``diag(sqrt|lambda_i|)``.
    eta_ : ndarray
        ``diag(sign lambda_i)``.
    r_cal_ : ndarray
        Antisymmetric ``S O^T R O S``.
    region_ : RegionReport
    globally_canonical_ : bool
        False when ``R`` depends on the configuration.

    Examples
    --------
    >>> from lossgain.representations import build_landau
    >>> frame = CanonicalFrame().fit(build_landau(2.0, 0.0, 1.0).spec)
    >>> frame.region_.label
    'I'
    """

    def __init__(self, at=None, tol=None):
        self.at = at
        self.tol = tol

    def fit(self, X, y=None):
        """Fit from a :class:`SystemSpec`, or from a pair ``(M, R)``."""
        if isinstance(X, SystemSpec):
            big_m = X.big_m
            r_mat = r_matrix(X, self.at)
            self.globally_canonical_ = bool(X.constant_jacobian)
        else:
            big_m, r_mat = X
            big_m = as_matrix(big_m).astype(float)
            r_mat = as_matrix(r_mat).astype(float)
            self.globally_canonical_ = True
        region = classify(big_m, self.tol)
        o_mat = region.eigenvectors.copy()
        if np.linalg.det(o_mat) < 0:
            o_mat[:, -1] = -o_mat[:, -1]
        s_diag = np.sqrt(np.abs(region.eigenvalues))
        self.region_ = region
        self.o_mat_ = o_mat
        self.s_mat_ = np.diag(s_diag)
        self.s_inv_ = np.diag(1.0 / s_diag)
        self.eta_ = region.eta
        self.big_m_ = big_m
        self.r_mat_ = r_mat
        self.r_cal_ = self.s_mat_ @ o_mat.T @ r_mat @ o_mat @ self.s_mat_
        self.n_features_in_ = big_m.shape[0]
        return self

    # position map: rows of X are configurations
    def transform(self, X):
        check_is_fitted(self, "o_mat_")
        x = np.asarray(X, dtype=float)
        return x @ (self.s_inv_ @ self.o_mat_.T).T

    def inverse_transform(self, X):
        check_is_fitted(self, "o_mat_")
        xc = np.asarray(X, dtype=float)
        return xc @ (self.o_mat_ @ self.s_mat_).T

    def transform_momenta(self, P):
        check_is_fitted(self, "o_mat_")
        return np.asarray(P, dtype=float) @ (self.s_mat_ @ self.o_mat_.T).T

    def inverse_transform_momenta(self, P):
        check_is_fitted(self, "o_mat_")
        return np.asarray(P, dtype=float) @ (self.o_mat_ @ self.s_inv_).T

    def to_frame(self, x, p):
        return self.transform(x), self.transform_momenta(p)

    def from_frame(self, xc, pc):
        return self.inverse_transform(xc), self.inverse_transform_momenta(pc)

    def phase_jacobian(self):
        """Jacobian of ``(x, p) -> (Xc, Pc)``; symplectic by construction."""
        check_is_fitted(self, "o_mat_")
        n = self.n_features_in_
        jac = np.zeros((2 * n, 2 * n))
        jac[:n, :n] = self.s_inv_ @ self.o_mat_.T
        jac[n:, n:] = self.s_mat_ @ self.o_mat_.T
        return jac

    # residuals of the defining identities
    def metric_residual(self):
        lhs = self.s_inv_ @ self.o_mat_.T @ self.big_m_ @ self.o_mat_ @ self.s_inv_
        return max_norm(lhs - self.eta_)

    def hidden_loss_residual(self):
        return max_norm(np.diag(self.eta_ @ self.r_cal_))

    def similarity_residual(self):
        d_mat = self.big_m_ @ self.r_mat_
        lhs = self.s_inv_ @ self.o_mat_.T @ d_mat @ self.o_mat_ @ self.s_mat_
        return max_norm(lhs - self.eta_ @ self.r_cal_)

    def symplectic_residual(self):
        n = self.n_features_in_
        omega = np.block([[np.zeros((n, n)), np.eye(n)], [-np.eye(n), np.zeros((n, n))]])
        jac = self.phase_jacobian()
        return max_norm(jac.T @ omega @ jac - omega)

    def frame_spec(self, spec=None):
        """The system rewritten in frame coordinates.

        The kinetic matrix is ``eta`` and ``R`` becomes ``Rc``; a quadratic
        potential is transformed exactly, any other potential by composition.
        """
        check_is_fitted(self, "o_mat_")
        pot = None
        if spec is not None and spec.potential is not None:
            back = self.o_mat_ @ self.s_mat_
            src = spec.potential
            if isinstance(src, QuadraticPotential):
                pot = QuadraticPotential(back.T @ src.hessian @ back, back.T @ src.linear, src.constant)
            else:
                def pot(xc, _src=src, _back=back):
                    return _src(_back @ np.asarray(xc, dtype=float))
        return SystemSpec(self.eta_, 0.5 * self.r_cal_, potential=pot, label="frame")


def build_frame(spec, at=None, tol=None):
    """Fit a :class:`CanonicalFrame` for ``spec``."""
    return CanonicalFrame(at=at, tol=tol).fit(spec)
