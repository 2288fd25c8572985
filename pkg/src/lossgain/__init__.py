"""Balanced loss-gain systems with a Lorentz-type velocity coupling.

Classical dynamics, the canonical frame that removes the loss-gain terms,
the Landau problem with loss and gain, its quantum spectrum and the
supersymmetric Pauli extension.
"""

from .exceptions import (BadShapeError, BoundarySingularError, ConfigError, DegreeOverflowError,
                         GammaZeroUndefinedError, GridTooCoarseError, LossGainError, NonFiniteError,
                         NotHermitianError, NotSymmetricError, RegionMismatchError, ShapeMismatchError,
                         SingularMatrixError, TruncationWarning)
from .frame import CanonicalFrame, RegionReport, build_frame, classify
from .landau import LandauOrbit, LandauParams, derive_params
from .phase_ops import PhaseOperator
from .representations import (REPRESENTATIONS, build_appendix_rep1, build_appendix_rep2, build_beta_modified,
                              build_landau, build_pairwise)
from .susy import SpinPhaseOperator
from .system import QuadraticPotential, SystemSpec, check_balance, derive_matrices, integrate

__version__ = "0.1.0"

__all__ = [
    "BadShapeError",
    "BoundarySingularError",
    "CanonicalFrame",
    "ConfigError",
    "DegreeOverflowError",
    "GammaZeroUndefinedError",
    "GridTooCoarseError",
    "LandauOrbit",
    "LandauParams",
    "LossGainError",
    "NonFiniteError",
    "NotHermitianError",
    "NotSymmetricError",
    "PhaseOperator",
    "QuadraticPotential",
    "REPRESENTATIONS",
    "RegionMismatchError",
    "RegionReport",
    "ShapeMismatchError",
    "SingularMatrixError",
    "SpinPhaseOperator",
    "SystemSpec",
    "TruncationWarning",
    "build_appendix_rep1",
    "build_appendix_rep2",
    "build_beta_modified",
    "build_frame",
    "build_landau",
    "build_pairwise",
    "check_balance",
    "classify",
    "derive_matrices",
    "derive_params",
    "integrate",
]
