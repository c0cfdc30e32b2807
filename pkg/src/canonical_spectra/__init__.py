"""Eigenvalues of the clamped operator ``(-1)**alpha u^(2 alpha) = lambda u`` on ``[0, 1]``."""

from .asymptotics import AsymptoticModel, MuPrediction, model, predict_delta3, predict_first_index, predict_lambda_min, predict_mu
from .eigensolver import EigenvalueRecord, Method, assign_indices, find_roots, min_eigenvalue, spectrum
from .errors import (
    ConfigurationError,
    DomainError,
    IndexingAnomalyWarning,
    InternalConsistencyError,
    NumericalError,
    ResourceLimitError,
    SpectraError,
    SuspectedDoubleRootWarning,
    UnsupportedOrderError,
)
from .number_theory import IntPolynomial, RationalityVerdict, has_arithmetic_progression, is_cos_rational, phi_iterate, rational_root_scan, witness_polynomial
from .scaled import ScaledValue
from .spectral_matrix import (
    LaplaceConstants,
    OperatorOrder,
    ScaledComplexMatrix,
    build_matrix,
    laplace_constants,
    normalized_real_det,
    rho,
    scaled_determinant,
    smallest_singular_value,
    vandermonde_minor,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticModel",
    "ConfigurationError",
    "DomainError",
    "EigenvalueRecord",
    "IndexingAnomalyWarning",
    "IntPolynomial",
    "InternalConsistencyError",
    "LaplaceConstants",
    "Method",
    "MuPrediction",
    "NumericalError",
    "OperatorOrder",
    "RationalityVerdict",
    "ResourceLimitError",
    "ScaledComplexMatrix",
    "ScaledValue",
    "SpectraError",
    "SuspectedDoubleRootWarning",
    "UnsupportedOrderError",
    "assign_indices",
    "build_matrix",
    "find_roots",
    "has_arithmetic_progression",
    "is_cos_rational",
    "laplace_constants",
    "min_eigenvalue",
    "model",
    "normalized_real_det",
    "phi_iterate",
    "predict_delta3",
    "predict_first_index",
    "predict_lambda_min",
    "predict_mu",
    "rational_root_scan",
    "rho",
    "scaled_determinant",
    "smallest_singular_value",
    "spectrum",
    "vandermonde_minor",
    "witness_polynomial",
]
