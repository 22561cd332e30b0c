"""Lower bounds for first Dirichlet eigenvalues of planar divergence-form
elliptic operators, with a worked-example catalog and a finite-element
validation path."""

from ._core import (
    BESSEL_J01,
    CatalogEntry,
    EllipticityMatrix,
    InvalidDilatationError,
    InvalidMatrixError,
    ParameterError,
    applicable_bounds,
    distortion_summary,
    ellipticity_constant,
    entry,
    entry_names,
    faber_krahn_measure_preserving,
    gamma_fn,
    jacobian_beta_norm,
    k_to_mu_bound,
    lambda1_disc,
    lambda1_estimate,
    lambda1_lower_infty,
    lambda1_lower_via_K,
    laplace_lambda1,
    matrix_to_mu,
    mu_to_matrix,
    quasiconformality_coefficient,
    sp_constant_upper,
    sp_remark_consistency,
    validate,
    variation_lower_bound,
    wirtinger_derivatives,
)

__all__ = [
    "BESSEL_J01",
    "CatalogEntry",
    "EllipticityMatrix",
    "InvalidDilatationError",
    "InvalidMatrixError",
    "ParameterError",
    "applicable_bounds",
    "distortion_summary",
    "ellipticity_constant",
    "entry",
    "entry_names",
    "faber_krahn_measure_preserving",
    "gamma_fn",
    "jacobian_beta_norm",
    "k_to_mu_bound",
    "lambda1_disc",
    "lambda1_estimate",
    "lambda1_lower_infty",
    "lambda1_lower_via_K",
    "laplace_lambda1",
    "matrix_to_mu",
    "mu_to_matrix",
    "quasiconformality_coefficient",
    "sp_constant_upper",
    "sp_remark_consistency",
    "validate",
    "variation_lower_bound",
    "wirtinger_derivatives",
]

__version__ = "0.1.0"
