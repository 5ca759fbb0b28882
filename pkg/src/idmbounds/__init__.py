"""Robust interval estimators under the imprecise Dirichlet model.

Exact, conservative, and approximate [lower, upper] intervals for
statistical functionals of categorical data when the Dirichlet prior mean
ranges over the whole simplex: expected entropy (exact), expected mutual
information (conservative, O(sigma^2)-tight), and robust credible
intervals, all validated against brute-force lattice and Monte-Carlo
oracles.
"""

from .credible import (
    CredibleSpec,
    TriangularFamily,
    one_sided_robust_bound,
    robust_credible_mi,
    triangular_mass,
    triangular_minimal_robust,
    triangular_robust_union,
    triangular_shortest_interval,
)
from .exact_extrema import (
    ConcaveSummand,
    ExtremumResult,
    entropy_interval_exact,
    entropy_interval_rational,
    entropy_summand,
    max_concave_sum,
    min_concave_sum,
)
from .mutual_info import (
    ContingencyCounts,
    MiBounds,
    expected_mi,
    mi_interval_bounds,
    mi_interval_crude,
    mi_variance_leading,
    product_idm_check,
)
from .oracle import (
    GridOverflowError,
    GridSpec,
    McSpec,
    McStats,
    composition_count,
    compositions,
    dirichlet_draws,
    grid_extrema,
    jackknife_variance_stderr,
    lattice_entropy_objective,
    lattice_mi_objective,
    mc_functional_stats,
    product_grid_extrema,
)
from .simplex_core import (
    SIMPLEX_TOL,
    CountVector,
    IdmConfig,
    Interval,
    PosteriorMean,
    SimplexPoint,
    sigma_of,
    u_from_t,
    validate_simplex,
)
from .special_fn import (
    EULER_GAMMA,
    EntropyKernel,
    digamma,
    digamma_asymptotic,
    erf_by_quadrature,
    h,
    h_fraction,
    h_prime,
    harmonic_fraction,
    kappa_from_alpha,
    trigamma,
)
from .taylor_bounds import (
    DerivativeBoundProvider,
    RobustEstimate,
    UnboundedDerivativeError,
    approx_interval_general,
    concave_remainder_bounds,
    propagate_product,
    propagate_sum,
)

__version__ = "0.1.0"

__all__ = [
    "SIMPLEX_TOL",
    "EULER_GAMMA",
    "CountVector",
    "IdmConfig",
    "Interval",
    "PosteriorMean",
    "SimplexPoint",
    "sigma_of",
    "u_from_t",
    "validate_simplex",
    "EntropyKernel",
    "digamma",
    "digamma_asymptotic",
    "erf_by_quadrature",
    "h",
    "h_fraction",
    "h_prime",
    "harmonic_fraction",
    "kappa_from_alpha",
    "trigamma",
    "ConcaveSummand",
    "ExtremumResult",
    "entropy_interval_exact",
    "entropy_interval_rational",
    "entropy_summand",
    "max_concave_sum",
    "min_concave_sum",
    "DerivativeBoundProvider",
    "RobustEstimate",
    "UnboundedDerivativeError",
    "approx_interval_general",
    "concave_remainder_bounds",
    "propagate_product",
    "propagate_sum",
    "ContingencyCounts",
    "MiBounds",
    "expected_mi",
    "mi_interval_bounds",
    "mi_interval_crude",
    "mi_variance_leading",
    "product_idm_check",
    "CredibleSpec",
    "TriangularFamily",
    "one_sided_robust_bound",
    "robust_credible_mi",
    "triangular_mass",
    "triangular_minimal_robust",
    "triangular_robust_union",
    "triangular_shortest_interval",
    "GridOverflowError",
    "GridSpec",
    "McSpec",
    "McStats",
    "composition_count",
    "compositions",
    "dirichlet_draws",
    "grid_extrema",
    "jackknife_variance_stderr",
    "lattice_entropy_objective",
    "lattice_mi_objective",
    "mc_functional_stats",
    "product_grid_extrema",
]
