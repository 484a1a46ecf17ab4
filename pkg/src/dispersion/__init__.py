"""Exact-arithmetic spectral solver for the dispersion constants of two
ground-state hydrogen atoms, with perturbation densities, an equivalent
density-functional path, and approximate variational baselines."""

from .exact import (
    CHI_BASIS,
    G_BASIS,
    H_BASIS,
    PHI_BASIS,
    BasisSpec,
    Poly,
    Rational,
    decimal_string,
    laguerre,
    laguerre_series,
    moment,
    weighted_inner,
)
from .solver import (
    CHANNELS,
    Channel,
    LinearSystem,
    SingularSystemError,
    SolutionRecord,
    assemble,
    channel_a_recurrence_system,
    energy_constant,
    normalization_constant,
    solve,
    solve_channel,
    truncation_pairs,
)
from .densities import (
    DensityFn,
    channel_a_alpha_recurrence,
    default_grid,
    density_coeffs,
    emit_density_grid,
    eval_density,
)
from .dft import (
    AnsatzParams,
    OptimizerError,
    ansatz_density,
    ansatz_energy,
    ansatz_optimize,
    dft_solve,
    exact_functional,
    functional_value,
    record_callables,
    sk_zeroth_energy,
)
from .quadrature import QuadratureError, integrate_halfline, integrate_quadrant

__version__ = "1.0.0"

__all__ = [
    "AnsatzParams",
    "BasisSpec",
    "CHANNELS",
    "CHI_BASIS",
    "Channel",
    "DensityFn",
    "G_BASIS",
    "H_BASIS",
    "LinearSystem",
    "OptimizerError",
    "PHI_BASIS",
    "Poly",
    "QuadratureError",
    "Rational",
    "SingularSystemError",
    "SolutionRecord",
    "ansatz_density",
    "ansatz_energy",
    "ansatz_optimize",
    "assemble",
    "channel_a_alpha_recurrence",
    "channel_a_recurrence_system",
    "decimal_string",
    "default_grid",
    "density_coeffs",
    "dft_solve",
    "emit_density_grid",
    "energy_constant",
    "eval_density",
    "exact_functional",
    "functional_value",
    "integrate_halfline",
    "integrate_quadrant",
    "laguerre",
    "laguerre_series",
    "moment",
    "normalization_constant",
    "record_callables",
    "sk_zeroth_energy",
    "solve",
    "solve_channel",
    "truncation_pairs",
    "weighted_inner",
]
