"""Numerical Dunkl harmonic analysis for the reflection group Z_2^d.

Kernels and transforms, translations, Riesz potentials, rearrangement-based
two-weight conditions and weighted Sobolev checks, plus a verification CLI.
"""

from .catalog import Decay, FunctionSpec, RadialProfile, make_profile
from .errors import (
    AlphaOutOfRange,
    ConfigError,
    DunklError,
    NegativeArgument,
    NonPositiveScale,
    OverlappingCells,
    ParameterOutOfRange,
    TailBoundExceeded,
    UnsupportedOrder,
)
from .kernel import (
    dunkl_kernel_1d,
    dunkl_kernel_imag,
    dunkl_kernel_zd,
    dunkl_transform_1d,
    dunkl_transform_radial,
    inverse_transform_radial,
    transform_profile,
)
from .measure import MultiplicitySetup, gaussian_mass, mehta_constant, radial_integral, sphere_constant, weight
from .quadrature import DEFAULT_QUAD, QuadratureSpec
from .rearrangement import (
    InequalityReport,
    WeightSpec,
    calderon_majorant,
    decreasing_rearrangement,
    distribution_function,
    hardy_condition_dual,
    hardy_condition_primal,
    rearrangement_numeric,
    theorem41_conditions,
)
from .riesz import (
    RieszParams,
    decay_fit,
    empirical_two_weight,
    fractional_maximal,
    psi_probe,
    riesz_multiplier_radial,
    riesz_subordination,
)
from .sobolev import (
    dunkl_gradient_norm,
    dunkl_operator,
    riesz_transform_multiplier_1d,
    sobolev_ratio,
    theorem42_conditions,
)
from .translation import translate_gaussian, translate_radial_1d, translation_mass_check

__version__ = "0.1.0"

__all__ = [
    "Decay",
    "FunctionSpec",
    "RadialProfile",
    "make_profile",
    "AlphaOutOfRange",
    "ConfigError",
    "DunklError",
    "NegativeArgument",
    "NonPositiveScale",
    "OverlappingCells",
    "ParameterOutOfRange",
    "TailBoundExceeded",
    "UnsupportedOrder",
    "dunkl_kernel_1d",
    "dunkl_kernel_imag",
    "dunkl_kernel_zd",
    "dunkl_transform_1d",
    "dunkl_transform_radial",
    "inverse_transform_radial",
    "transform_profile",
    "MultiplicitySetup",
    "gaussian_mass",
    "mehta_constant",
    "radial_integral",
    "sphere_constant",
    "weight",
    "DEFAULT_QUAD",
    "QuadratureSpec",
    "InequalityReport",
    "WeightSpec",
    "calderon_majorant",
    "decreasing_rearrangement",
    "distribution_function",
    "hardy_condition_dual",
    "hardy_condition_primal",
    "rearrangement_numeric",
    "theorem41_conditions",
    "RieszParams",
    "decay_fit",
    "empirical_two_weight",
    "fractional_maximal",
    "psi_probe",
    "riesz_multiplier_radial",
    "riesz_subordination",
    "dunkl_gradient_norm",
    "dunkl_operator",
    "riesz_transform_multiplier_1d",
    "sobolev_ratio",
    "theorem42_conditions",
    "translate_gaussian",
    "translate_radial_1d",
    "translation_mass_check",
    "__version__",
]
