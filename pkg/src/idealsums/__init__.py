"""Arithmetic functions on the ideals of a number field, at desk scale.

The package computes splitting types of rational primes, enumerates
integral ideals by norm (the exact oracle), sieves aggregated Dirichlet
coefficients of the zeta-type series attached to the field, evaluates the
classical partial sums and their asymptotic laws empirically, and realizes
a truncated contour-integral (Perron) recovery of partial sums with an
explicit, testable error budget.
"""

__version__ = "0.1.0"

from .errors import (
    FieldConfigError,
    IdealSumsError,
    InvalidPerronConfigError,
    NormOverflowError,
    UnsupportedPrimeError,
)
from .fields import (
    FieldSpec,
    Invariants,
    PrimeIdealRef,
    SplittingType,
    kronecker_symbol,
    load_field,
    parse_field_spec,
    split_prime,
)
from .ideals import (
    IdealFactored,
    UNIT_IDEAL,
    divisor_count,
    enumerate_ideals,
    ideal_count_oracle,
    liouville,
    make_ideal,
    mobius,
    prime_ideals_up_to,
    von_mangoldt,
)
from .perron import (
    PerronConfig,
    PerronReport,
    classical_perron,
    eval_dirichlet_polynomial,
    half_integer,
    perron_truncated,
    vertical_line_integral,
)
from .polyfactor import factor_poly_mod_p
from .series import (
    CoeffTable,
    SeriesKind,
    TableStore,
    coefficients,
    dilate_to_2s,
    dirichlet_invert,
    dirichlet_multiply,
    local_factor,
)
from .sums import (
    ExponentFit,
    PartialSumSeries,
    ResidueEstimate,
    SumKind,
    estimate_residue_and_delta,
    fit_error_exponent,
    geometric_checkpoints,
    hyperbola_sum,
    partial_sums,
    residue_from_formula,
    residuals_for_target,
    verify_j_identity,
    verify_liouville_from_mobius,
    verify_mertens_bridge,
    verify_psi_decomposition,
)

__all__ = [
    "__version__",
    "CoeffTable",
    "ExponentFit",
    "FieldConfigError",
    "FieldSpec",
    "IdealFactored",
    "IdealSumsError",
    "Invariants",
    "InvalidPerronConfigError",
    "NormOverflowError",
    "PartialSumSeries",
    "PerronConfig",
    "PerronReport",
    "PrimeIdealRef",
    "ResidueEstimate",
    "SeriesKind",
    "SplittingType",
    "SumKind",
    "TableStore",
    "UNIT_IDEAL",
    "UnsupportedPrimeError",
    "classical_perron",
    "coefficients",
    "dilate_to_2s",
    "dirichlet_invert",
    "dirichlet_multiply",
    "divisor_count",
    "enumerate_ideals",
    "estimate_residue_and_delta",
    "eval_dirichlet_polynomial",
    "factor_poly_mod_p",
    "fit_error_exponent",
    "geometric_checkpoints",
    "half_integer",
    "hyperbola_sum",
    "ideal_count_oracle",
    "kronecker_symbol",
    "liouville",
    "load_field",
    "local_factor",
    "make_ideal",
    "mobius",
    "parse_field_spec",
    "partial_sums",
    "perron_truncated",
    "prime_ideals_up_to",
    "residue_from_formula",
    "residuals_for_target",
    "split_prime",
    "verify_j_identity",
    "verify_liouville_from_mobius",
    "verify_mertens_bridge",
    "verify_psi_decomposition",
    "vertical_line_integral",
    "von_mangoldt",
]
