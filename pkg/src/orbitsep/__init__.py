"""Orbit-separating invariant transforms for finite Abelian group actions
on complex signal spaces, with exact Hermite-normal-form rational invariants
and a brute-force orbit-metric oracle."""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    DimensionError,
    DomainError,
    InternalCheckError,
    OrbitsepError,
)
from .exponents import (
    ExponentTable,
    build_exponent_table,
    minimal_pair,
    minimal_single,
    minimal_triple,
    oracle_minimal,
    table_as_dict,
)
from .groups import (
    ENUMERATION_CAP,
    GroupSpec,
    act,
    cyclic_shift_spec,
    enumerate_group,
    from_fourier,
    make_group,
    shift_action_spec,
    shift_image,
    to_fourier,
)
from .hermite import (
    CounterexampleResult,
    HermiteData,
    RationalInvariantResult,
    ae_projection_check,
    construct_counterexample,
    cyclic_fixture_block,
    cyclic_fixture_data,
    eval_rational_invariants,
    eval_scaled_invariants,
    hermite_multiplier,
    hermite_normal_form,
    integer_determinant,
    scaling_vector,
    signed_quadratic,
)
from .metric import (
    OrbitDistanceResult,
    child_seed,
    equivalent,
    lipschitz_ratio_scan,
    orbit_distance,
    sample_pair,
)
from .transforms import (
    BetaWeights,
    InvariantVector,
    LinearReduction,
    check_npp,
    default_beta,
    default_reduction,
    eval_lowdim,
    eval_monomial_map,
    eval_norm_scaled,
    eval_phase_map,
    lipschitz_bound,
    make_reduction,
)

__all__ = [
    "__version__",
    "OrbitsepError",
    "ConfigError",
    "DimensionError",
    "DomainError",
    "InternalCheckError",
    "ENUMERATION_CAP",
    "GroupSpec",
    "make_group",
    "act",
    "enumerate_group",
    "shift_action_spec",
    "cyclic_shift_spec",
    "shift_image",
    "to_fourier",
    "from_fourier",
    "ExponentTable",
    "build_exponent_table",
    "minimal_single",
    "minimal_pair",
    "minimal_triple",
    "oracle_minimal",
    "table_as_dict",
    "InvariantVector",
    "BetaWeights",
    "default_beta",
    "eval_monomial_map",
    "eval_phase_map",
    "eval_norm_scaled",
    "eval_lowdim",
    "LinearReduction",
    "make_reduction",
    "default_reduction",
    "lipschitz_bound",
    "check_npp",
    "HermiteData",
    "RationalInvariantResult",
    "CounterexampleResult",
    "hermite_normal_form",
    "integer_determinant",
    "scaling_vector",
    "hermite_multiplier",
    "cyclic_fixture_block",
    "cyclic_fixture_data",
    "eval_rational_invariants",
    "signed_quadratic",
    "eval_scaled_invariants",
    "construct_counterexample",
    "ae_projection_check",
    "OrbitDistanceResult",
    "orbit_distance",
    "equivalent",
    "sample_pair",
    "child_seed",
    "lipschitz_ratio_scan",
]
