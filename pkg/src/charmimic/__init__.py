"""Character sums, multiplicative mimicry distances, and arc diagnostics.

The package computes twisted partial sums of multiplicative functions,
measures how closely a function imitates a primitive character times a
power twist, classifies phases into rational-approximation arcs, and
searches modulus ranges for characters with prescribed values at small
primes.  Everything numeric is either exact (root-of-unity arithmetic on
integer exponents) or compensated (fsum-based accumulation), and every
randomized sweep is seeded.
"""
from .accum import KahanAccumulator, csum, csum_array, fsum_real
from .arith import (
    Factorization,
    ResourceCapError,
    UnitGroup,
    crt,
    discrete_log,
    divisor_count,
    divisors,
    factor,
    is_prime,
    is_smooth,
    moebius,
    multiplicative_order,
    prime_array,
    primes_up_to,
    primitive_root,
    set_cache_dir,
    totient,
    unit_group,
)
from .characters import (
    DirichletCharacter,
    character,
    characters_mod,
    chi_minus4,
    coset_count,
    enumerate_characters,
    gauss_sum,
    gauss_sum_induced,
    induce,
    legendre,
    primitive_characters,
    principal,
)
from .config import RunConfig
from .dioph import (
    ArcClass,
    RationalApprox,
    approx_window,
    classify_arc,
    continued_fraction,
    dirichlet_approx,
    effective_length,
)
from .expsums import (
    SumProfile,
    char_sum,
    char_sum_fourier,
    coprime_split_residual,
    max_char_sum,
    smooth_indicator,
    twisted_sum_sides,
    two_sided_sum,
    unit_phase,
    unit_phases,
    weighted_expsum,
    weighted_profile,
)
from .extremal import (
    GrowthRecord,
    GrowthSummary,
    TargetPattern,
    build_target,
    candidate_moduli,
    growth_report,
    paley_baseline,
    search_matching_character,
    sweep_matching,
    verify_matched_prefix,
)
from .mimicry import (
    EquidistTable,
    MimicryReport,
    NearestResult,
    ScanTable,
    distance,
    distance_ratio_scan,
    distance_sq,
    equidistribution_diagnostic,
    nearest_primitive,
    nearest_twist_distance,
)
from .multfun import (
    CMFunction,
    SupportError,
    from_character,
    from_prime_pattern,
    mul,
    one,
    random_disc,
    random_unimodular,
    smooth_restrict,
    twist,
    values_up_to,
)
from .theory import (
    BoundValue,
    MinAverageParams,
    cosine_bump,
    cosine_bump_mean,
    cosine_bump_mean_numeric,
    major_arc_bound,
    mean_value_bound,
    min_average_closed,
    min_average_direct,
    min_average_floor,
    minor_arc_bound,
    root_approx_defect,
    smooth_expsum_bound,
)
from .verify import SUITES, CaseResult, SuiteReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "ArcClass",
    "BoundValue",
    "CMFunction",
    "CaseResult",
    "DirichletCharacter",
    "EquidistTable",
    "Factorization",
    "GrowthRecord",
    "GrowthSummary",
    "KahanAccumulator",
    "MimicryReport",
    "MinAverageParams",
    "NearestResult",
    "RationalApprox",
    "ResourceCapError",
    "RunConfig",
    "SUITES",
    "ScanTable",
    "SuiteReport",
    "SumProfile",
    "SupportError",
    "TargetPattern",
    "UnitGroup",
    "approx_window",
    "build_target",
    "candidate_moduli",
    "char_sum",
    "char_sum_fourier",
    "character",
    "characters_mod",
    "chi_minus4",
    "classify_arc",
    "continued_fraction",
    "coprime_split_residual",
    "coset_count",
    "cosine_bump",
    "cosine_bump_mean",
    "cosine_bump_mean_numeric",
    "crt",
    "csum",
    "csum_array",
    "dirichlet_approx",
    "discrete_log",
    "distance",
    "distance_ratio_scan",
    "distance_sq",
    "divisor_count",
    "divisors",
    "effective_length",
    "enumerate_characters",
    "equidistribution_diagnostic",
    "factor",
    "from_character",
    "from_prime_pattern",
    "fsum_real",
    "gauss_sum",
    "gauss_sum_induced",
    "growth_report",
    "induce",
    "is_prime",
    "is_smooth",
    "legendre",
    "major_arc_bound",
    "max_char_sum",
    "mean_value_bound",
    "min_average_closed",
    "min_average_direct",
    "min_average_floor",
    "minor_arc_bound",
    "moebius",
    "mul",
    "multiplicative_order",
    "nearest_primitive",
    "nearest_twist_distance",
    "one",
    "paley_baseline",
    "prime_array",
    "primes_up_to",
    "primitive_characters",
    "primitive_root",
    "principal",
    "random_disc",
    "random_unimodular",
    "root_approx_defect",
    "run_suite",
    "search_matching_character",
    "set_cache_dir",
    "smooth_expsum_bound",
    "smooth_indicator",
    "smooth_restrict",
    "sweep_matching",
    "totient",
    "twist",
    "twisted_sum_sides",
    "two_sided_sum",
    "unit_group",
    "unit_phase",
    "unit_phases",
    "values_up_to",
    "verify_matched_prefix",
    "weighted_expsum",
    "weighted_profile",
]
