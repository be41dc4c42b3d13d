# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""
The `jacobi-spectra` package.

Self-adjointness criteria, truncation spectra, orthogonal polynomials and continued fractions
for Jacobi operators given by coefficient sequences `a_n > 0` and `b_n`.
"""

__version__ = '0.1.0'

# Package functionality
from ._cfrac import (
    POLE,
    CFEvaluation,
    approximant,
    convergence_scan,
    rectangular_grid,
    resolvent_11,
)
from ._coeffseq import (
    BranchRule,
    CoefficientSpec,
    ListOverride,
    PowerTerm,
    RecursiveRule,
    ResidueOverride,
    SquaresOverride,
    TabulatedRule,
    asymptotic_exponent,
    eval_a,
    eval_b,
)
from ._conditions import (
    BatteryReport,
    Criterion,
    Evidence,
    GValue,
    Mode,
    Outcome,
    RatioFactors,
    Verdict,
    G_full,
    G_plus,
    G_tilde,
    check_Bm,
    check_carleman,
    check_cojuhari_janas,
    check_Cm,
    check_dennis_wall,
    check_Dm,
    check_janas_naboko,
    check_liminf_Gm,
    check_limit_Gm_zero,
    check_weak,
    evaluate_G,
    ratio_factors,
    recursion_check_G_tilde,
    run_battery,
    sample_G,
)
from ._config import AnalysisConfig, CFGrid
from ._exceptions import (
    CoefficientDomainError,
    ConfigError,
    DegeneratePivotError,
    NumericalError,
)
from ._multiindex import (
    MAX_ORDER,
    MultiIndexPair,
    MultiIndexSet,
    Variant,
    cardinality,
    generate,
    is_valid,
)
from ._orthopoly import (
    CDCheck,
    PartialSums,
    PolySequence,
    cd0_check,
    cd_check,
    eval_poly,
    recurrence_residuals,
    sumsq_trend,
    sumsq_vi,
    zero_count,
    zeros_p,
)
from ._pandas_accessors import DataFrameAccessor as _DataFrameAccessor
from ._pandas_accessors import SeriesAccessor as _SeriesAccessor
from ._presets import PRESETS, Preset, build_preset
from ._sequence_tables import SequenceTable
from ._spectra import (
    EigenPair,
    LimitCandidate,
    LimitPointReport,
    ResidualSplit,
    Truncation,
    F_bound,
    delta_expansion,
    eigenpairs,
    eigenvalue_count,
    eigenvalues,
    eigenvector,
    interlacing_check,
    limit_points,
    residual_split,
    truncate,
)
from ._verify import VerificationReport, run_verification

# Register custom accessors
import pandas as _pd  # noqa: E402

_pd.api.extensions.register_series_accessor('jacobi')(_SeriesAccessor)
_pd.api.extensions.register_dataframe_accessor('jacobi')(_DataFrameAccessor)

# Public API
__all__ = [
    'MAX_ORDER',
    'POLE',
    'PRESETS',
    'AnalysisConfig',
    'BatteryReport',
    'BranchRule',
    'CDCheck',
    'CFEvaluation',
    'CFGrid',
    'CoefficientDomainError',
    'CoefficientSpec',
    'ConfigError',
    'Criterion',
    'DegeneratePivotError',
    'EigenPair',
    'Evidence',
    'F_bound',
    'GValue',
    'G_full',
    'G_plus',
    'G_tilde',
    'LimitCandidate',
    'LimitPointReport',
    'ListOverride',
    'Mode',
    'MultiIndexPair',
    'MultiIndexSet',
    'NumericalError',
    'Outcome',
    'PartialSums',
    'PolySequence',
    'PowerTerm',
    'Preset',
    'RatioFactors',
    'RecursiveRule',
    'ResidualSplit',
    'ResidueOverride',
    'SequenceTable',
    'SquaresOverride',
    'TabulatedRule',
    'Truncation',
    'Variant',
    'Verdict',
    'VerificationReport',
    'approximant',
    'asymptotic_exponent',
    'build_preset',
    'cardinality',
    'cd0_check',
    'cd_check',
    'check_Bm',
    'check_Cm',
    'check_Dm',
    'check_carleman',
    'check_cojuhari_janas',
    'check_dennis_wall',
    'check_janas_naboko',
    'check_liminf_Gm',
    'check_limit_Gm_zero',
    'check_weak',
    'convergence_scan',
    'delta_expansion',
    'eigenpairs',
    'eigenvalue_count',
    'eigenvalues',
    'eigenvector',
    'eval_a',
    'eval_b',
    'eval_poly',
    'evaluate_G',
    'generate',
    'interlacing_check',
    'is_valid',
    'limit_points',
    'ratio_factors',
    'rectangular_grid',
    'recurrence_residuals',
    'recursion_check_G_tilde',
    'residual_split',
    'resolvent_11',
    'run_battery',
    'run_verification',
    'sample_G',
    'sumsq_trend',
    'sumsq_vi',
    'truncate',
    'zero_count',
    'zeros_p',
]
