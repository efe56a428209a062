"""Process-maturity assessment toolkit.

Pairwise-comparison prioritization with consistency checking, practice
scoring with maturity-level gating, a criticality filter over frequency
evidence, and the statistics used to compare evidence sources. Exposed as
a library, a CLI (``mmk``), and an HTTP service.
"""

__version__ = "1.0.0"

from .ahp import (
    ConsistencyReport,
    GlobalEntry,
    GlobalRanking,
    Hierarchy,
    InconsistencyHint,
    PairwiseMatrix,
    PriorityVector,
    ScaleWarning,
    WeightMethod,
    aggregate_global,
    build_matrix,
    consistency_report,
    estimate_lambda_max,
    format_judgment,
    inconsistency_hint,
    parse_hierarchy_document,
    parse_matrix_document,
    priority_weights,
    rank_weights,
    serialize_hierarchy,
    serialize_matrix,
)
from .errors import (
    ConflictError,
    ConvergenceError,
    DomainError,
    MmkError,
    NotFoundError,
    SchemaError,
)
from .model import (
    Factor,
    FactorKind,
    FrequencyRecord,
    Level,
    MaturityModel,
    ModelRegistry,
    Practice,
    bundled_sre_himm,
    criticality_filter,
    default_registry,
    parse_frequency_records,
    parse_model,
    serialize_model,
    validate_model,
)
from .motorola import (
    DimensionScores,
    FactorAssessment,
    FactorPlan,
    LevelAssessment,
    MaturityReport,
    PracticeAssessment,
    PracticeRaise,
    Status,
    WeakFactor,
    WhatIfPlan,
    apply_plan,
    assess_maturity,
    factor_score,
    gate_levels,
    parse_scores_document,
    plan_to_dict,
    practice_score,
    report_to_dict,
    serialize_scores,
    whatif_plan,
)
from .stats import (
    CorrelationResult,
    LeveneCenter,
    LeveneResult,
    LikertTally,
    SummaryStats,
    TTestResult,
    TTestVariant,
    TallyPercentages,
    f_sf,
    levene_test,
    parse_likert_document,
    parse_rank_series,
    pearson_r,
    regularized_incomplete_beta,
    t_sf_two_tailed,
    t_test_from_samples,
    t_test_from_summary,
    tally_percentages,
)
from .store import (
    ClearMutation,
    MatrixMutation,
    ScoresMutation,
    Session,
    SessionMatrix,
    SessionStore,
    resolve_data_dir,
)

__all__ = [name for name in dir() if not name.startswith("_")]
