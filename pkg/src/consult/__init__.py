"""Diagnosis-and-treatment decision engine.

A two-layer noisy-OR belief network (diseases over manifestations) with a
treatment/utility layer on top. The engine computes disease posteriors by
several methods, derives per-treatment probability thresholds, reduces
the comprehensive model to a case-specific one by clamping never-warranted
treatments, and quantifies when that reduction changes the recommendation.
"""

from .decision import (
    UNATTAINABLE,
    ComprehensiveSolution,
    ThresholdTable,
    compute_threshold,
    expected_utility,
    solve_comprehensive,
    threshold_table,
    utility_of_state,
)
from .errors import (
    CapExceededError,
    ConstructionError,
    ConsultError,
    InfeasibleSpecError,
    InvalidModelError,
    ParseError,
    StaleThresholdsError,
    ZeroEvidenceError,
)
from .formulation import (
    ACTIVE,
    CLAMPED_FALSE,
    Policy,
    PruneDecision,
    Recommendation,
    ReducedModel,
    formulate,
    formulate_full,
    prune_treatments,
    reduce_model,
    solve_reduced,
)
from .generate import GeneratorSpec, generate_kb
from .harness import (
    ExperimentSpec,
    SoundnessReport,
    UnsoundCase,
    cost_report,
    find_unsound_case,
    random_findings,
    run_soundness_experiment,
    sample_patient_findings,
)
from .inference import (
    PosteriorReport,
    SampleBudget,
    bounded_posteriors,
    joint_posterior,
    mc_posteriors,
    oracle_posteriors,
    quickscore_posteriors,
)
from .kb import (
    Disease,
    Findings,
    KnowledgeBase,
    Link,
    Manifestation,
    SubvalueNode,
    Treatment,
    Violation,
    findings_hash,
    kb_hash,
    kb_stats,
    load_findings,
    load_kb,
    save_findings,
    save_kb,
    validate_findings,
    validate_kb,
)

__version__ = "0.1.0"
