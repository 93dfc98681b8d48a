"""Certainty-factor belief calculus audited against exact Bayesian updating.

The package models small binary worlds as dense joint probability tables,
computes exact posteriors by enumeration, evaluates belief/disbelief
measures both directly from the table and through the parallel combination
rule, classifies problems by how decomposable their evidence is, audits
how often the two routes agree across sampled distribution families, and
searches for evidence groupings that make a factorized surrogate posterior
accurate. A FastAPI service exposes every operation and the CLI is a thin
client over it.
"""

from __future__ import annotations

from .audit import (
    AuditConfig,
    AuditReport,
    AuditRow,
    ROW_COLUMNS,
    SUMMARY_COLUMNS,
    SummaryRow,
    TOLERANCE_GRID,
    build_summary,
    run_audit,
)
from .cf import (
    BeliefMeasures,
    cf_direct,
    combine,
    combine_mb,
    combine_md,
    fold_combine,
    mb_of,
    md_of,
    measures_from_probabilities,
)
from .classify import (
    CLASS_RANK,
    ClassificationReport,
    DEFAULT_CLASS_TOLERANCE,
    IndependenceVariant,
    ProblemClass,
    classify,
    classify_from_gaps,
    conditional_independence_gap,
    conditional_mutual_information,
    marginal_independence_gap,
)
from .consistency import (
    EquivalenceSurvey,
    GapRecord,
    LemmaGaps,
    equivalence_survey,
    evidence_gap,
    gap_record,
    lemma_gaps,
    pair_stream_gap,
    per_literal_measures,
    product_condition_gap,
)
from .decompose import (
    DecompositionReport,
    EvidencePartition,
    MergeStep,
    PartitionError,
    approx_predictive_solution,
    greedy_decompose,
    partition_error,
    validate_partition,
)
from .errors import (
    CfBayesError,
    ComputationError,
    ContradictoryCertainty,
    DuplicateAttribute,
    EverythingSkipped,
    InputError,
    InvalidBeliefMeasure,
    InvalidPartition,
    InvalidSpace,
    LengthMismatch,
    MassNotOne,
    NegativeMass,
    NotEvidenceAttribute,
    NotSameDirection,
    SpaceTooLarge,
    UnknownAttribute,
    UnknownFamily,
    ZeroProbabilityEvidence,
)
from .fixtures import (
    FIXTURE_ATTRIBUTES,
    FIXTURE_TABLES,
    fixture,
    fixture_names,
    fixture_problem,
    write_fixture_files,
)
from .model import (
    Event,
    JointDistribution,
    Literal,
    MAX_ATTRIBUTES,
    Problem,
    PropositionalSpace,
    SURE_EVENT,
    distribution_from_dict,
    event_mask,
    event_states,
    full_assignments,
    load_distribution,
    save_distribution,
    state_index,
    validate_distribution,
)
from .oracle import (
    ZERO_EVIDENCE_TOLERANCE,
    conditional,
    diagnostic_probability,
    marginal,
    predictive_solution,
)
from .sampling import FAMILIES, default_space, sample_distribution

__version__ = "0.1.0"

__all__ = [
    "AuditConfig",
    "AuditReport",
    "AuditRow",
    "BeliefMeasures",
    "CLASS_RANK",
    "CfBayesError",
    "ClassificationReport",
    "ComputationError",
    "ContradictoryCertainty",
    "DEFAULT_CLASS_TOLERANCE",
    "DecompositionReport",
    "DuplicateAttribute",
    "EquivalenceSurvey",
    "Event",
    "EverythingSkipped",
    "EvidencePartition",
    "FAMILIES",
    "FIXTURE_ATTRIBUTES",
    "FIXTURE_TABLES",
    "GapRecord",
    "IndependenceVariant",
    "InputError",
    "InvalidBeliefMeasure",
    "InvalidPartition",
    "InvalidSpace",
    "JointDistribution",
    "LemmaGaps",
    "LengthMismatch",
    "Literal",
    "MAX_ATTRIBUTES",
    "MassNotOne",
    "MergeStep",
    "NegativeMass",
    "NotEvidenceAttribute",
    "NotSameDirection",
    "PartitionError",
    "Problem",
    "ProblemClass",
    "PropositionalSpace",
    "ROW_COLUMNS",
    "SUMMARY_COLUMNS",
    "SURE_EVENT",
    "SpaceTooLarge",
    "SummaryRow",
    "TOLERANCE_GRID",
    "UnknownAttribute",
    "UnknownFamily",
    "ZERO_EVIDENCE_TOLERANCE",
    "ZeroProbabilityEvidence",
    "approx_predictive_solution",
    "build_summary",
    "cf_direct",
    "classify",
    "classify_from_gaps",
    "combine",
    "combine_mb",
    "combine_md",
    "conditional",
    "conditional_independence_gap",
    "conditional_mutual_information",
    "default_space",
    "diagnostic_probability",
    "distribution_from_dict",
    "equivalence_survey",
    "event_mask",
    "event_states",
    "evidence_gap",
    "fixture",
    "fixture_names",
    "fixture_problem",
    "write_fixture_files",
    "fold_combine",
    "full_assignments",
    "gap_record",
    "greedy_decompose",
    "lemma_gaps",
    "load_distribution",
    "marginal",
    "marginal_independence_gap",
    "mb_of",
    "md_of",
    "measures_from_probabilities",
    "pair_stream_gap",
    "partition_error",
    "per_literal_measures",
    "predictive_solution",
    "product_condition_gap",
    "run_audit",
    "sample_distribution",
    "save_distribution",
    "state_index",
    "validate_distribution",
    "validate_partition",
]
