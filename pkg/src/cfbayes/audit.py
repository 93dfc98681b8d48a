"""Batch consistency audits over sampled distribution families.

An audit samples ``count`` distributions per family, classifies each one
under all three independence variants, measures its combination gaps over
all full evidence assignments, and cross-tabulates consistency verdicts
against class labels over a tolerance grid. Row ``i`` of a family uses
seed ``config.seed + i``, so audits are reproducible and families are
comparable seed by seed.

Reports render to CSV with ``repr`` floats (shortest round-trip form) and
``\n`` line endings, which makes equal configs produce byte-identical
files. Worker threads only change wall time, never content, because every
row is a pure function of its (family, k, seed) triple.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .classify import (
    DEFAULT_CLASS_TOLERANCE,
    IndependenceVariant,
    ProblemClass,
    classify_from_gaps,
    conditional_independence_gap,
    marginal_independence_gap,
)
from .consistency import lemma_gaps
from .errors import ComputationError, InputError, UnknownFamily
from .model import JointDistribution, Problem
from .sampling import FAMILIES, sample_distribution

TOLERANCE_GRID = (1e-12, 1e-9, 1e-6, 1e-3)

LEMMAS = ("m1", "m2", "cf")

ROW_COLUMNS = (
    "dist_id",
    "family",
    "seed",
    "k",
    "class_strict",
    "class_hfalse",
    "class_symmetric",
    "ci_gap_htrue",
    "ci_gap_hfalse",
    "marginal_gap",
    "m1_gap_max",
    "m1_gap_mean",
    "m2_gap_max",
    "m2_gap_mean",
    "cf_gap_max",
    "cf_gap_mean",
    "skipped_assignments",
)

SUMMARY_COLUMNS = (
    "lemma",
    "variant",
    "tolerance",
    "class",
    "consistent_count",
    "inconsistent_count",
)


@dataclass(frozen=True)
class AuditConfig:
    families: tuple[str, ...]
    count: int
    k: int
    seed: int = 0
    tolerances: tuple[float, ...] = TOLERANCE_GRID
    class_tol: float = DEFAULT_CLASS_TOLERANCE
    threads: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "families", tuple(self.families))
        object.__setattr__(
            self, "tolerances", tuple(float(t) for t in self.tolerances)
        )
        if not self.families:
            raise InputError("audit needs at least one family")
        for family in self.families:
            if family not in FAMILIES:
                raise UnknownFamily(
                    f"family {family!r} is not one of {', '.join(FAMILIES)}"
                )
        if self.count < 1:
            raise InputError(f"count must be at least 1, got {self.count}")
        if not self.tolerances or any(t <= 0.0 for t in self.tolerances):
            raise InputError("tolerances must be a non-empty list of positive numbers")
        if self.class_tol <= 0.0:
            raise InputError(f"class_tol must be positive, got {self.class_tol!r}")
        if self.threads < 1:
            raise InputError(f"threads must be at least 1, got {self.threads}")


@dataclass(frozen=True)
class AuditRow:
    """One audited distribution; numeric fields are None only on error rows."""

    dist_id: str
    family: str
    seed: int
    k: int
    class_strict: ProblemClass | None
    class_hfalse: ProblemClass | None
    class_symmetric: ProblemClass | None
    ci_gap_htrue: float | None
    ci_gap_hfalse: float | None
    marginal_gap: float | None
    m1_gap_max: float | None
    m1_gap_mean: float | None
    m2_gap_max: float | None
    m2_gap_mean: float | None
    cf_gap_max: float | None
    cf_gap_mean: float | None
    skipped_assignments: int | None
    error: str | None = None

    def ci_gap(self, variant: IndependenceVariant) -> float:
        """The stored conditional-independence gap seen by a variant."""
        if self.ci_gap_htrue is None or self.ci_gap_hfalse is None:
            raise ComputationError(f"row {self.dist_id} carries no gaps: {self.error}")
        variant = IndependenceVariant(variant)
        if variant is IndependenceVariant.H_TRUE:
            return self.ci_gap_htrue
        if variant is IndependenceVariant.H_FALSE:
            return self.ci_gap_hfalse
        return max(self.ci_gap_htrue, self.ci_gap_hfalse)

    def lemma_gap_max(self, lemma: str) -> float:
        value = {
            "m1": self.m1_gap_max,
            "m2": self.m2_gap_max,
            "cf": self.cf_gap_max,
        }[lemma]
        if value is None:
            raise ComputationError(f"row {self.dist_id} carries no gaps: {self.error}")
        return value


@dataclass(frozen=True)
class SummaryRow:
    lemma: str
    variant: IndependenceVariant
    tolerance: float
    problem_class: ProblemClass
    consistent_count: int
    inconsistent_count: int


@dataclass(frozen=True)
class AuditReport:
    config: AuditConfig
    rows: tuple[AuditRow, ...]
    summary: tuple[SummaryRow, ...]

    def rows_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(ROW_COLUMNS)
        for row in self.rows:
            writer.writerow(
                [
                    row.dist_id,
                    row.family,
                    row.seed,
                    row.k,
                    _cell_class(row, row.class_strict),
                    _cell_class(row, row.class_hfalse),
                    _cell_class(row, row.class_symmetric),
                    _cell_float(row.ci_gap_htrue),
                    _cell_float(row.ci_gap_hfalse),
                    _cell_float(row.marginal_gap),
                    _cell_float(row.m1_gap_max),
                    _cell_float(row.m1_gap_mean),
                    _cell_float(row.m2_gap_max),
                    _cell_float(row.m2_gap_mean),
                    _cell_float(row.cf_gap_max),
                    _cell_float(row.cf_gap_mean),
                    "" if row.skipped_assignments is None else row.skipped_assignments,
                ]
            )
        return out.getvalue()

    def summary_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(SUMMARY_COLUMNS)
        for row in self.summary:
            writer.writerow(
                [
                    row.lemma,
                    row.variant.value,
                    repr(row.tolerance),
                    row.problem_class.value,
                    row.consistent_count,
                    row.inconsistent_count,
                ]
            )
        return out.getvalue()


def audit_distribution(
    dist_id: str,
    family: str,
    seed: int,
    dist: JointDistribution,
    class_tol: float = DEFAULT_CLASS_TOLERANCE,
) -> AuditRow:
    """Audit one distribution with attribute 0 as the hypothesis.

    A distribution on which the gaps are undefined (for the shipped
    families that cannot happen) yields an explicit error row rather than
    silently defaulted numbers.
    """
    problem = Problem(dist.space, 0)
    try:
        ci_true = conditional_independence_gap(
            dist, problem, IndependenceVariant.H_TRUE
        )
        ci_false = conditional_independence_gap(
            dist, problem, IndependenceVariant.H_FALSE
        )
        marginal_gap = marginal_independence_gap(dist, problem)
        gaps = lemma_gaps(dist, problem)
    except ComputationError as exc:
        return AuditRow(
            dist_id=dist_id,
            family=family,
            seed=seed,
            k=dist.space.size,
            class_strict=None,
            class_hfalse=None,
            class_symmetric=None,
            ci_gap_htrue=None,
            ci_gap_hfalse=None,
            marginal_gap=None,
            m1_gap_max=None,
            m1_gap_mean=None,
            m2_gap_max=None,
            m2_gap_mean=None,
            cf_gap_max=None,
            cf_gap_mean=None,
            skipped_assignments=None,
            error=type(exc).__name__,
        )
    return AuditRow(
        dist_id=dist_id,
        family=family,
        seed=seed,
        k=dist.space.size,
        class_strict=classify_from_gaps(ci_true, marginal_gap, class_tol),
        class_hfalse=classify_from_gaps(ci_false, marginal_gap, class_tol),
        class_symmetric=classify_from_gaps(
            max(ci_true, ci_false), marginal_gap, class_tol
        ),
        ci_gap_htrue=ci_true,
        ci_gap_hfalse=ci_false,
        marginal_gap=marginal_gap,
        m1_gap_max=gaps.m1_gap_max,
        m1_gap_mean=gaps.m1_gap_mean,
        m2_gap_max=gaps.m2_gap_max,
        m2_gap_mean=gaps.m2_gap_mean,
        cf_gap_max=gaps.cf_gap_max,
        cf_gap_mean=gaps.cf_gap_mean,
        skipped_assignments=gaps.skipped,
    )


def run_audit(config: AuditConfig) -> AuditReport:
    tasks = [
        (f"{family}-k{config.k}-s{config.seed + i}", family, config.seed + i)
        for family in config.families
        for i in range(config.count)
    ]

    def worker(task: tuple[str, str, int]) -> AuditRow:
        dist_id, family, seed = task
        dist = sample_distribution(family, config.k, seed)
        return audit_distribution(dist_id, family, seed, dist, config.class_tol)

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            rows = tuple(pool.map(worker, tasks))
    else:
        rows = tuple(worker(task) for task in tasks)
    return AuditReport(config=config, rows=rows, summary=build_summary(config, rows))


def build_summary(
    config: AuditConfig, rows: tuple[AuditRow, ...]
) -> tuple[SummaryRow, ...]:
    """Cross-tabulate consistency against class for every lemma, variant, tolerance.

    Classes are recomputed at each grid tolerance from the stored gaps, so
    the table answers "at tolerance t, how often is each class consistent"
    rather than freezing the class at one tolerance. Error rows (which the
    shipped families never produce) are excluded; with none present the
    counts in each summary row sum to the sample size.
    """
    usable = [row for row in rows if row.error is None]
    summary: list[SummaryRow] = []
    for lemma in LEMMAS:
        for variant in IndependenceVariant:
            for tol in config.tolerances:
                counts: dict[ProblemClass, list[int]] = {
                    cls: [0, 0] for cls in ProblemClass
                }
                for row in usable:
                    cls = classify_from_gaps(
                        row.ci_gap(variant), row.marginal_gap, tol
                    )
                    consistent = row.lemma_gap_max(lemma) <= tol
                    counts[cls][0 if consistent else 1] += 1
                for cls in ProblemClass:
                    summary.append(
                        SummaryRow(
                            lemma=lemma,
                            variant=variant,
                            tolerance=tol,
                            problem_class=cls,
                            consistent_count=counts[cls][0],
                            inconsistent_count=counts[cls][1],
                        )
                    )
    return tuple(summary)


def _cell_float(value: float | None) -> str:
    return "" if value is None else repr(float(value))


def _cell_class(row: AuditRow, value: ProblemClass | None) -> str:
    if value is None:
        return f"error:{row.error}"
    return value.value
