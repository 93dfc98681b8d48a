"""How far the combination rule drifts from the exact table.

For a body of evidence the direct route conditions the joint table on the
whole conjunction, while the combined route folds the per-literal measures
through the parallel combination rule. The absolute differences between
the two routes, stream by stream, are the ``m1``/``m2``/``cf`` gaps; a
problem is consistent at a tolerance when the relevant gap stays under it.

``product_condition_gap`` measures the same pairwise property through an
independent algebraic route: for two confirming items the belief streams
agree exactly when ``P(~h|ab) * P(~h) = P(~h|a) * P(~h|b)``, and for two
disconfirming items the disbelief streams agree exactly when
``P(h|ab) * P(h) = P(h|a) * P(h|b)``. The survey below checks that the
two routes reach the same verdict distribution-by-distribution.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .cf import BeliefMeasures, cf_direct, fold_combine
from .errors import (
    DuplicateAttribute,
    EverythingSkipped,
    InvalidBeliefMeasure,
    LengthMismatch,
    NotSameDirection,
    ZeroProbabilityEvidence,
)
from .model import Event, JointDistribution, Literal, Problem
from .oracle import conditional, marginal


@dataclass(frozen=True)
class GapRecord:
    """Direct versus combined measures for one evidence conjunction."""

    event: Event
    direct: BeliefMeasures
    combined: BeliefMeasures
    m1_gap: float
    m2_gap: float
    cf_gap: float


@dataclass(frozen=True)
class LemmaGaps:
    """Gap aggregates over all full evidence assignments of a problem."""

    m1_gap_max: float
    m1_gap_mean: float
    m2_gap_max: float
    m2_gap_mean: float
    cf_gap_max: float
    cf_gap_mean: float
    evaluated: int
    skipped: int


def per_literal_measures(
    dist: JointDistribution, problem: Problem, event: Event
) -> list[BeliefMeasures]:
    """Direct measures of each literal in the event, taken in isolation."""
    problem.check_evidence_event(event)
    return [cf_direct(dist, problem, Event((lit,))) for lit in event.literals]


def evidence_gap(
    dist: JointDistribution, problem: Problem, event: Event
) -> GapRecord:
    """Compare the two routes on one conjunction of evidence literals.

    The direct route runs first, so a zero-probability conjunction raises
    before any combination is attempted.
    """
    if not event.literals:
        raise LengthMismatch("gap comparison needs at least one evidence literal")
    direct = cf_direct(dist, problem, event)
    combined = fold_combine(per_literal_measures(dist, problem, event))
    return GapRecord(
        event=event,
        direct=direct,
        combined=combined,
        m1_gap=abs(direct.mb - combined.mb),
        m2_gap=abs(direct.md - combined.md),
        cf_gap=abs(direct.cf - combined.cf),
    )


def gap_record(
    dist: JointDistribution, problem: Problem, assignment: Mapping[int, bool]
) -> GapRecord:
    """Gap record for one full true/false assignment of all evidence attributes."""
    missing = [a for a in problem.evidence if a not in assignment]
    if missing:
        raise LengthMismatch(
            f"assignment misses evidence attributes {missing}, all must be set"
        )
    event = problem.evidence_event({a: bool(assignment[a]) for a in problem.evidence})
    return evidence_gap(dist, problem, event)


def lemma_gaps(dist: JointDistribution, problem: Problem) -> LemmaGaps:
    """Max and mean gaps over every full evidence assignment.

    Assignments whose conjunction has zero probability have no direct
    measures; they are skipped and counted. If nothing survives there is
    no aggregate to report and ``EverythingSkipped`` is raised.
    """
    records: list[GapRecord] = []
    skipped = 0
    for values in itertools.product((False, True), repeat=len(problem.evidence)):
        assignment = dict(zip(problem.evidence, values))
        try:
            records.append(gap_record(dist, problem, assignment))
        except ZeroProbabilityEvidence:
            skipped += 1
    if not records:
        raise EverythingSkipped(
            "every full evidence assignment has zero probability"
        )
    count = len(records)
    return LemmaGaps(
        m1_gap_max=max(r.m1_gap for r in records),
        m1_gap_mean=sum(r.m1_gap for r in records) / count,
        m2_gap_max=max(r.m2_gap for r in records),
        m2_gap_mean=sum(r.m2_gap for r in records) / count,
        cf_gap_max=max(r.cf_gap for r in records),
        cf_gap_mean=sum(r.cf_gap for r in records) / count,
        evaluated=count,
        skipped=skipped,
    )


def product_condition_gap(
    dist: JointDistribution,
    problem: Problem,
    lit_a: Literal,
    lit_b: Literal,
    branch: str,
) -> float:
    """Algebraic agreement test for one pair of same-direction literals.

    ``branch='mb'`` requires both literals to confirm the hypothesis
    (posterior >= prior; a neutral literal qualifies) and returns
    ``|P(~h|ab) * P(~h) - P(~h|a) * P(~h|b)|``. ``branch='md'`` mirrors it
    for disconfirming literals on the hypothesis-true side. A zero gap is
    exactly the condition under which the corresponding combination stream
    reproduces the direct value.
    """
    if branch not in ("mb", "md"):
        raise InvalidBeliefMeasure(f"branch must be 'mb' or 'md', got {branch!r}")
    if lit_a.attr == lit_b.attr:
        raise DuplicateAttribute("product condition needs two distinct attributes")
    pair = Event((lit_a, lit_b))
    problem.check_evidence_event(pair)
    h_true = problem.hypothesis_event(True)
    prior = marginal(dist, h_true)
    pa = conditional(dist, h_true, Event((lit_a,)))
    pb = conditional(dist, h_true, Event((lit_b,)))
    pab = conditional(dist, h_true, pair)
    if branch == "mb":
        if pa < prior or pb < prior:
            raise NotSameDirection("mb branch needs both literals to confirm")
        return abs((1.0 - pab) * (1.0 - prior) - (1.0 - pa) * (1.0 - pb))
    if pa > prior or pb > prior:
        raise NotSameDirection("md branch needs both literals to disconfirm")
    return abs(pab * prior - pa * pb)


def pair_stream_gap(
    dist: JointDistribution,
    problem: Problem,
    lit_a: Literal,
    lit_b: Literal,
    branch: str,
) -> float:
    """Pairwise m1 or m2 gap computed through the production fold path."""
    if branch not in ("mb", "md"):
        raise InvalidBeliefMeasure(f"branch must be 'mb' or 'md', got {branch!r}")
    record = evidence_gap(dist, problem, Event((lit_a, lit_b)))
    return record.m1_gap if branch == "mb" else record.m2_gap


@dataclass(frozen=True)
class EquivalenceSurvey:
    """Verdict agreement between the algebraic and fold routes on one problem."""

    evaluated: int
    agreements: int
    borderline: int
    hard_disagreements: int
    mixed_direction: int
    skipped_zero_probability: int
    max_mb_product_gap: float
    max_md_product_gap: float


def equivalence_survey(
    dist: JointDistribution,
    problem: Problem,
    tol: float = 1e-9,
    hard_low: float = 1e-12,
    hard_high: float = 1e-6,
) -> EquivalenceSurvey:
    """Run both pairwise routes over every literal pair of the problem.

    For each unordered pair of evidence attributes and each of the four
    polarity choices, the pair is checked on whichever branch its direction
    qualifies it for. The two routes agree when they land on the same side
    of ``tol``; a disagreement is hard when one route is at or below
    ``hard_low`` while the other exceeds ``hard_high``.
    """
    evaluated = agreements = borderline = hard = mixed = skipped = 0
    max_mb = 0.0
    max_md = 0.0
    h_true = problem.hypothesis_event(True)
    prior = marginal(dist, h_true)
    for i, j in itertools.combinations(problem.evidence, 2):
        for va, vb in itertools.product((True, False), repeat=2):
            lit_a = Literal(i, va)
            lit_b = Literal(j, vb)
            try:
                pa = conditional(dist, h_true, Event((lit_a,)))
                pb = conditional(dist, h_true, Event((lit_b,)))
                branches = []
                if pa >= prior and pb >= prior:
                    branches.append("mb")
                if pa <= prior and pb <= prior:
                    branches.append("md")
                if not branches:
                    mixed += 1
                    continue
                for branch in branches:
                    product_gap = product_condition_gap(
                        dist, problem, lit_a, lit_b, branch
                    )
                    stream_gap = pair_stream_gap(dist, problem, lit_a, lit_b, branch)
                    if branch == "mb":
                        max_mb = max(max_mb, product_gap)
                    else:
                        max_md = max(max_md, product_gap)
                    evaluated += 1
                    if (product_gap <= tol) == (stream_gap <= tol):
                        agreements += 1
                    elif (
                        min(product_gap, stream_gap) <= hard_low
                        and max(product_gap, stream_gap) > hard_high
                    ):
                        hard += 1
                    else:
                        borderline += 1
            except ZeroProbabilityEvidence:
                skipped += 1
    return EquivalenceSurvey(
        evaluated=evaluated,
        agreements=agreements,
        borderline=borderline,
        hard_disagreements=hard,
        mixed_direction=mixed,
        skipped_zero_probability=skipped,
        max_mb_product_gap=max_mb,
        max_md_product_gap=max_md,
    )
