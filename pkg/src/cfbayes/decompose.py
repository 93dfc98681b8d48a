"""Grouped surrogate posteriors and greedy evidence partitioning.

A partition of the evidence attributes induces a surrogate posterior that
treats the groups as independent given the hypothesis:

    P'(h | E) = P(h) * prod_g P(E_g | h)  /  sum_v P(v) * prod_g P(E_g | v)

With all evidence in one group the surrogate collapses to the exact
posterior. The greedy search starts from singletons and repeatedly merges
the pair of groups with the highest total conditional mutual information
between their members, until the worst-case surrogate error reaches the
target or no merge is allowed by the group-size limit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .classify import conditional_mutual_information
from .errors import EverythingSkipped, InputError, InvalidPartition, ZeroProbabilityEvidence
from .model import Event, JointDistribution, Problem
from .oracle import (
    ZERO_EVIDENCE_TOLERANCE,
    conditional,
    marginal,
    predictive_solution,
)


@dataclass(frozen=True)
class EvidencePartition:
    """Disjoint groups covering all evidence attributes, in canonical order."""

    groups: tuple[tuple[int, ...], ...]


def validate_partition(
    problem: Problem, groups: Sequence[Sequence[int]]
) -> EvidencePartition:
    """Canonicalize and check a partition against a problem's evidence set."""
    canonical = tuple(
        sorted((tuple(sorted(set(g))) for g in groups), key=lambda g: g[0] if g else -1)
    )
    if any(not g for g in canonical):
        raise InvalidPartition("groups must be non-empty")
    flat = [a for g in canonical for a in g]
    if len(flat) != len(set(flat)):
        raise InvalidPartition("groups must be disjoint")
    if sorted(flat) != sorted(problem.evidence):
        raise InvalidPartition(
            f"groups must cover exactly the evidence attributes {problem.evidence}"
        )
    for group in groups:
        if len(set(group)) != len(tuple(group)):
            raise InvalidPartition("a group may list each attribute once")
    return EvidencePartition(canonical)


def approx_predictive_solution(
    dist: JointDistribution,
    problem: Problem,
    partition: EvidencePartition,
    assignment: Mapping[int, bool],
) -> float:
    """Surrogate posterior that factorizes across partition groups.

    Needs both hypothesis values to carry mass. A group event may have
    zero probability under one hypothesis value; only a vanishing
    normalizer (both products zero) leaves the surrogate undefined.
    """
    partition = validate_partition(problem, partition.groups)
    missing = [a for a in problem.evidence if a not in assignment]
    if missing:
        raise InvalidPartition(
            f"assignment misses evidence attributes {missing}, all must be set"
        )
    weighted = []
    for value in (True, False):
        p_h = marginal(dist, problem.hypothesis_event(value))
        if p_h <= ZERO_EVIDENCE_TOLERANCE:
            raise ZeroProbabilityEvidence(
                f"hypothesis={value} has mass {p_h!r}, cannot condition on it"
            )
        product = p_h
        for group in partition.groups:
            event = Event.from_pairs((a, bool(assignment[a])) for a in group)
            product *= conditional(dist, event, problem.hypothesis_event(value))
        weighted.append(product)
    denominator = weighted[0] + weighted[1]
    if denominator <= ZERO_EVIDENCE_TOLERANCE:
        raise ZeroProbabilityEvidence(
            "surrogate normalizer vanished for this assignment"
        )
    return weighted[0] / denominator


@dataclass(frozen=True)
class PartitionError:
    """Surrogate-versus-exact posterior error over full assignments."""

    max_error: float
    mean_error: float
    skipped: int
    evaluated: int


def partition_error(
    dist: JointDistribution, problem: Problem, partition: EvidencePartition
) -> PartitionError:
    """Aggregate |surrogate - exact| over all full evidence assignments.

    Assignments whose full conjunction has zero probability have no exact
    posterior to compare against; they are skipped and counted. When the
    exact posterior exists the surrogate normalizer is provably positive,
    so skips can only come from the exact side.
    """
    partition = validate_partition(problem, partition.groups)
    errors: list[float] = []
    skipped = 0
    evidence = problem.evidence
    for values in itertools.product((False, True), repeat=len(evidence)):
        assignment = dict(zip(evidence, values))
        event = Event.from_pairs(sorted(assignment.items()))
        if marginal(dist, event) <= ZERO_EVIDENCE_TOLERANCE:
            skipped += 1
            continue
        exact = predictive_solution(dist, problem, assignment)
        approx = approx_predictive_solution(dist, problem, partition, assignment)
        errors.append(abs(approx - exact))
    if not errors:
        raise EverythingSkipped("every full evidence assignment has zero probability")
    return PartitionError(
        max_error=max(errors),
        mean_error=sum(errors) / len(errors),
        skipped=skipped,
        evaluated=len(errors),
    )


@dataclass(frozen=True)
class MergeStep:
    """One greedy merge: the two groups joined, their score, the error after."""

    merged: tuple[tuple[int, ...], tuple[int, ...]]
    score: float
    max_error_after: float


@dataclass(frozen=True)
class DecompositionReport:
    partition: EvidencePartition
    max_error: float
    mean_error: float
    skipped: int
    merges: tuple[MergeStep, ...]


def greedy_decompose(
    dist: JointDistribution,
    problem: Problem,
    target_tol: float = 1e-9,
    max_group_size: int | None = None,
) -> DecompositionReport:
    """Merge evidence groups greedily until the surrogate is good enough.

    Candidate merges are scored by the summed pairwise conditional mutual
    information between the two groups' members; ties go to the pair whose
    lowest attribute indices come first. The reported error always refers
    to the returned partition.
    """
    if target_tol <= 0.0:
        raise InputError(f"target tolerance must be positive, got {target_tol!r}")
    n = len(problem.evidence)
    if max_group_size is None:
        max_group_size = n
    if max_group_size < 1:
        raise InputError(f"max group size must be at least 1, got {max_group_size}")

    cmi: dict[tuple[int, int], float] = {}
    for i, j in itertools.combinations(problem.evidence, 2):
        cmi[(i, j)] = conditional_mutual_information(dist, problem, i, j)

    partition = validate_partition(problem, [(a,) for a in problem.evidence])
    error = partition_error(dist, problem, partition)
    merges: list[MergeStep] = []
    while error.max_error > target_tol:
        candidates = []
        for g1, g2 in itertools.combinations(partition.groups, 2):
            if len(g1) + len(g2) > max_group_size:
                continue
            score = sum(
                cmi[(min(i, j), max(i, j))] for i in g1 for j in g2
            )
            candidates.append((-score, (min(g1), min(g2)), g1, g2))
        if not candidates:
            break
        _, _, g1, g2 = min(candidates)
        remaining = [g for g in partition.groups if g not in (g1, g2)]
        partition = validate_partition(problem, remaining + [g1 + g2])
        error = partition_error(dist, problem, partition)
        merges.append(
            MergeStep(
                merged=(g1, g2),
                score=-min(candidates)[0],
                max_error_after=error.max_error,
            )
        )
    return DecompositionReport(
        partition=partition,
        max_error=error.max_error,
        mean_error=error.mean_error,
        skipped=error.skipped,
        merges=tuple(merges),
    )
