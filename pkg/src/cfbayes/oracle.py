"""Exact probability queries over dense joint tables.

Everything here is plain enumeration: marginals are masked sums over the
state vector and conditionals are ratios of marginals. No independence
assumption is ever used, which is what makes these answers the reference
point for the approximate machinery elsewhere in the package.
"""

from __future__ import annotations

from typing import Mapping

from .errors import DuplicateAttribute, ZeroProbabilityEvidence
from .model import Event, JointDistribution, Problem, event_mask

# Conditioning events at or below this mass are treated as impossible.
ZERO_EVIDENCE_TOLERANCE = 1e-15


def marginal(dist: JointDistribution, event: Event) -> float:
    """P(event), the mass of all states where the event holds."""
    return float(dist.probs[event_mask(dist.space, event)].sum())


def conditional(dist: JointDistribution, target: Event, given: Event) -> float:
    """P(target | given) by exact ratio; the sure event conditions on nothing."""
    if target.attributes & given.attributes:
        raise DuplicateAttribute("target and conditioning events overlap")
    if not given.literals:
        return marginal(dist, target)
    given_mass = marginal(dist, given)
    if given_mass <= ZERO_EVIDENCE_TOLERANCE:
        raise ZeroProbabilityEvidence(
            f"conditioning event has mass {given_mass!r}"
        )
    return marginal(dist, target.conjoin(given)) / given_mass


def predictive_solution(
    dist: JointDistribution, problem: Problem, assignment: Mapping[int, bool | None]
) -> float:
    """P(hypothesis true | known evidence literals).

    Unknown attributes (value ``None`` or simply absent) are marginalized
    out, so the all-unknown assignment returns the prior exactly.
    """
    given = problem.evidence_event(assignment)
    return conditional(dist, problem.hypothesis_event(True), given)


def diagnostic_probability(
    dist: JointDistribution, problem: Problem, event: Event, hypothesis_value: bool
) -> float:
    """P(evidence event | hypothesis = value)."""
    problem.check_evidence_event(event)
    return conditional(dist, event, problem.hypothesis_event(hypothesis_value))
