"""Belief, disbelief, and certainty factors, plus their combination rule.

Two routes produce a ``BeliefMeasures`` triple and the rest of the package
is largely about comparing them:

* the direct route reads prior and posterior off the joint table and
  applies the ratio definitions in ``mb_of`` / ``md_of``;
* the combined route folds per-item measures through the parallel
  combination rule, whose two streams are each the probabilistic sum
  ``x + y*(1 - x)``.

The certainty cap (a stream that reaches 1 zeroes the other stream) is
applied once, after the whole fold, so that combination order cannot
change the answer. Raw streams both at 1 have no coherent reading and
raise ``ContradictoryCertainty``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ContradictoryCertainty, InvalidBeliefMeasure
from .model import Event, JointDistribution, Problem
from .oracle import conditional, marginal

# Budget for |cf - (mb - md)| drift inside a validated triple.
MEASURE_CONSISTENCY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class BeliefMeasures:
    """Belief for, belief against, and their difference, for one body of evidence."""

    mb: float
    md: float
    cf: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "mb", float(self.mb))
        object.__setattr__(self, "md", float(self.md))
        object.__setattr__(self, "cf", float(self.cf))
        if not 0.0 <= self.mb <= 1.0:
            raise InvalidBeliefMeasure(f"mb={self.mb!r} outside [0, 1]")
        if not 0.0 <= self.md <= 1.0:
            raise InvalidBeliefMeasure(f"md={self.md!r} outside [0, 1]")
        if abs(self.cf - (self.mb - self.md)) > MEASURE_CONSISTENCY_TOLERANCE:
            raise InvalidBeliefMeasure(
                f"cf={self.cf!r} disagrees with mb - md = {self.mb - self.md!r}"
            )

    @classmethod
    def of(cls, mb: float, md: float) -> "BeliefMeasures":
        return cls(float(mb), float(md), float(mb) - float(md))


def mb_of(prior: float, posterior: float) -> float:
    """Belief created by evidence that moved the posterior above the prior.

    Defined as 1 when the prior is already 1, otherwise the fraction of the
    remaining doubt ``1 - prior`` that the evidence removed. Evidence that
    lowers the posterior contributes nothing here, never a negative.
    """
    _check_probability("prior", prior)
    _check_probability("posterior", posterior)
    if prior == 1.0:
        return 1.0
    return (max(posterior, prior) - prior) / (1.0 - prior)


def md_of(prior: float, posterior: float) -> float:
    """Disbelief created by evidence that moved the posterior below the prior.

    Defined as 1 when the prior is already 0, otherwise the fraction of the
    prior mass that the evidence removed.
    """
    _check_probability("prior", prior)
    _check_probability("posterior", posterior)
    if prior == 0.0:
        return 1.0
    return (prior - min(posterior, prior)) / prior


def measures_from_probabilities(prior: float, posterior: float) -> BeliefMeasures:
    return BeliefMeasures.of(mb_of(prior, posterior), md_of(prior, posterior))


def cf_direct(
    dist: JointDistribution, problem: Problem, evidence: Event
) -> BeliefMeasures:
    """Measures for the hypothesis given one evidence conjunction, read off the table."""
    problem.check_evidence_event(evidence)
    prior = marginal(dist, problem.hypothesis_event(True))
    posterior = conditional(dist, problem.hypothesis_event(True), evidence)
    return measures_from_probabilities(prior, posterior)


def combine_mb(a: float, b: float) -> float:
    """Belief stream of the parallel combination rule: the probabilistic sum."""
    return a + b * (1.0 - a)


def combine_md(a: float, b: float) -> float:
    """Disbelief stream of the parallel combination rule: the probabilistic sum."""
    return a + b * (1.0 - a)


def combine(a: BeliefMeasures, b: BeliefMeasures) -> BeliefMeasures:
    """Parallel combination of two bodies of evidence, certainty cap applied."""
    return _resolve(combine_mb(a.mb, b.mb), combine_md(a.md, b.md))


def fold_combine(measures: Sequence[BeliefMeasures]) -> BeliefMeasures:
    """Combine any number of bodies of evidence.

    Streams are folded first and the certainty cap is applied once at the
    end, so the result is invariant under permutation of the inputs (each
    stream is a commutative, associative fold).
    """
    if not measures:
        raise InvalidBeliefMeasure("fold_combine needs at least one measure")
    mb = 0.0
    md = 0.0
    for m in measures:
        mb = combine_mb(mb, m.mb)
        md = combine_md(md, m.md)
    return _resolve(mb, md)


def _resolve(mb: float, md: float) -> BeliefMeasures:
    """Apply the certainty cap to raw streams; both at 1 is contradictory."""
    if mb == 1.0 and md == 1.0:
        raise ContradictoryCertainty(
            "evidence yields full belief and full disbelief at once"
        )
    if md == 1.0:
        return BeliefMeasures(0.0, 1.0, -1.0)
    if mb == 1.0:
        return BeliefMeasures(1.0, 0.0, 1.0)
    return BeliefMeasures.of(mb, md)


def _check_probability(label: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise InvalidBeliefMeasure(f"{label}={value!r} is not a probability")
