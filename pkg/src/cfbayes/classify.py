"""Decomposability classification of a hypothesis problem.

A problem is weakly decomposable when the evidence attributes are jointly
independent conditional on the hypothesis, and decomposable when they are
additionally independent marginally. Both properties are measured as the
largest absolute cell-wise deviation between a joint table and the product
of its one-attribute marginals, so a tolerance turns the measurement into
a class label. The conditional check comes in three variants depending on
which hypothesis value(s) the conditioning uses.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import DuplicateAttribute, InvalidBeliefMeasure, NotEvidenceAttribute, ZeroProbabilityEvidence
from .model import JointDistribution, Problem
from .oracle import ZERO_EVIDENCE_TOLERANCE

DEFAULT_CLASS_TOLERANCE = 1e-9


class IndependenceVariant(str, enum.Enum):
    """Which hypothesis value conditions the independence check."""

    H_TRUE = "h-true"
    H_FALSE = "h-false"
    SYMMETRIC = "symmetric"


class ProblemClass(str, enum.Enum):
    DECOMPOSABLE = "Decomposable"
    WEAKLY_DECOMPOSABLE = "WeaklyDecomposable"
    HOLISTIC = "Holistic"


# Severity order used for monotonicity checks: loosening the tolerance can
# only move a problem toward rank 0.
CLASS_RANK = {
    ProblemClass.DECOMPOSABLE: 0,
    ProblemClass.WEAKLY_DECOMPOSABLE: 1,
    ProblemClass.HOLISTIC: 2,
}


@dataclass(frozen=True)
class ClassificationReport:
    problem_class: ProblemClass
    variant: IndependenceVariant
    ci_gap: float
    marginal_gap: float
    tol: float


def _factorization_gap(joint: np.ndarray) -> float:
    """Max |joint - product of its marginals| over all cells of a (2,)*n table."""
    n = joint.ndim
    marginals = [
        joint.sum(axis=tuple(j for j in range(n) if j != i)) for i in range(n)
    ]
    product = reduce(np.multiply.outer, marginals)
    return float(np.abs(joint - product).max())


def _evidence_given_hypothesis(
    dist: JointDistribution, problem: Problem, value: bool
) -> np.ndarray:
    """Joint table of all evidence attributes given the hypothesis value.

    Axes come out in ascending evidence-attribute order.
    """
    slab = np.moveaxis(dist.tensor(), problem.hypothesis, 0)[int(value)]
    mass = float(slab.sum())
    if mass <= ZERO_EVIDENCE_TOLERANCE:
        raise ZeroProbabilityEvidence(
            f"hypothesis={value} has mass {mass!r}, cannot condition on it"
        )
    return slab / mass


def conditional_independence_gap(
    dist: JointDistribution, problem: Problem, variant: IndependenceVariant
) -> float:
    """Worst factorization gap of the evidence table given the hypothesis.

    The symmetric variant takes the max over both hypothesis values; the
    one-sided variants condition on a single value.
    """
    variant = IndependenceVariant(variant)
    if variant is IndependenceVariant.H_TRUE:
        values: tuple[bool, ...] = (True,)
    elif variant is IndependenceVariant.H_FALSE:
        values = (False,)
    else:
        values = (True, False)
    return max(
        _factorization_gap(_evidence_given_hypothesis(dist, problem, v))
        for v in values
    )


def marginal_independence_gap(dist: JointDistribution, problem: Problem) -> float:
    """Factorization gap of the evidence table with the hypothesis summed out."""
    joint = dist.tensor().sum(axis=problem.hypothesis)
    return _factorization_gap(joint)


def classify_from_gaps(
    ci_gap: float, marginal_gap: float, tol: float
) -> ProblemClass:
    """Label from precomputed gaps; conditional independence decides first."""
    if tol <= 0.0:
        raise InvalidBeliefMeasure(f"tolerance must be positive, got {tol!r}")
    if ci_gap <= tol:
        if marginal_gap <= tol:
            return ProblemClass.DECOMPOSABLE
        return ProblemClass.WEAKLY_DECOMPOSABLE
    return ProblemClass.HOLISTIC


def classify(
    dist: JointDistribution,
    problem: Problem,
    variant: IndependenceVariant = IndependenceVariant.SYMMETRIC,
    tol: float = DEFAULT_CLASS_TOLERANCE,
) -> ClassificationReport:
    variant = IndependenceVariant(variant)
    ci = conditional_independence_gap(dist, problem, variant)
    marg = marginal_independence_gap(dist, problem)
    return ClassificationReport(
        problem_class=classify_from_gaps(ci, marg, tol),
        variant=variant,
        ci_gap=ci,
        marginal_gap=marg,
        tol=float(tol),
    )


def conditional_mutual_information(
    dist: JointDistribution, problem: Problem, attr_i: int, attr_j: int
) -> float:
    """I(e_i ; e_j | h) in nats, with 0 * log(0/q) read as 0.

    Zero exactly when the pair is conditionally independent given the
    hypothesis, so it doubles as a merge score for grouping evidence.
    """
    if attr_i == attr_j:
        raise DuplicateAttribute("mutual information needs two distinct attributes")
    for a in (attr_i, attr_j):
        if a == problem.hypothesis:
            raise NotEvidenceAttribute("mutual information is between evidence attributes")
        dist.space.check_attribute(a)

    keep = (problem.hypothesis, attr_i, attr_j)
    others = tuple(a for a in range(dist.space.size) if a not in keep)
    table = dist.tensor().sum(axis=others) if others else dist.tensor()
    # Summed-out axes leave the kept ones in ascending order; restore (h, i, j).
    order = sorted(keep)
    table = table.transpose([order.index(a) for a in keep])

    total = 0.0
    for v in (0, 1):
        mass = float(table[v].sum())
        if mass <= ZERO_EVIDENCE_TOLERANCE:
            raise ZeroProbabilityEvidence(
                f"hypothesis={bool(v)} has mass {mass!r}, cannot condition on it"
            )
        cond = table[v] / mass
        pi = cond.sum(axis=1)
        pj = cond.sum(axis=0)
        for a in (0, 1):
            for b in (0, 1):
                cell = float(cond[a, b])
                if cell > 0.0:
                    total += mass * cell * math.log(cell / (float(pi[a]) * float(pj[b])))
    return float(total)
