"""Independent reference implementations used to freeze expected test values.

Everything in here works on raw probability lists with explicit bit
arithmetic and exact Fraction math, deliberately sharing no code with the
package under test: where the package uses vectorized float64 numpy, this
file uses dict loops over rationals. Agreement between the two routes is
the point of the comparison.

State convention mirrors the package: attribute 0 is the most significant
bit and True is bit 1.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def as_fractions(table) -> list[Fraction]:
    """Exact rationals from a table given as decimal literals or floats."""
    return [Fraction(str(p)) for p in table]


def bit(state: int, attr: int, k: int) -> int:
    return (state >> (k - 1 - attr)) & 1


def matches(state: int, k: int, literals: dict[int, bool]) -> bool:
    return all(bit(state, a, k) == int(v) for a, v in literals.items())


def mass(table: list[Fraction], k: int, literals: dict[int, bool]) -> Fraction:
    return sum(
        (p for s, p in enumerate(table) if matches(s, k, literals)), Fraction(0)
    )


def marginal_ref(table: list[Fraction], k: int, literals: dict[int, bool]) -> Fraction:
    return mass(table, k, literals) / mass(table, k, {})


def conditional_ref(
    table: list[Fraction],
    k: int,
    target: dict[int, bool],
    given: dict[int, bool],
) -> Fraction:
    denom = mass(table, k, given)
    if denom == 0:
        raise ZeroDivisionError("conditioning on a zero-probability event")
    return mass(table, k, {**target, **given}) / denom


def mb_ref(prior: Fraction, posterior: Fraction) -> Fraction:
    if prior == 1:
        return Fraction(1)
    return (max(posterior, prior) - prior) / (1 - prior)


def md_ref(prior: Fraction, posterior: Fraction) -> Fraction:
    if prior == 0:
        return Fraction(1)
    return (prior - min(posterior, prior)) / prior


def prob_sum_ref(a: Fraction, b: Fraction) -> Fraction:
    return a + b * (1 - a)


def fold_ref(streams: list[tuple[Fraction, Fraction]]) -> tuple[Fraction, Fraction]:
    """Fold both streams, then apply the certainty cap once at the end."""
    mb = Fraction(0)
    md = Fraction(0)
    for m, d in streams:
        mb = prob_sum_ref(mb, m)
        md = prob_sum_ref(md, d)
    if mb == 1 and md == 1:
        raise ZeroDivisionError("contradictory certainty")
    if md == 1:
        return Fraction(0), Fraction(1)
    if mb == 1:
        return Fraction(1), Fraction(0)
    return mb, md


def measures_ref(
    table: list[Fraction], k: int, hyp: int, evidence: dict[int, bool]
) -> tuple[Fraction, Fraction]:
    prior = marginal_ref(table, k, {hyp: True})
    posterior = conditional_ref(table, k, {hyp: True}, evidence)
    return mb_ref(prior, posterior), md_ref(prior, posterior)


def gaps_ref(
    table: list[Fraction], k: int, hyp: int, assignment: dict[int, bool]
) -> tuple[Fraction, Fraction, Fraction]:
    """(m1, m2, cf) gaps for one full assignment, all exact rationals."""
    direct_mb, direct_md = measures_ref(table, k, hyp, assignment)
    combined_mb, combined_md = fold_ref(
        [measures_ref(table, k, hyp, {a: v}) for a, v in sorted(assignment.items())]
    )
    return (
        abs(direct_mb - combined_mb),
        abs(direct_md - combined_md),
        abs((direct_mb - direct_md) - (combined_mb - combined_md)),
    )


def lemma_aggregates_ref(table: list[Fraction], k: int, hyp: int) -> dict:
    """Max/mean gaps over all full assignments, skipping zero-mass ones."""
    evidence = [a for a in range(k) if a != hyp]
    gaps: list[tuple[Fraction, Fraction, Fraction]] = []
    skipped = 0
    for values in itertools.product((False, True), repeat=len(evidence)):
        assignment = dict(zip(evidence, values))
        if mass(table, k, assignment) == 0:
            skipped += 1
            continue
        gaps.append(gaps_ref(table, k, hyp, assignment))
    n = len(gaps)
    return {
        "m1_max": max(g[0] for g in gaps),
        "m1_mean": sum(g[0] for g in gaps) / n,
        "m2_max": max(g[1] for g in gaps),
        "m2_mean": sum(g[1] for g in gaps) / n,
        "cf_max": max(g[2] for g in gaps),
        "cf_mean": sum(g[2] for g in gaps) / n,
        "evaluated": n,
        "skipped": skipped,
    }


def factorization_gap_ref(
    cells: dict[tuple[int, ...], Fraction]
) -> Fraction:
    """Max |cell - product of axis marginals| over a dict-of-tuples table."""
    n = len(next(iter(cells)))
    axis_marginals = []
    for axis in range(n):
        marg = {0: Fraction(0), 1: Fraction(0)}
        for key, p in cells.items():
            marg[key[axis]] += p
        axis_marginals.append(marg)
    worst = Fraction(0)
    for key, p in cells.items():
        product = Fraction(1)
        for axis, v in enumerate(key):
            product *= axis_marginals[axis][v]
        worst = max(worst, abs(p - product))
    return worst


def evidence_cells_ref(
    table: list[Fraction], k: int, hyp: int, condition: bool | None
) -> dict[tuple[int, ...], Fraction]:
    """Evidence-attribute table, conditioned on h when condition is not None."""
    evidence = [a for a in range(k) if a != hyp]
    base: dict[int, bool] = {} if condition is None else {hyp: condition}
    denom = mass(table, k, base)
    cells = {}
    for values in itertools.product((0, 1), repeat=len(evidence)):
        literals = {a: bool(v) for a, v in zip(evidence, values)}
        cells[values] = mass(table, k, {**base, **literals}) / denom
    return cells


def permute_attributes(table, k: int, order: list[int]) -> list:
    """Reorder attributes of a state table; order[i] is the old axis at new slot i."""
    out = [None] * (1 << k)
    for state in range(1 << k):
        new_state = 0
        for new_pos, old_pos in enumerate(order):
            new_state |= bit(state, old_pos, k) << (k - 1 - new_pos)
        out[new_state] = table[state]
    return out
