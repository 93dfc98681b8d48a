"""Binary attribute spaces, events, and dense joint distribution tables.

Conventions used throughout the package:

* A space is an ordered tuple of named binary attributes. Attribute 0 is
  the most significant bit of the state index and ``True`` maps to bit 1,
  so a k-attribute space enumerates states ``0 .. 2**k - 1`` and the
  all-true assignment is state ``2**k - 1``.
* A distribution is a read-only float64 vector of length ``2**k`` over
  those states. Construction validates and renormalizes; every consumer
  may assume the invariants hold.
* Events are conjunctions of literals over distinct attributes. The empty
  conjunction is the sure event.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DuplicateAttribute,
    InvalidSpace,
    LengthMismatch,
    MassNotOne,
    NegativeMass,
    NotEvidenceAttribute,
    SpaceTooLarge,
    UnknownAttribute,
)

# 2**20 float64 states is an 8 MiB table; beyond that dense enumeration
# stops being the right tool, so construction refuses instead of crawling.
MAX_ATTRIBUTES = 20

# |sum - 1| within this drift is renormalized, beyond it is rejected.
MASS_TOLERANCE = 1e-9

# Entries in (-NEGATIVE_TOLERANCE, 0) are clamped to zero; anything more
# negative is an error, not rounding noise.
NEGATIVE_TOLERANCE = 1e-15


@dataclass(frozen=True)
class PropositionalSpace:
    """Ordered tuple of named binary attributes."""

    attribute_names: tuple[str, ...]

    def __post_init__(self) -> None:
        names = tuple(self.attribute_names)
        object.__setattr__(self, "attribute_names", names)
        if len(names) < 2:
            raise InvalidSpace("a space needs at least two attributes")
        if len(names) > MAX_ATTRIBUTES:
            raise SpaceTooLarge(
                f"{len(names)} attributes exceed the {MAX_ATTRIBUTES}-attribute cap"
            )
        if any(not isinstance(n, str) or not n for n in names):
            raise InvalidSpace("attribute names must be non-empty strings")
        if len(set(names)) != len(names):
            raise DuplicateAttribute("attribute names must be unique")

    @property
    def size(self) -> int:
        return len(self.attribute_names)

    @property
    def n_states(self) -> int:
        return 1 << self.size

    def index(self, name: str) -> int:
        try:
            return self.attribute_names.index(name)
        except ValueError:
            raise UnknownAttribute(f"no attribute named {name!r}") from None

    def check_attribute(self, attr: int) -> int:
        if not 0 <= attr < self.size:
            raise UnknownAttribute(f"attribute index {attr} outside 0..{self.size - 1}")
        return attr


@dataclass(frozen=True)
class Literal:
    """One attribute pinned to a truth value."""

    attr: int
    value: bool

    def __post_init__(self) -> None:
        if self.attr < 0:
            raise UnknownAttribute(f"attribute index {self.attr} is negative")
        object.__setattr__(self, "value", bool(self.value))


@dataclass(frozen=True)
class Event:
    """Conjunction of literals over distinct attributes; empty = sure event."""

    literals: tuple[Literal, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "literals", tuple(self.literals))
        attrs = [lit.attr for lit in self.literals]
        if len(set(attrs)) != len(attrs):
            raise DuplicateAttribute("an event may constrain each attribute once")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, bool]]) -> "Event":
        return cls(tuple(Literal(a, v) for a, v in pairs))

    @property
    def attributes(self) -> frozenset[int]:
        return frozenset(lit.attr for lit in self.literals)

    def conjoin(self, other: "Event") -> "Event":
        return Event(self.literals + other.literals)


SURE_EVENT = Event()


def state_index(space: PropositionalSpace, values: Sequence[bool]) -> int:
    """Index of a full truth assignment, attribute 0 as the most significant bit."""
    if len(values) != space.size:
        raise LengthMismatch(
            f"assignment has {len(values)} values for {space.size} attributes"
        )
    idx = 0
    for v in values:
        idx = (idx << 1) | int(bool(v))
    return idx


def event_mask(space: PropositionalSpace, event: Event) -> np.ndarray:
    """Boolean vector over all states, true where the event holds."""
    mask = np.ones(space.n_states, dtype=bool)
    states = np.arange(space.n_states)
    for lit in event.literals:
        space.check_attribute(lit.attr)
        bit = (states >> (space.size - 1 - lit.attr)) & 1
        mask &= bit == int(lit.value)
    return mask


def event_states(space: PropositionalSpace, event: Event) -> frozenset[int]:
    """Set of state indices where the event holds."""
    return frozenset(np.flatnonzero(event_mask(space, event)).tolist())


@dataclass(frozen=True)
class JointDistribution:
    """Validated dense joint table over a space.

    ``probs`` is stored as a read-only float64 array. Raw vectors whose sum
    drifts from 1 by at most ``MASS_TOLERANCE`` are renormalized; a larger
    drift is rejected. Entries below ``-NEGATIVE_TOLERANCE`` are rejected
    and tinier negatives are clamped to zero before renormalization.
    """

    space: PropositionalSpace
    probs: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        arr = np.asarray(self.probs, dtype=np.float64).reshape(-1).copy()
        if arr.shape[0] != self.space.n_states:
            raise LengthMismatch(
                f"table has {arr.shape[0]} entries, space needs {self.space.n_states}"
            )
        if not np.all(np.isfinite(arr)):
            raise NegativeMass("table entries must be finite numbers")
        if np.any(arr < -NEGATIVE_TOLERANCE):
            worst = float(arr.min())
            raise NegativeMass(f"entry {worst!r} is negative beyond tolerance")
        arr[arr < 0.0] = 0.0
        total = float(arr.sum())
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise MassNotOne(f"entries sum to {total!r}, not 1 within {MASS_TOLERANCE}")
        arr /= total
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)

    def tensor(self) -> np.ndarray:
        """The same table viewed as a (2, 2, ..., 2) array, one axis per attribute."""
        return self.probs.reshape((2,) * self.space.size)

    def to_dict(self) -> dict:
        return {
            "attributes": list(self.space.attribute_names),
            "probabilities": [float(p) for p in self.probs],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def validate_distribution(
    attributes: Sequence[str], probabilities: Sequence[float]
) -> JointDistribution:
    """Build a distribution from raw names and a raw probability vector."""
    space = PropositionalSpace(tuple(attributes))
    return JointDistribution(space, np.asarray(probabilities, dtype=np.float64))


def distribution_from_dict(payload: Mapping) -> JointDistribution:
    try:
        attributes = payload["attributes"]
        probabilities = payload["probabilities"]
    except (KeyError, TypeError):
        raise InvalidSpace(
            "distribution payload needs 'attributes' and 'probabilities'"
        ) from None
    if not isinstance(attributes, (list, tuple)):
        raise InvalidSpace("'attributes' must be a list of names")
    if not isinstance(probabilities, (list, tuple)):
        raise LengthMismatch("'probabilities' must be a list of numbers")
    return validate_distribution(attributes, probabilities)


def load_distribution(path: str | Path) -> JointDistribution:
    with open(path, "r", encoding="utf-8") as fh:
        return distribution_from_dict(json.load(fh))


def save_distribution(dist: JointDistribution, path: str | Path) -> None:
    Path(path).write_text(dist.dumps() + "\n", encoding="utf-8")


@dataclass(frozen=True)
class Problem:
    """A space with one attribute designated as the hypothesis."""

    space: PropositionalSpace
    hypothesis: int

    def __post_init__(self) -> None:
        self.space.check_attribute(self.hypothesis)

    @classmethod
    def for_hypothesis(cls, space: PropositionalSpace, name: str) -> "Problem":
        return cls(space, space.index(name))

    @property
    def evidence(self) -> tuple[int, ...]:
        return tuple(a for a in range(self.space.size) if a != self.hypothesis)

    def hypothesis_event(self, value: bool = True) -> Event:
        return Event((Literal(self.hypothesis, value),))

    def check_evidence_event(self, event: Event) -> Event:
        for lit in event.literals:
            if lit.attr == self.hypothesis:
                raise NotEvidenceAttribute("evidence may not mention the hypothesis")
            self.space.check_attribute(lit.attr)
        return event

    def evidence_event(self, assignment: Mapping[int, bool | None]) -> Event:
        """Conjunction of the known literals; unknown (None) attributes drop out."""
        for attr in assignment:
            if attr == self.hypothesis or attr not in self.evidence:
                raise NotEvidenceAttribute(
                    f"attribute {attr} is not an evidence attribute of this problem"
                )
        pairs = [
            (attr, bool(val))
            for attr, val in sorted(assignment.items())
            if val is not None
        ]
        return Event.from_pairs(pairs)


def full_assignments(problem: Problem) -> Iterable[dict[int, bool]]:
    """All full evidence assignments, counting up with attribute order as bit order."""
    evidence = problem.evidence
    for idx in range(1 << len(evidence)):
        yield {
            attr: bool((idx >> (len(evidence) - 1 - j)) & 1)
            for j, attr in enumerate(evidence)
        }
