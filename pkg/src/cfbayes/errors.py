"""Exception hierarchy shared by every module in the package.

Two branches matter to callers. ``InputError`` means the request itself is
malformed (bad table, bad names, bad configuration) and maps to exit code 1
or HTTP 400. ``ComputationError`` means the request was well formed but the
quantity asked for is undefined on the given distribution (conditioning on a
zero-probability event, contradictory certainty, nothing left to aggregate)
and maps to exit code 2 or HTTP 422.
"""

from __future__ import annotations


class CfBayesError(Exception):
    """Base class for every error raised by this package."""


class InputError(CfBayesError):
    """A contract on the inputs was violated before any probability work."""


class ComputationError(CfBayesError):
    """The requested quantity is undefined for the given distribution."""


class InvalidSpace(InputError):
    """Attribute tuple is unusable: empty name, or fewer than two attributes."""


class DuplicateAttribute(InputError):
    """The same attribute appears twice where distinct attributes are required."""


class UnknownAttribute(InputError):
    """An attribute name or index does not exist in the space."""


class NotEvidenceAttribute(InputError):
    """An evidence event touches the hypothesis or a foreign attribute."""


class SpaceTooLarge(InputError):
    """More attributes than the dense-table representation supports."""


class LengthMismatch(InputError):
    """Probability vector length differs from 2**k for a k-attribute space."""


class NegativeMass(InputError):
    """A probability entry is negative beyond floating-point dust."""


class MassNotOne(InputError):
    """Probability entries do not sum to 1 within the accepted drift."""


class UnknownFamily(InputError):
    """Requested sampler family is not one of the shipped families."""


class InvalidPartition(InputError):
    """Groups are empty, overlapping, or do not cover the evidence set."""


class InvalidBeliefMeasure(InputError):
    """Belief components are outside [0, 1] or mutually inconsistent."""


class ZeroProbabilityEvidence(ComputationError):
    """Conditioning event carries no probability mass."""


class ContradictoryCertainty(ComputationError):
    """Combination drove both belief and disbelief to full certainty."""


class EverythingSkipped(ComputationError):
    """Every assignment in an aggregate was undefined, nothing to report."""


class NotSameDirection(ComputationError):
    """Evidence items do not all confirm, or all disconfirm, the hypothesis."""
