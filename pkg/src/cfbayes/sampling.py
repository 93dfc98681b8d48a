"""Seeded generators for joint distribution families.

Reproducibility contract: every family draws from ``numpy.random.default_rng``
(the PCG64 generator) seeded with the caller's integer, and performs its
draws in the fixed order documented on each family function. The same
(family, k, seed) triple therefore yields the same table on any platform
with IEEE-754 doubles.

Attribute 0 is named ``h`` and is the conventional hypothesis; evidence
attributes are named ``e1 .. e{k-1}``.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidSpace, UnknownFamily
from .model import JointDistribution, PropositionalSpace

FAMILIES = ("dirichlet", "product", "naive-bayes", "xor-noise")

# Marginal and conditional probabilities are drawn away from 0 and 1 so the
# structured families stay strictly positive.
_UNIFORM_LOW = 0.05
_UNIFORM_HIGH = 0.95


def default_space(k: int) -> PropositionalSpace:
    """Space named h, e1, .., e{k-1}; size checks ride on the space itself."""
    if k < 2:
        raise InvalidSpace(f"need at least 2 attributes, got {k}")
    return PropositionalSpace(("h",) + tuple(f"e{i}" for i in range(1, k)))


def sample_distribution(family: str, k: int, seed: int) -> JointDistribution:
    """Draw one distribution from the named family."""
    try:
        sampler = _SAMPLERS[family]
    except KeyError:
        raise UnknownFamily(
            f"family {family!r} is not one of {', '.join(FAMILIES)}"
        ) from None
    space = default_space(k)
    return sampler(space, np.random.default_rng(seed))


def _dirichlet(space: PropositionalSpace, rng: np.random.Generator) -> JointDistribution:
    """One draw from the symmetric Dirichlet(1) over all 2**k states."""
    return JointDistribution(space, rng.dirichlet(np.ones(space.n_states)))


def _product(space: PropositionalSpace, rng: np.random.Generator) -> JointDistribution:
    """Fully independent attributes.

    Draw order: one uniform(0.05, 0.95) vector of k per-attribute true
    probabilities, then the table is their outer product.
    """
    trues = rng.uniform(_UNIFORM_LOW, _UNIFORM_HIGH, size=space.size)
    table = _outer_factors(trues)
    return JointDistribution(space, table.reshape(-1))


def _naive_bayes(space: PropositionalSpace, rng: np.random.Generator) -> JointDistribution:
    """Evidence conditionally independent given h, dependent marginally.

    Draw order: P(h=true) as one uniform(0.05, 0.95), then a (k-1, 2)
    uniform(0.05, 0.95) matrix whose row i holds P(e_{i+1}=true | h=true)
    and P(e_{i+1}=true | h=false).
    """
    p_h = float(rng.uniform(_UNIFORM_LOW, _UNIFORM_HIGH))
    cond = rng.uniform(_UNIFORM_LOW, _UNIFORM_HIGH, size=(space.size - 1, 2))
    slab_true = p_h * _outer_factors(cond[:, 0])
    slab_false = (1.0 - p_h) * _outer_factors(cond[:, 1])
    table = np.stack([slab_false, slab_true], axis=0)
    return JointDistribution(space, table.reshape(-1))


def _xor_noise(space: PropositionalSpace, rng: np.random.Generator) -> JointDistribution:
    """h is e1 XOR e2 flipped with a small noise rate; other evidence independent.

    Needs at least two evidence attributes. Draw order: the noise rate as
    one uniform(0, 0.2), then one uniform(0.05, 0.95) true-probability per
    extra evidence attribute e3 .. e{k-1} in order. e1 and e2 are fair and
    independent coins.
    """
    if space.size < 3:
        raise InvalidSpace("xor-noise needs at least two evidence attributes")
    noise = float(rng.uniform(0.0, 0.2))
    core = np.empty((2, 2, 2))
    for a in (0, 1):
        for b in (0, 1):
            xor = a ^ b
            core[1, a, b] = 0.25 * ((1.0 - noise) if xor == 1 else noise)
            core[0, a, b] = 0.25 * (noise if xor == 1 else (1.0 - noise))
    table = core
    if space.size > 3:
        extras = rng.uniform(_UNIFORM_LOW, _UNIFORM_HIGH, size=space.size - 3)
        table = np.multiply.outer(core, _outer_factors(extras))
    return JointDistribution(space, table.reshape(-1))


def _outer_factors(trues: np.ndarray) -> np.ndarray:
    """Outer product of [1-p, p] factors, axes in the order given."""
    table = np.ones(())
    for p in np.atleast_1d(trues):
        table = np.multiply.outer(table, np.array([1.0 - p, p]))
    return table


_SAMPLERS = {
    "dirichlet": _dirichlet,
    "product": _product,
    "naive-bayes": _naive_bayes,
    "xor-noise": _xor_noise,
}
