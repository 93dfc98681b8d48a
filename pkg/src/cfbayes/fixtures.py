"""Small named distributions with hand-checkable structure.

All five live on the space (h, a, b) with h the hypothesis, so each table
lists eight states in index order (h is the most significant bit):

* ``PR1``    fully independent attributes.
* ``NB1``    conditionally independent given h, marginally dependent.
* ``XOR1``   h is exactly a XOR b; pair evidence is decisive, single
             items are useless.
* ``DSTRICT1`` independent given h=true only, marginally independent.
* ``M1X1``   independent given h=false only, marginally independent;
             built so the belief streams agree exactly on (a=T, b=T).
"""

from __future__ import annotations

from pathlib import Path

from .model import JointDistribution, Problem, validate_distribution

FIXTURE_ATTRIBUTES = ("h", "a", "b")

# State order: (h,a,b) = FFF, FFT, FTF, FTT, TFF, TFT, TTF, TTT.
FIXTURE_TABLES: dict[str, tuple[float, ...]] = {
    "PR1": (0.12, 0.08, 0.18, 0.12, 0.12, 0.08, 0.18, 0.12),
    "NB1": (0.24, 0.06, 0.16, 0.04, 0.04, 0.06, 0.16, 0.24),
    "XOR1": (0.25, 0.0, 0.0, 0.25, 0.0, 0.25, 0.25, 0.0),
    "DSTRICT1": (0.20, 0.10, 0.20, 0.00, 0.04, 0.06, 0.16, 0.24),
    "M1X1": (0.24, 0.06, 0.16, 0.04, 0.00, 0.10, 0.20, 0.20),
}


def fixture_names() -> tuple[str, ...]:
    return tuple(FIXTURE_TABLES)


def fixture(name: str) -> JointDistribution:
    try:
        table = FIXTURE_TABLES[name]
    except KeyError:
        raise KeyError(
            f"no fixture named {name!r}; choose from {', '.join(FIXTURE_TABLES)}"
        ) from None
    return validate_distribution(FIXTURE_ATTRIBUTES, table)


def fixture_problem(name: str) -> tuple[JointDistribution, Problem]:
    dist = fixture(name)
    return dist, Problem(dist.space, 0)


def write_fixture_files(directory: str | Path) -> list[Path]:
    """Write every fixture as a distribution JSON file, returning the paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name in fixture_names():
        path = directory / f"{name}.json"
        path.write_text(fixture(name).dumps() + "\n", encoding="utf-8")
        paths.append(path)
    return paths
