"""
Shared fixtures: small regression sets and the synthetic 84-project dataset
"""

from pathlib import Path

import numpy as np
import pytest

from src.models.data import (
    ActorClass, EnvironmentalRatings, KernelFamily, KernelSpec, LabeledDataset,
    ProjectDescriptor, SvrParams, TechnicalRatings,
)


def synthetic_efforts(n: int = 84, seed: int = 7):
    """effort = 1.2 * ucp^1.1 with 2% multiplicative noise."""
    rng = np.random.default_rng(seed)
    ucp = np.round(rng.uniform(40.0, 600.0, n), 2)
    effort = 1.2 * ucp ** 1.1 * (1.0 + 0.02 * rng.standard_normal(n))
    return ucp, effort


def write_effort_csv(path: Path, ucp, effort) -> Path:
    lines = ["ucp,effort"] + [f"{u!r},{e!r}" for u, e in zip(map(float, ucp), map(float, effort))]
    path.write_text("\n".join(lines) + "\n", encoding='utf-8')
    return path


@pytest.fixture
def line_points():
    """Five points on y = 2x."""
    xs = np.array([[0.0], [0.1], [0.2], [0.3], [0.4]])
    return xs, 2.0 * xs[:, 0]


@pytest.fixture
def linear_params():
    return SvrParams(c=10.0, epsilon=0.0, kernel=KernelSpec(KernelFamily.LINEAR))


@pytest.fixture
def synthetic_dataset() -> LabeledDataset:
    ucp, effort = synthetic_efforts()
    return LabeledDataset.from_pairs(ucp, effort)


@pytest.fixture
def synthetic_csv(tmp_path) -> Path:
    ucp, effort = synthetic_efforts()
    return write_effort_csv(tmp_path / "effort.csv", ucp, effort)


@pytest.fixture
def zero_rating_project() -> ProjectDescriptor:
    """One simple actor, one two-transaction use case, every factor rated 0."""
    return ProjectDescriptor(
        name='minimal',
        actors=(ActorClass.SIMPLE,),
        use_cases=(2,),
        technical=TechnicalRatings.uniform(0),
        environmental=EnvironmentalRatings.uniform(0),
    )
