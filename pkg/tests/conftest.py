import pytest
from hypothesis import HealthCheck, settings

from prefpcp import generate_synthetic, pareto_front

settings.register_profile(
    "suite",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

# fixture matching the reference experiment shape: 5 parameters, 3 metrics,
# 1000 sampled configurations
PAPER_SHAPE = dict(d=5, m=3, n=1000, a=(0.05, 0.1, 0.0), b=1.0, noise=0.25, seed=7)


@pytest.fixture(scope="session")
def paper_shape_dataset():
    return generate_synthetic(**PAPER_SHAPE)


@pytest.fixture(scope="session")
def paper_shape_pareto(paper_shape_dataset):
    return pareto_front(paper_shape_dataset)
