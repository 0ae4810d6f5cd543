import pytest

from likelihood_evidence import BirnbaumConfig, birnbaum_model


@pytest.fixture(scope="session")
def birnbaum_small():
    """Birnbaum's model with mu restricted to -300..300 so it can be enumerated."""
    return birnbaum_model(BirnbaumConfig(mu_values=range(-300, 301)))
