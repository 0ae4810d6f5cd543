import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import stats

from likelihood_evidence import (
    BUILTINS,
    BirnbaumConfig,
    InvalidComposition,
    InvalidGrid,
    ModelError,
    UrnComposition,
    binomial_model,
    birnbaum_known_mu_model,
    birnbaum_model,
    iid_likelihood,
    likelihood,
    likelihood_ratio,
    max_likelihood_points,
    sample,
    surething_model,
    urn2_model,
)
from likelihood_evidence.models import PRINTED_BIRNBAUM_C, ordered_support


def _row_sums(model, limit=None):
    for i, (point, probs) in enumerate(model.rows()):
        if limit is not None and i >= limit:
            return
        yield point, math.fsum(probs)


BUILTIN_ARGS = {"binomial": (5, [0.1, 0.5, 0.7]), "sure-thing": ("HTTH",)}


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtins_are_normalized(name):
    model = BUILTINS[name](*BUILTIN_ARGS.get(name, ()))
    if model.is_dense:
        for point, total in _row_sums(model):
            assert abs(total - 1) <= 1e-9, point
    else:
        small = model.space.size <= 100_000
        thetas = model.space.iter_values() if small else [(0, 0), (0, 100), (-(10**10) + 1, 100), (10**10 - 1, 0)]
        for theta in thetas:
            total = math.fsum(p for _, p in model.support(theta))
            assert abs(total - 1) <= 1e-9


def test_birnbaum_probabilities_are_exact():
    model = birnbaum_model()
    assert model.prob((5, 0), 5) == 1.0
    assert model.prob((5, 100), 5) == 0.01
    assert model.prob((5, 100), 5 + 99) == 0.0001
    assert model.prob((5, 100), 5 + 100) == 0.0
    assert len(model.support((5, 100))) == 199


def test_printed_constant_does_not_normalize():
    # 1/10040 sums to 250/251 over the support, so the model refuses it.
    with pytest.raises(ModelError):
        BirnbaumConfig(c=PRINTED_BIRNBAUM_C)
    total = PRINTED_BIRNBAUM_C * (100 + 2 * sum(100 - d for d in range(1, 100)))
    assert total == Fraction(250, 251)


def test_birnbaum_single_observation():
    L = likelihood(birnbaum_model(), 17)
    assert {str(p) for p in max_likelihood_points(L)} == {"mu=17,sigma=0"}
    assert L[(17, 100)] == 0.01
    assert likelihood_ratio(L, (17, 0), (17, 100)).ratio == 100.0


def test_two_distinct_observations_rule_out_sigma_zero(birnbaum_small):
    L = iid_likelihood(birnbaum_small, [17, 132])
    assert all(point["sigma"] == 100 for point, v in L.items() if v > 0)
    assert {str(p) for p in max_likelihood_points(L)} == {"mu=74,sigma=100", "mu=75,sigma=100"}


def test_known_mu_model():
    model = birnbaum_known_mu_model(17)
    L = likelihood(model, 17)
    assert likelihood_ratio(L, {"sigma": 0}, {"sigma": 100}).ratio == 100.0


def test_urn2_composition():
    comp = UrnComposition()
    assert comp.total == 10_000
    model = urn2_model(comp)
    for point, total in _row_sums(model):
        assert abs(total - 1) <= 1e-9
    with pytest.raises(InvalidComposition):
        UrnComposition(shared_count=0)
    with pytest.raises(InvalidComposition):
        UrnComposition(other_colors=())


@pytest.mark.parametrize("n", [1, 3, 10])
def test_binomial_matches_scipy(n):
    grid = [0.1, 0.25, 0.5, 0.9]
    model = binomial_model(n, grid)
    for p in grid:
        for x in range(n + 1):
            assert math.isclose(model.prob((p,), x), stats.binom.pmf(x, n, p), rel_tol=1e-12, abs_tol=1e-300)


def test_binomial_rejects_bad_grid():
    with pytest.raises(InvalidGrid):
        binomial_model(3, [0.5, 1.5])
    with pytest.raises(InvalidGrid):
        binomial_model(3, [])


def test_sure_thing_model_gives_probability_one():
    model = surething_model("HHTH")
    L = likelihood(model, "HHTH")
    assert L[("HHTH",)] == 1.0


def test_sampling_is_deterministic():
    model = birnbaum_model()
    theta = model.space.point(mu=0, sigma=100)
    a = sample(model, theta, 1000, seed=11)
    b = sample(model, theta, 1000, seed=11)
    c = sample(model, theta, 1000, seed=11, stream=1)
    assert list(a) == list(b)
    assert list(a) != list(c)
    assert all(-100 < x < 100 for x in a)


def test_sampling_frequencies_match_probabilities():
    model = birnbaum_model(BirnbaumConfig(mu_values=range(0, 1)))
    theta = model.space.point(mu=0, sigma=100)
    draws = np.array(list(sample(model, theta, 200_000, seed=5)))
    xs, ps = ordered_support(model, theta.values)
    counts = np.array([np.count_nonzero(draws == x) for x in xs])
    expected = ps * len(draws)
    chi2 = float(np.sum((counts - expected) ** 2 / expected))
    assert stats.chi2.sf(chi2, len(xs) - 1) > 1e-4
