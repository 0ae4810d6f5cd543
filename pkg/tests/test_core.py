import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from likelihood_evidence import (
    CrossModelComparison,
    ImpossibleObservation,
    LikelihoodFunction,
    OutcomeNotInSpace,
    OutcomeSpace,
    ParameterSpace,
    Sample,
    Support,
    UndefinedRatio,
    UnknownParameter,
    build_model,
    comparable,
    compare,
    iid_likelihood,
    likelihood,
    likelihood_ratio,
    max_likelihood_points,
    proportional_equivalent,
    rain_model,
    urn1_model,
)
from likelihood_evidence.errors import InvalidSpace, NegativeProbability, RowNotNormalized


def test_rain_ratios():
    L = likelihood(rain_model(), "rain")
    assert likelihood_ratio(L, {"day": "Wednesday"}, {"day": "Thursday"}).ratio == 3.25
    assert likelihood_ratio(L, {"day": "Thursday"}, {"day": "Saturday"}).ratio == 20.0


def test_rain_argmax_is_wednesday():
    L = likelihood(rain_model(), "rain")
    assert {str(p) for p in max_likelihood_points(L)} == {"day=Wednesday"}


def test_zero_over_zero_is_undefined():
    L = likelihood(rain_model(), "rain")
    with pytest.raises(UndefinedRatio):
        likelihood_ratio(L, {"day": "Monday"}, {"day": "Monday"})


def test_positive_over_zero_is_conclusive():
    L = likelihood(rain_model(), "rain")
    cmp = likelihood_ratio(L, {"day": "Tuesday"}, {"day": "Monday"})
    assert cmp.ratio == math.inf
    assert cmp.classification is Support.CONCLUSIVE_A


def test_urn1_non_red_is_conclusive_against_single_color():
    L = likelihood(urn1_model(), "non-red")
    cmp = likelihood_ratio(L, {"nu_c": 1}, {"nu_c": 201})
    assert cmp.ratio == 0.0
    assert cmp.classification is Support.CONCLUSIVE_B


def test_unknown_outcome_and_parameter():
    model = rain_model()
    with pytest.raises(OutcomeNotInSpace):
        likelihood(model, "snow")
    L = likelihood(model, "rain")
    with pytest.raises(UnknownParameter):
        L.space.parse_point("day=Funday")


def test_impossible_observation():
    space = ParameterSpace([("t", (0, 1))])
    model = build_model(space, OutcomeSpace.enumerated(["a", "b"]), {(0,): [1, 0], (1,): [1, 0]})
    with pytest.raises(ImpossibleObservation):
        likelihood(model, "b")


def test_build_model_rejects_bad_rows():
    space = ParameterSpace([("t", (0,))])
    outcomes = OutcomeSpace.enumerated(["a", "b"])
    with pytest.raises(RowNotNormalized):
        build_model(space, outcomes, {(0,): [0.5, 0.4]})
    with pytest.raises(NegativeProbability):
        build_model(space, outcomes, {(0,): [1.5, -0.5]})
    with pytest.raises(InvalidSpace):
        ParameterSpace([("t", (0, 0))])


def test_points_from_other_space_are_refused():
    L_rain = likelihood(rain_model(), "rain")
    other = urn1_model().space.point(nu_c=1)
    with pytest.raises(CrossModelComparison):
        likelihood_ratio(L_rain, other, {"day": "Monday"})


def test_compare_across_models():
    L_rain = likelihood(rain_model(), "rain")
    L_urn = likelihood(urn1_model(), "red")
    with pytest.raises(CrossModelComparison):
        compare(L_rain, {"day": "Monday"}, L_urn, {"nu_c": 1})
    scaled = L_rain.scaled(7.0)
    assert compare(L_rain, {"day": "Wednesday"}, scaled, {"day": "Thursday"}).ratio == 3.25


def test_comparable_needs_same_function():
    L = likelihood(rain_model(), "rain")
    assert comparable(L, L)
    assert comparable(L, L.scaled(0.5))
    assert not comparable(L, likelihood(rain_model(), "not-rain"))
    assert not comparable(L, likelihood(urn1_model(), "red"))


# -- properties --------------------------------------------------------------

positive = st.floats(min_value=1e-6, max_value=1e6, allow_nan=False, allow_infinity=False)
probability_rows = st.lists(
    st.lists(st.integers(min_value=0, max_value=20), min_size=3, max_size=3).filter(lambda r: sum(r) > 0),
    min_size=2,
    max_size=6,
)


def _model(rows):
    space = ParameterSpace([("t", tuple(range(len(rows))))])
    table = {(i,): [v / sum(r) for v in r] for i, r in enumerate(rows)}
    return build_model(space, OutcomeSpace.enumerated(["x", "y", "z"]), table)


@settings(max_examples=200, deadline=None)
@given(gamma=positive, obs=st.sampled_from(["rain", "not-rain"]))
def test_ratios_and_argmax_ignore_scale(gamma, obs):
    L = likelihood(rain_model(), obs)
    S = L.scaled(gamma)
    assert max_likelihood_points(S) == max_likelihood_points(L)
    days = list(L.space.values("day"))
    for a in days:
        for b in days:
            try:
                r = likelihood_ratio(L, {"day": a}, {"day": b}).ratio
            except UndefinedRatio:
                with pytest.raises(UndefinedRatio):
                    likelihood_ratio(S, {"day": a}, {"day": b})
                continue
            assert likelihood_ratio(S, {"day": a}, {"day": b}).ratio == r


@settings(max_examples=200, deadline=None)
@given(rows=probability_rows, data=st.data())
def test_ratio_transitivity(rows, data):
    model = _model(rows)
    obs = data.draw(st.sampled_from(["x", "y", "z"]))
    try:
        L = likelihood(model, obs)
    except ImpossibleObservation:
        return
    values = [L[(i,)] for i in range(len(rows))]
    positive_points = [i for i, v in enumerate(values) if v > 0]
    if len(positive_points) < 3:
        return
    a, b, c = positive_points[:3]
    ab = likelihood_ratio(L, (a,), (b,)).ratio
    bc = likelihood_ratio(L, (b,), (c,)).ratio
    ac = likelihood_ratio(L, (a,), (c,)).ratio
    assert math.isclose(ab * bc, ac, rel_tol=1e-12)


@settings(max_examples=200, deadline=None)
@given(rows=probability_rows, data=st.data())
def test_iid_likelihood_ignores_order(rows, data):
    model = _model(rows)
    obs = data.draw(st.lists(st.sampled_from(["x", "y", "z"]), min_size=1, max_size=6))
    perm = data.draw(st.permutations(obs))
    try:
        L1 = iid_likelihood(model, Sample(obs))
    except ImpossibleObservation:
        with pytest.raises(ImpossibleObservation):
            iid_likelihood(model, Sample(perm))
        return
    L2 = iid_likelihood(model, Sample(perm))
    assert dict(L1.raw_items()) == dict(L2.raw_items())


@settings(max_examples=200, deadline=None)
@given(rows=probability_rows, gamma=positive, obs=st.sampled_from(["x", "y", "z"]))
def test_proportional_equivalence_properties(rows, gamma, obs):
    try:
        L = likelihood(_model(rows), obs)
    except ImpossibleObservation:
        return
    S = L.scaled(gamma)
    assert proportional_equivalent(L, L)
    assert proportional_equivalent(L, S)
    assert proportional_equivalent(S, L)


def test_likelihood_function_scaling_is_exact():
    L = likelihood(rain_model(), "rain")
    assert isinstance(L, LikelihoodFunction)
    S = L * 3.0
    assert S.raw({"day": "Wednesday"}) == L.raw({"day": "Wednesday"})
    assert S[{"day": "Wednesday"}] == 3.0 * L[{"day": "Wednesday"}]


def test_numpy_integers_address_range_dimensions():
    import numpy as np

    from likelihood_evidence import birnbaum_model

    L = likelihood(birnbaum_model(), 17)
    assert L[(np.int64(17), np.int64(0))] == 1.0
    assert L[{"mu": np.int32(17), "sigma": 100}] == 0.01
