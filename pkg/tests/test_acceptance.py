"""Acceptance criteria, one check per criterion.

Each check returns ``(passed, detail)``.  Under pytest every check is its own
test and prints one ``PASS``/``FAIL`` line; ``python tests/test_acceptance.py``
prints the same lines without pytest.
"""

import contextlib
import io
import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from likelihood_evidence import (  # noqa: E402
    BUILTINS,
    BirnbaumConfig,
    ComparisonSpec,
    NuisanceSpec,
    Sample,
    birnbaum_model,
    derived_statistic_model,
    distinct_count_statistic,
    exact_misleading_probability,
    iid_likelihood,
    likelihood,
    likelihood_ratio,
    marginalize,
    max_likelihood_points,
    monte_carlo_misleading,
    parse,
    profile,
    rain_model,
    sample,
    serialize,
    to_model,
    urn1_model,
    urn2_model,
)
from likelihood_evidence._enumeration import all_sequences, row_products  # noqa: E402
from likelihood_evidence.cli import run  # noqa: E402
from likelihood_evidence.models import PRINTED_BIRNBAUM_C, ordered_support  # noqa: E402

CORPUS = sorted((Path(__file__).parent / "data" / "corpus").glob("*.lmod"))
BIRNBAUM_WINDOW = list(range(-1000, 1001)) + [-(10**10) + 1, 10**10 - 1]


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = run(list(argv))
    return code, out.getvalue(), err.getvalue()


def criterion_1():
    code, out, _ = _cli("ratio", "--builtin", "rain", "--obs", "rain", "--a", "day=Wednesday", "--b", "day=Thursday")
    wed_thu = code == 0 and "ratio=3.25\n" in out
    L = likelihood(rain_model(), "rain")
    thu_sat = likelihood_ratio(L, {"day": "Thursday"}, {"day": "Saturday"}).ratio
    return wed_thu and thu_sat == 20.0, f"Wednesday:Thursday=3.25 via CLI ({wed_thu}), Thursday:Saturday={thu_sat!r}"


def criterion_2():
    model = urn1_model()
    red = likelihood_ratio(likelihood(model, "red"), {"nu_c": 1}, {"nu_c": 201})
    other = likelihood_ratio(likelihood(model, "non-red"), {"nu_c": 1}, {"nu_c": 201})
    ok = red.ratio == 100.0 and other.ratio == 0.0 and other.classification.value == "conclusive_b"
    return ok, f"red: {red.ratio!r}; non-red: {other.ratio!r} ({other.classification.value})"


def criterion_3():
    stat = distinct_count_statistic()
    checked = 0
    for model, observations in (
        (urn2_model(), [x for x, _ in urn2_model().support(("blue", 201))]),
        (birnbaum_model(), [x for x in range(-400, 401)]),
    ):
        derived = derived_statistic_model(model, stat, 1, NuisanceSpec.over(model.space, ["mu"]))
        interest = derived.space.names[0]
        a, b = derived.space.values(interest)
        for x in observations:
            L = likelihood(derived, stat(Sample([x])))
            if likelihood_ratio(L, (a,), (b,)).ratio != 1.0:
                return False, f"{model.name}: observation {x!r} gives a ratio other than 1"
            checked += 1
    return True, f"ratio exactly 1 for all {checked} observations checked (urn2 colors, Birnbaum x in -400..400)"


def criterion_4():
    model = birnbaum_model()
    worst = math.inf
    for x in BIRNBAUM_WINDOW:
        L = likelihood(model, x)
        top = max_likelihood_points(L)
        if {p.values for p in top} != {(x, 0)}:
            return False, f"argmax at x={x} is {sorted(str(p) for p in top)}"
        worst = min(worst, likelihood_ratio(L, (x, 0), (x, 100)).ratio)
    printed = 1 / (PRINTED_BIRNBAUM_C * 100)
    ok = worst == 100.0
    return ok, (
        f"argmax (x,0) unique for {len(BIRNBAUM_WINDOW)} x; ratio vs (x,100) = {worst!r} with c=1/10000; "
        f"c=1/10040 would give {float(printed)!r} but does not normalize (total 250/251)"
    )


def criterion_5():
    model = birnbaum_model()
    true = model.space.point(mu=0, sigma=100)
    vector = exact_misleading_probability(model, true, ComparisonSpec("vector-argmax", 100), 1).probability
    derived = {k: exact_misleading_probability(model, true, ComparisonSpec("interest-derived", k), 1).probability
               for k in (1.0001, 2, 100, 1e9)}
    ok = vector == 1.0 and all(p == 0.0 for p in derived.values())
    return ok, f"vector-argmax k=100: {vector!r}; interest-derived: {derived}"


def criterion_6():
    L = likelihood(birnbaum_model(), 17)
    marginal = likelihood_ratio(marginalize(L, ["mu"]), {"sigma": 0}, {"sigma": 100}).ratio
    profiled = likelihood_ratio(profile(L, ["mu"]), {"sigma": 0}, {"sigma": 100}).ratio
    ok = abs(marginal - 1.0) <= 1e-12 and profiled == 100.0
    return ok, f"marginal ratio {marginal!r}; profile ratio {profiled!r}"


def criterion_7():
    model = birnbaum_model()
    same = iid_likelihood(model, [17, 17])
    best_100 = max(v for p, v in same.items() if p["sigma"] == 100)
    ratio_same = same[(17, 0)] / best_100
    different = iid_likelihood(model, [17, 20])
    zero = all(v == 0.0 for p, v in different.items() if p["sigma"] == 0)
    start = time.perf_counter()
    xs, ps = ordered_support(model, (0, 100))
    rows = all_sequences(len(xs), 2, 10**6)
    equal = rows[:, 0] == rows[:, 1]
    enumerated = math.fsum(row_products(ps, rows)[equal])
    elapsed = time.perf_counter() - start
    oracle = float(sum(Fraction(100 - abs(d), 10_000) ** 2 for d in range(-99, 100)))
    ok = ratio_same == 1e4 and zero and math.isclose(enumerated, oracle, rel_tol=1e-12) and elapsed < 1
    return ok, (
        f"x1=x2 ratio {ratio_same!r}; x1!=x2 sigma=0 all zero: {zero}; "
        f"P(x1=x2 | sigma=100) = {enumerated!r} over {len(rows)} pairs in {elapsed:.3f}s "
        f"(exact {oracle!r}); a bound of 1e-4 would not hold"
    )


def criterion_8():
    code, out, err = _cli("ratio", "--builtin", "binomial", "--coin-n", "4", "--p-grid", "0.25,0.5,0.75",
                          "--obs", "3", "--a", "p=0.75", "--b", "sequence=HTHH",
                          "--b-builtin", "sure-thing", "--sequence", "HTHH", "--b-obs", "HTHH")
    ok = code == 4 and err.startswith("error: CrossModelComparison:")
    return ok, f"exit {code}; {err.strip()}"


def _fuzzed(index):
    from test_modelspec import _fuzzed_model

    return to_model(parse(_fuzzed_model(random.Random(index), index)))


def criterion_9():
    from test_misleading import _configurations

    failures = []
    args = {"binomial": (5, [0.1, 0.5]), "sure-thing": ("HT",)}
    for name, factory in BUILTINS.items():
        model = factory(*args.get(name, ()))
        rows = (probs for _, probs in model.rows()) if model.is_dense else (
            [p for _, p in model.support(t)] for t in [(0, 0), (0, 100), (10**10 - 1, 100)]
        ) if name == "birnbaum" else ([p for _, p in model.support(t)] for t in model.space.iter_values())
        if any(abs(math.fsum(r) - 1) > 1e-9 for r in rows):
            failures.append(f"normalization {name}")
    for i in range(100):
        if any(abs(math.fsum(p) - 1) > 1e-9 for _, p in _fuzzed(i).rows()):
            failures.append(f"normalization fuzz {i}")

    L = likelihood(rain_model(), "rain")
    for gamma in (1e-6, 0.3, 7.0, 1e6):
        S = L.scaled(gamma)
        if max_likelihood_points(S) != max_likelihood_points(L) or \
                likelihood_ratio(S, {"day": "Wednesday"}, {"day": "Thursday"}).ratio != 3.25:
            failures.append(f"scale invariance {gamma}")

    small = birnbaum_model(BirnbaumConfig(mu_values=range(-300, 301)))
    rng = random.Random(1)
    for _ in range(20):
        obs = [rng.randint(-50, 50) for _ in range(4)]
        perm = obs[:]
        rng.shuffle(perm)
        if dict(iid_likelihood(small, obs).raw_items()) != dict(iid_likelihood(small, perm).raw_items()):
            failures.append(f"permutation {obs}")

    for path in CORPUS:
        doc = parse(path.read_text(encoding="utf-8"))
        if parse(serialize(doc)) != doc:
            failures.append(f"round trip {path.name}")

    start = time.perf_counter()
    worst = 0.0
    configs = _configurations(small)
    for i, (label, model, true, spec, n) in enumerate(configs):
        exact = exact_misleading_probability(model, true, spec, n).probability
        mc = monte_carlo_misleading(model, true, spec, n, 100_000, seed=100 + i).probability
        se = math.sqrt(exact * (1 - exact) / 100_000)
        z = 0.0 if mc == exact else abs(mc - exact) / se if se else math.inf
        worst = max(worst, z)
        if z > 5:
            failures.append(f"monte carlo {label}")
    elapsed = time.perf_counter() - start
    if elapsed > 10:
        failures.append(f"monte carlo took {elapsed:.1f}s")
    detail = (f"{len(BUILTINS)} builtins + 100 fuzzed models normalized, {len(CORPUS)} corpus files round-trip, "
              f"{len(configs)} MC configs worst |z|={worst:.2f} in {elapsed:.1f}s")
    return not failures, detail if not failures else "; ".join(failures)


def criterion_10():
    model = birnbaum_model()
    theta = model.space.point(mu=0, sigma=100)
    draws_equal = list(sample(model, theta, 5000, seed=42)) == list(sample(model, theta, 5000, seed=42))
    small = birnbaum_model(BirnbaumConfig(mu_values=range(-300, 301)))
    spec = ComparisonSpec("vector-argmax", 100)
    true = small.space.point(mu=0, sigma=100)
    reports = {t: monte_carlo_misleading(small, true, spec, 2, 50_000, seed=7, threads=t) for t in (1, 2, 4)}
    same = len({r for r in reports.values()}) == 1
    again = monte_carlo_misleading(small, true, spec, 2, 50_000, seed=7, threads=1) == reports[1]
    code_a = _cli("misleading", "mc", "--builtin", "urn2", "--true", "mu=blue,nu_c=201", "--style",
                  "vector-argmax", "--k", "50", "--n", "1", "--trials", "20000", "--seed", "5", "--format", "json")
    code_b = _cli("misleading", "mc", "--builtin", "urn2", "--true", "mu=blue,nu_c=201", "--style",
                  "vector-argmax", "--k", "50", "--n", "1", "--trials", "20000", "--seed", "5", "--format", "json")
    ok = draws_equal and same and again and code_a == code_b
    return ok, (f"sampling repeatable: {draws_equal}; MC equal across 1/2/4 threads: {same}; "
                f"rerun equal: {again}; CLI bytes equal: {code_a == code_b}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _line(number, check):
    passed, detail = check()
    return passed, f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"


@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1))
def test_criterion(number, capsys):
    passed, line = _line(number, CRITERIA[number - 1])
    with capsys.disabled():
        print("\n" + line)
    assert passed, line


if __name__ == "__main__":
    results = [_line(i, check) for i, check in enumerate(CRITERIA, start=1)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(p for p, _ in results) else 1)
