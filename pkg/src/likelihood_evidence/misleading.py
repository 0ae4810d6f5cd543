"""Probability that a sample gives misleading evidence.

Given a true parameter point, a sample size ``n`` and a way of comparing
hypotheses (:class:`ComparisonSpec`), the probability of misleading evidence
is the probability, under the true point, of drawing a sample whose
likelihood ratio favors a false hypothesis by a factor of at least ``k``.

Four comparison styles are supported:

``vector-argmax``
    the best full parameter point whose interest coordinates are false,
    against the best point with the true interest coordinates.  On
    Birnbaum's model with one observation it misleads with certainty.
``fixed-pair``
    two named parameter points.
``interest-marginal``
    the marginal likelihood of the interest dimensions (nuisance summed out).
``interest-derived``
    the likelihood of a derived statistic whose distribution is free of the
    nuisance dimensions (distinct-count by default).
"""

from __future__ import annotations

import math
from collections.abc import Callable, Hashable, Mapping
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ._enumeration import (
    all_multisets,
    matrix_row_products,
    row_products,
    worker_count,
)
from .core import (
    DiscreteModel,
    LikelihoodFunction,
    ParameterPoint,
    Sample,
    iid_likelihood,
)
from .errors import EnumerationTooLarge, SpecInconsistent
from .models import draw_indices, generator, ordered_support
from .nuisance import (
    DEFAULT_MAX_N,
    DerivedStatistic,
    NuisanceSpec,
    derived_statistic_model,
    distinct_count_statistic,
)

STYLES = ("vector-argmax", "fixed-pair", "interest-marginal", "interest-derived")

#: Trials per random stream in Monte Carlo runs.
BLOCK_SIZE = 8192

DEFAULT_MAX_MULTISETS = 2_000_000
_CHUNK = 4096


@dataclass(frozen=True)
class ComparisonSpec:
    """How a sample is judged to mislead.

    Parameters
    ----------
    style : str
        One of ``vector-argmax``, ``fixed-pair``, ``interest-marginal``,
        ``interest-derived``.
    k : float
        Threshold; a ratio of at least ``k`` (> 1) for a false hypothesis
        counts as misleading.
    interest : tuple of str, optional
        Interest dimensions.  Defaults to the model's declared interest, or
        all dimensions.
    favored : mapping or callable, optional
        Restricts which false interest values count.  A mapping of
        coordinates to match, or a predicate on interest value tuples.  By
        default every interest value other than the true one.
    point_a, point_b
        The pair for ``fixed-pair``: evidence for ``point_a`` over
        ``point_b`` is misleading when ``point_a`` is false.
    statistic : DerivedStatistic, optional
        For ``interest-derived``; distinct-count by default.
    weights : mapping, optional
        Nuisance weights for ``interest-marginal``.
    """

    style: str
    k: float
    interest: tuple[str, ...] | None = None
    favored: Mapping[str, Hashable] | Callable[[tuple], bool] | None = None
    point_a: Any = None
    point_b: Any = None
    statistic: DerivedStatistic | None = None
    weights: Mapping[tuple, float] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.style not in STYLES:
            raise SpecInconsistent(f"unknown comparison style {self.style!r}; choose from {STYLES}")
        if not (self.k > 1):
            raise SpecInconsistent(f"threshold k must exceed 1, got {self.k!r}")
        if self.style == "fixed-pair" and (self.point_a is None or self.point_b is None):
            raise SpecInconsistent("fixed-pair needs point_a and point_b")
        if self.interest is not None:
            object.__setattr__(self, "interest", tuple(self.interest))


@dataclass(frozen=True)
class MisleadingReport:
    probability: float
    method: str
    size: int
    standard_error: float | None = None
    seed: int | None = None
    min_misleading_ratio: float | None = None
    undefined_probability: float = 0.0
    style: str = ""
    k: float = math.nan
    n: int = 0
    true_point: str = ""

    def as_record(self) -> dict[str, Any]:
        """Flat key/value form with a fixed field order."""
        return {
            "probability": self.probability,
            "method": self.method,
            "style": self.style,
            "k": self.k,
            "n": self.n,
            "true_point": self.true_point,
            "size": self.size,
            "standard_error": self.standard_error,
            "seed": self.seed,
            "min_misleading_ratio": self.min_misleading_ratio,
            "undefined_probability": self.undefined_probability,
        }


def _ratio(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """``num / den`` with ``x/0 = inf`` for ``x > 0`` and ``0/0 = nan``."""
    with np.errstate(divide="ignore", invalid="ignore"):
        out = num / den
    out = np.where((den == 0) & (num > 0), np.inf, out)
    return np.where((den == 0) & (num == 0), np.nan, out)


class _Evaluator:
    """Maps sorted samples (rows of support positions) to likelihood ratios."""

    def __init__(self, model: DiscreteModel, true_point, spec: ComparisonSpec, n: int):
        space = model.space
        self.model = model
        self.spec = spec
        self.n = n
        self.true_values = space.coerce(true_point)
        self.true_point = ParameterPoint(space, self.true_values)
        self.xs, self.ps = ordered_support(model, self.true_values)

        interest = spec.interest or model.interest or space.names
        self.interest_axes = [space.axis(d) for d in space.names if d in interest]
        if len(self.interest_axes) != len(set(interest)):
            raise SpecInconsistent(f"unknown interest dimension(s) in {interest}")
        self.interest_names = tuple(space.names[i] for i in self.interest_axes)
        self.nuisance_names = tuple(d for d in space.names if d not in self.interest_names)
        self.true_interest = self._interest_of(self.true_values)
        self.is_favored = self._favored_predicate()

        if spec.style == "interest-derived":
            self._setup_derived()
        else:
            self._setup_matrix()

    def _interest_of(self, values: tuple) -> tuple:
        return tuple(values[i] for i in self.interest_axes)

    def _favored_predicate(self) -> Callable[[tuple], bool]:
        fav = self.spec.favored
        true = self.true_interest
        if fav is None:
            pred = lambda key: key != true  # noqa: E731
        elif callable(fav):
            pred = lambda key: bool(fav(key))  # noqa: E731
        else:
            unknown = set(fav) - set(self.interest_names)
            if unknown:
                raise SpecInconsistent(f"favored refers to non-interest dimension(s) {sorted(unknown)}")
            pos = {name: i for i, name in enumerate(self.interest_names)}
            wanted = [(pos[name], value) for name, value in fav.items()]
            pred = lambda key: all(key[i] == v for i, v in wanted)  # noqa: E731
        if pred(true):
            raise SpecInconsistent(
                f"the favored side includes the true interest value {dict(zip(self.interest_names, true))}"
            )
        return pred

    # -- likelihood-matrix styles ------------------------------------------

    def _setup_matrix(self):
        model, space = self.model, self.model.space
        if model.is_dense:
            columns = list(space.iter_values())
        else:
            found = set()
            for x in self.xs:
                found.update(model.preimage(x))
            columns = sorted(found, key=space.sort_key)
        col = {c: j for j, c in enumerate(columns)}
        matrix = np.zeros((len(self.xs), len(columns)))
        for i, x in enumerate(self.xs):
            sources = columns if model.is_dense else model.preimage(x)
            for theta in sources:
                matrix[i, col[theta]] = model.prob(theta, x)
        self.columns = columns
        self.matrix = matrix
        style = self.spec.style

        if style == "fixed-pair":
            a = space.coerce(self.spec.point_a)
            b = space.coerce(self.spec.point_b)
            if self._interest_of(a) == self.true_interest:
                raise SpecInconsistent("point_a must be a false hypothesis (its interest value differs from the truth)")
            if not self.is_favored(self._interest_of(a)):
                raise SpecInconsistent("point_a is not on the favored side")
            self.pair = (col.get(a), col.get(b))
        elif style == "vector-argmax":
            keys = [self._interest_of(c) for c in columns]
            self.fav_mask = np.array([self.is_favored(k) for k in keys], dtype=bool)
            self.true_mask = np.array([k == self.true_interest for k in keys], dtype=bool)
        else:  # interest-marginal
            nuisance_axes = [i for i in range(len(space.names)) if i not in self.interest_axes]
            weights = self.spec.weights
            groups: dict[tuple, list[int]] = {}
            for j, c in enumerate(columns):
                groups.setdefault(self._interest_of(c), []).append(j)
            self.groups = []
            for key, cols in groups.items():
                if weights is None:
                    w = np.ones(len(cols))
                else:
                    w = np.array([float(weights.get(tuple(columns[j][i] for i in nuisance_axes), 0.0)) for j in cols])
                self.groups.append((key, np.array(cols), w))
            self.true_group = next((g for g in self.groups if g[0] == self.true_interest), None)
            self.fav_groups = [g for g in self.groups if self.is_favored(g[0])]

    def _matrix_ratios(self, rows: np.ndarray) -> np.ndarray:
        lik = matrix_row_products(self.matrix, rows)
        style = self.spec.style
        zeros = np.zeros(rows.shape[0])
        if style == "fixed-pair":
            ja, jb = self.pair
            num = lik[:, ja] if ja is not None else zeros
            den = lik[:, jb] if jb is not None else zeros
        elif style == "vector-argmax":
            num = lik[:, self.fav_mask].max(axis=1) if self.fav_mask.any() else zeros
            den = lik[:, self.true_mask].max(axis=1) if self.true_mask.any() else zeros
        else:
            def marginal(group):
                _, cols, w = group
                return np.sum(lik[:, cols] * w, axis=1)
            den = marginal(self.true_group) if self.true_group is not None else zeros
            num = zeros
            for g in self.fav_groups:
                num = np.maximum(num, marginal(g))
        return _ratio(num, den)

    # -- derived-statistic style -------------------------------------------

    def _setup_derived(self):
        model, space = self.model, self.model.space
        stat = self.spec.statistic or distinct_count_statistic()
        self.statistic = stat
        window = {}
        for name in self.nuisance_names:
            values = space.values(name)
            pos = space.value_index(name, self.true_values[space.axis(name)])
            window[name] = [values[i] for i in range(max(0, pos - 2), min(len(values), pos + 3))]
        derived = derived_statistic_model(
            model, stat, self.n, NuisanceSpec(self.interest_names, self.nuisance_names),
            nuisance_window=window,
        )
        self.derived = derived
        codomain = stat.codomain(self.n)
        true_row = np.array([derived.prob(self.true_interest, c) for c in codomain])
        num = np.zeros(len(codomain))
        for key in derived.space.iter_values():
            if self.is_favored(key):
                num = np.maximum(num, [derived.prob(key, c) for c in codomain])
        self.code_ratio = _ratio(num, true_row)

    # -- public --------------------------------------------------------------

    def ratios(self, rows: np.ndarray) -> np.ndarray:
        """Ratios for sorted index rows, evaluated in fixed-size chunks."""
        if self.spec.style == "interest-derived":
            return self.code_ratio[self.statistic.codes(self.xs, rows, self.n)]
        out = np.empty(rows.shape[0])
        for start in range(0, rows.shape[0], _CHUNK):
            out[start:start + _CHUNK] = self._matrix_ratios(rows[start:start + _CHUNK])
        return out


def _summary(ratios: np.ndarray, k: float):
    misleading = ratios >= k
    undefined = np.isnan(ratios)
    min_ratio = float(ratios[misleading].min()) if misleading.any() else None
    return misleading, undefined, min_ratio


def exact_misleading_probability(
    model: DiscreteModel,
    true_point,
    spec: ComparisonSpec,
    n: int,
    *,
    max_n: int = DEFAULT_MAX_N,
    max_multisets: int = DEFAULT_MAX_MULTISETS,
) -> MisleadingReport:
    """Exact probability of misleading evidence by enumerating every sample.

    Samples are enumerated as multisets of the true point's support (the
    likelihood of an i.i.d. sample does not depend on order), each weighted
    by its probability times its number of orderings.

    Raises
    ------
    EnumerationTooLarge
        ``n > max_n`` or more than ``max_multisets`` distinct samples.
    SpecInconsistent
        The comparison is ill-posed for this model and truth.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > max_n:
        raise EnumerationTooLarge(f"n = {n} exceeds the exact enumeration bound {max_n}")
    ev = _Evaluator(model, true_point, spec, n)
    rows, mult = all_multisets(len(ev.xs), n, max_multisets)
    probs = mult * row_products(ev.ps, rows)
    ratios = ev.ratios(rows)
    misleading, undefined, min_ratio = _summary(ratios, spec.k)
    p = min(1.0, math.fsum(probs[misleading].tolist()))
    return MisleadingReport(
        probability=p,
        method="exact",
        size=rows.shape[0],
        min_misleading_ratio=min_ratio,
        undefined_probability=math.fsum(probs[undefined].tolist()),
        style=spec.style,
        k=float(spec.k),
        n=n,
        true_point=str(ev.true_point),
    )


def _run_block(ev: _Evaluator, seed: int, block: int, size: int, k: float):
    rng = generator(seed, block)
    rows = np.sort(draw_indices(rng, ev.ps, (size, ev.n)), axis=1)
    uniq, counts = np.unique(rows, axis=0, return_counts=True)
    ratios = ev.ratios(uniq)
    misleading, undefined, min_ratio = _summary(ratios, k)
    return int(counts[misleading].sum()), int(counts[undefined].sum()), min_ratio


def monte_carlo_misleading(
    model: DiscreteModel,
    true_point,
    spec: ComparisonSpec,
    n: int,
    trials: int,
    seed: int,
    *,
    threads: int | None = None,
) -> MisleadingReport:
    """Monte Carlo estimate of the probability of misleading evidence.

    Trials are split into blocks of :data:`BLOCK_SIZE`; block ``b`` draws from
    stream ``b`` of ``seed``.  Blocks may run on several threads but are
    reduced in block order, so the result does not depend on ``threads``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if n < 1:
        raise ValueError("n must be at least 1")
    ev = _Evaluator(model, true_point, spec, n)
    blocks = [(b, min(BLOCK_SIZE, trials - b * BLOCK_SIZE)) for b in range(math.ceil(trials / BLOCK_SIZE))]
    workers = min(worker_count(threads), len(blocks))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda bs: _run_block(ev, seed, bs[0], bs[1], spec.k), blocks))
    else:
        results = [_run_block(ev, seed, b, size, spec.k) for b, size in blocks]
    hits = sum(r[0] for r in results)
    undefined = sum(r[1] for r in results)
    mins = [r[2] for r in results if r[2] is not None]
    p = hits / trials
    return MisleadingReport(
        probability=p,
        method="monte-carlo",
        size=trials,
        standard_error=math.sqrt(p * (1 - p) / trials),
        seed=seed,
        min_misleading_ratio=min(mins) if mins else None,
        undefined_probability=undefined / trials,
        style=spec.style,
        k=float(spec.k),
        n=n,
        true_point=str(ev.true_point),
    )


def two_observation_likelihood_profile(model: DiscreteModel, x1: int, x2: int) -> LikelihoodFunction:
    """Joint likelihood over ``(mu, sigma)`` of two observations of Birnbaum's model.

    For ``x1 == x2`` the ``sigma = 0`` line is 1 at ``mu = x1``; for
    ``x1 != x2`` it is identically 0 and the ``sigma = 100`` line is the
    product of the two triangular factors on the overlap of their supports.
    """
    return iid_likelihood(model, Sample([x1, x2]))


def likelihood_lines(L: LikelihoodFunction, mu_values, dim: str = "mu", line_dim: str = "sigma") -> dict[Hashable, np.ndarray]:
    """Values of ``L`` along ``dim`` for each value of ``line_dim`` (for plotting)."""
    out = {}
    for s in L.space.values(line_dim):
        out[s] = np.array([L[{dim: m, line_dim: s}] for m in mu_values])
    return out
