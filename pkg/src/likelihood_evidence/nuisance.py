"""Eliminating nuisance parameters.

:func:`derived_statistic_model` replaces the data by a statistic whose
distribution does not depend on the nuisance dimensions (the number of
distinct values in the sample, for the urn and Birnbaum models) and builds
the model of that statistic over the interest dimensions alone.

:func:`marginalize` and :func:`profile` work on a joint likelihood function
instead, summing or maximizing over nuisance values.  Profiling is kept as a
contrast, since on Birnbaum's model it brings back the 100:1 verdict.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable, Hashable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from ._enumeration import all_multisets, all_sequences, multiset_count, row_products
from .core import (
    DiscreteModel,
    LikelihoodFunction,
    OutcomeSpace,
    ParameterSpace,
    Sample,
    build_model,
)
from .errors import EmptyInterest, EnumerationTooLarge, NuisanceDependent, SpecInconsistent
from .models import draw_indices, generator, ordered_support

DEFAULT_MAX_N = 4
DEFAULT_MAX_SEQUENCES = 2_000_000

#: Nuisance dimensions longer than this are checked on a representative window.
WINDOW_LIMIT = 1024


@dataclass(frozen=True)
class DerivedStatistic:
    """A statistic of the sample with a finite codomain for each sample size.

    ``batch``, when given, evaluates the statistic on many samples at once.
    It receives an integer array of shape ``(rows, n)`` holding positions
    into a list of distinct outcomes and returns, per row, the position of
    the statistic value in ``codomain(n)``.  Only statistics that depend on
    the sample through which draws coincide can offer ``batch``.

    ``symmetric`` statistics ignore the order of the draws, which lets exact
    enumeration visit multisets instead of sequences.
    """

    name: str
    map: Callable[[Sample], Hashable]
    codomain: Callable[[int], tuple]
    batch: Callable[[np.ndarray], np.ndarray] | None = None
    symmetric: bool = True

    def __call__(self, sample: Sample) -> Hashable:
        return self.map(sample)

    def codes(self, xs: Sequence[Hashable], rows: np.ndarray, n: int) -> np.ndarray:
        if self.batch is not None:
            return np.asarray(self.batch(rows), dtype=np.int64)
        position = {v: i for i, v in enumerate(self.codomain(n))}
        return np.fromiter(
            (position[self.map(Sample(xs[i] for i in row))] for row in rows.tolist()),
            dtype=np.int64,
            count=rows.shape[0],
        )


def _distinct_counts(rows: np.ndarray) -> np.ndarray:
    if rows.shape[1] < 2:
        return np.ones(rows.shape[0], dtype=np.int64)
    srt = np.sort(rows, axis=1)
    return 1 + np.count_nonzero(np.diff(srt, axis=1), axis=1)


def distinct_count_statistic(binned: bool = True) -> DerivedStatistic:
    """Number of distinct values in the sample.

    Binned (the default) into ``"=1"`` and ``">1"``; otherwise the exact
    count ``1..n``.
    """
    if binned:
        return DerivedStatistic(
            "distinct-count",
            lambda s: "=1" if s.distinct_count == 1 else ">1",
            lambda n: ("=1", ">1"),
            lambda rows: (_distinct_counts(rows) > 1).astype(np.int64),
        )
    return DerivedStatistic(
        "distinct-count-exact",
        lambda s: s.distinct_count,
        lambda n: tuple(range(1, n + 1)),
        lambda rows: _distinct_counts(rows) - 1,
    )


@dataclass(frozen=True)
class NuisanceSpec:
    """Which dimensions are of interest and which are a nuisance.

    ``weights`` maps nuisance value tuples (in the order of ``nuisance``) to
    non-negative weights for :func:`marginalize`; absent tuples weigh 0.
    ``None`` means every nuisance value weighs 1.
    """

    interest: tuple[str, ...]
    nuisance: tuple[str, ...] = ()
    weights: Mapping[tuple, float] | None = field(default=None, compare=False)

    @classmethod
    def over(cls, space: ParameterSpace, nuisance: Sequence[str], weights=None) -> NuisanceSpec:
        nuisance = tuple(nuisance)
        for name in nuisance:
            space.axis(name)
        return cls(tuple(n for n in space.names if n not in nuisance), nuisance, weights)

    def resolve(self, space: ParameterSpace) -> tuple[list[int], list[int]]:
        """Axis positions of interest and nuisance dimensions, in space order."""
        interest, nuisance = set(self.interest), set(self.nuisance)
        if interest & nuisance:
            raise SpecInconsistent(f"dimensions {sorted(interest & nuisance)} are both interest and nuisance")
        if interest | nuisance != set(space.names):
            raise SpecInconsistent(
                f"interest {self.interest} and nuisance {self.nuisance} must cover {space.names}"
            )
        if not interest:
            raise EmptyInterest("no interest dimension left")
        names = space.names
        return (
            [i for i, n in enumerate(names) if n in interest],
            [i for i, n in enumerate(names) if n in nuisance],
        )


def _as_spec(space: ParameterSpace, spec: NuisanceSpec | Sequence[str]) -> NuisanceSpec:
    if isinstance(spec, NuisanceSpec):
        return spec
    if isinstance(spec, str):
        spec = [spec]
    return NuisanceSpec.over(space, spec)


def _grouped(L: LikelihoodFunction, spec: NuisanceSpec):
    ia, na = spec.resolve(L.space)
    groups: dict[tuple, list[tuple[tuple, float]]] = {}
    for key in sorted(L._values, key=L.space.sort_key):
        ikey = tuple(key[i] for i in ia)
        nkey = tuple(key[i] for i in na)
        groups.setdefault(ikey, []).append((nkey, L._values[key]))
    space = L.space.subspace([L.space.names[i] for i in ia])
    return space, groups


def marginalize(L: LikelihoodFunction, spec: NuisanceSpec | Sequence[str]) -> LikelihoodFunction:
    """Sum ``L`` over the nuisance dimensions, weighting each nuisance value.

    Sums are exactly rounded (:func:`math.fsum`), so the result does not
    depend on the order in which the nuisance dimensions are listed.
    """
    spec = _as_spec(L.space, spec)
    space, groups = _grouped(L, spec)
    weights = spec.weights
    values = {}
    for ikey, entries in groups.items():
        if weights is None:
            values[ikey] = math.fsum(v for _, v in entries)
        else:
            values[ikey] = math.fsum(v * float(weights.get(nkey, 0.0)) for nkey, v in entries)
    return LikelihoodFunction(space, values, scale=L.scale, label=f"marginal {L.label}")


def profile(L: LikelihoodFunction, spec: NuisanceSpec | Sequence[str]) -> LikelihoodFunction:
    """Maximize ``L`` over the nuisance dimensions."""
    spec = _as_spec(L.space, spec)
    space, groups = _grouped(L, spec)
    values = {ikey: max(v for _, v in entries) for ikey, entries in groups.items()}
    return LikelihoodFunction(space, values, scale=L.scale, label=f"profile {L.label}")


def default_window(values: Sequence[Hashable], limit: int = WINDOW_LIMIT) -> Sequence[Hashable]:
    """All values when there are few; otherwise both ends and the middle."""
    m = len(values)
    if m <= limit:
        return values
    mid = m // 2
    picks = sorted({0, 1, 2, mid - 1, mid, mid + 1, m - 3, m - 2, m - 1})
    return [values[i] for i in picks]


def _exact_bins(codes: np.ndarray, weights: np.ndarray, k: int) -> np.ndarray:
    """Per-bin sums, exactly rounded and divided by the exactly rounded total.

    Dividing by the total removes the rounding left in the row probabilities,
    so a statistic that is constant over the sample space gets probability 1.0.
    """
    order = np.argsort(codes, kind="stable")
    bounds = np.searchsorted(codes[order], np.arange(k + 1))
    ordered = weights[order]
    sums = [math.fsum(ordered[bounds[j]:bounds[j + 1]]) for j in range(k)]
    total = math.fsum(sums)
    return np.array([v / total for v in sums])


def statistic_distribution(
    model: DiscreteModel,
    theta: tuple,
    stat: DerivedStatistic,
    n: int,
    *,
    max_n: int = DEFAULT_MAX_N,
    max_sequences: int = DEFAULT_MAX_SEQUENCES,
    mc_trials: int | None = None,
    seed: int = 0,
    stream: int = 0,
) -> tuple[np.ndarray, np.ndarray | None]:
    """Distribution of ``stat`` over ``n`` i.i.d. draws under ``theta``.

    Returns the probabilities aligned with ``stat.codomain(n)`` and, for Monte
    Carlo estimates, their standard errors (``None`` when exact).
    """
    xs, ps = ordered_support(model, theta)
    k = len(stat.codomain(n))
    s = len(xs)
    count = multiset_count(s, n) if stat.symmetric else s**n
    if n <= max_n and count <= max_sequences:
        if stat.symmetric:
            rows, mult = all_multisets(s, n, max_sequences)
            weights = row_products(ps, rows) * mult
        else:
            rows = all_sequences(s, n, max_sequences)
            weights = row_products(ps, rows)
        codes = stat.codes(xs, rows, n)
        return _exact_bins(codes, weights, k), None
    if mc_trials is None:
        raise EnumerationTooLarge(
            f"{count} samples of size {n} under {theta!r} exceed the enumeration bound "
            f"(n <= {max_n}, <= {max_sequences} samples); pass mc_trials to estimate"
        )
    rows = draw_indices(generator(seed, stream), ps, (mc_trials, n))
    codes = stat.codes(xs, rows, n)
    est = np.bincount(codes, minlength=k)[:k] / mc_trials
    return est, np.sqrt(est * (1 - est) / mc_trials)


def derived_statistic_model(
    model: DiscreteModel,
    stat: DerivedStatistic,
    n: int,
    spec: NuisanceSpec | Sequence[str],
    *,
    nuisance_window: Mapping[str, Sequence[Hashable]] | None = None,
    max_n: int = DEFAULT_MAX_N,
    max_sequences: int = DEFAULT_MAX_SEQUENCES,
    mc_trials: int | None = None,
    seed: int = 0,
    tol: float = 1e-12,
) -> DiscreteModel:
    """Model of ``stat`` over samples of size ``n``, indexed by interest dimensions.

    The statistic's distribution is computed for every interest value and
    every nuisance value in the window, and must agree across nuisance values
    (within ``tol``, or five standard errors when estimated by Monte Carlo).

    Raises
    ------
    NuisanceDependent
        The distribution changes with a nuisance value; the exception carries
        two witness parameter points.
    EnumerationTooLarge
        ``n`` or ``len(support) ** n`` exceeds the enumeration bound and no
        ``mc_trials`` were given.
    """
    if n < 1:
        raise ValueError("sample size must be at least 1")
    space = model.space
    spec = _as_spec(space, spec)
    ia, na = spec.resolve(space)
    names = space.names
    windows = []
    for i in na:
        values = space.dimensions[i][1]
        if nuisance_window and names[i] in nuisance_window:
            chosen = list(nuisance_window[names[i]])
            for v in chosen:
                space.value_index(names[i], v)
            windows.append(chosen)
        else:
            windows.append(default_window(values))
    interest_space = space.subspace([names[i] for i in ia])
    codomain = stat.codomain(n)

    cache: dict[tuple, tuple[np.ndarray, np.ndarray | None]] = {}
    table = {}
    errors = {}
    stream = 0
    for ikey in interest_space.iter_values():
        first = None
        for nkey in itertools.product(*windows):
            theta = [None] * len(names)
            for i, v in zip(ia, ikey):
                theta[i] = v
            for i, v in zip(na, nkey):
                theta[i] = v
            theta = tuple(theta)
            xs, ps = ordered_support(model, theta)
            cache_key = (tuple(ps.tolist()),) if stat.batch is not None else (tuple(ps.tolist()), tuple(xs))
            if cache_key not in cache:
                cache[cache_key] = statistic_distribution(
                    model, theta, stat, n, max_n=max_n, max_sequences=max_sequences,
                    mc_trials=mc_trials, seed=seed, stream=stream,
                )
                stream += 1
            dist, se = cache[cache_key]
            if first is None:
                first = (theta, dist, se)
                continue
            bound = tol if se is None else tol + 5 * float(np.max(np.hypot(se, first[2])))
            if np.max(np.abs(dist - first[1])) > bound:
                diff = [names[i] for i, a, b in zip(range(len(names)), first[0], theta) if a != b]
                raise NuisanceDependent(
                    ",".join(diff), first[0], theta,
                    f"max difference {float(np.max(np.abs(dist - first[1]))):.3g}",
                )
        table[ikey] = dict(zip(codomain, first[1].tolist()))
        if first[2] is not None:
            errors[ikey] = dict(zip(codomain, first[2].tolist()))

    return build_model(
        interest_space,
        OutcomeSpace.enumerated(codomain),
        table,
        name=f"{model.name}:{stat.name}[n={n}]",
        meta={
            "parent": model.name,
            "statistic": stat.name,
            "n": n,
            "method": "exact" if not errors else "monte-carlo",
            "standard_errors": errors or None,
            "nuisance": spec.nuisance,
        },
    )
