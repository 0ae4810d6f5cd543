"""Discrete statistical models, likelihood functions and likelihood ratios.

A :class:`DiscreteModel` is a family of probability mass functions indexed by
the points of a finite :class:`ParameterSpace`.  Observing an outcome turns
the model into a :class:`LikelihoodFunction` over the same space, and the
evidence that outcome gives for one parameter point over another is the ratio
of their likelihoods (:func:`likelihood_ratio`).

Likelihood functions are only defined up to a positive constant.  Each
:class:`LikelihoodFunction` therefore keeps its raw values (the probabilities,
i.e. the representative with constant 1) separate from a ``scale`` factor;
ratios and maxima are computed on the raw values so that rescaling never
changes them, not even in the last bit.
"""

from __future__ import annotations

import enum
import itertools
import math
from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

from .errors import (
    CrossModelComparison,
    EnumerationTooLarge,
    ImpossibleObservation,
    InvalidSpace,
    ModelError,
    NegativeProbability,
    OutcomeNotInSpace,
    RowNotNormalized,
    UndefinedRatio,
    UnknownParameter,
)

NORMALIZATION_TOL = 1e-9

#: Spaces larger than this are never enumerated point by point.
MAX_ENUMERATED_POINTS = 1_000_000


def _format_value(value: Any) -> str:
    return str(value)


# ---------------------------------------------------------------------------
# Parameter space and points
# ---------------------------------------------------------------------------


class ParameterSpace:
    """Cartesian product of named, finite, ordered value lists.

    Parameters
    ----------
    dimensions : iterable of (name, values)
        ``values`` is any finite sequence of distinct hashable values.  A
        ``range`` is kept as is, which lets a dimension span billions of
        integers (Birnbaum's mean) without materializing them.
    """

    __slots__ = ("_dims", "_names", "_lookup", "_hash")

    def __init__(self, dimensions: Iterable[tuple[str, Sequence[Hashable]]]):
        dims = []
        lookup = []
        for name, values in dimensions:
            if not isinstance(name, str) or not name:
                raise InvalidSpace(f"dimension name must be a non-empty string, got {name!r}")
            if not isinstance(values, range):
                values = tuple(values)
            if len(values) == 0:
                raise InvalidSpace(f"dimension {name!r} has no values")
            if isinstance(values, range):
                lookup.append(None)
            else:
                index = {}
                for i, v in enumerate(values):
                    if v in index:
                        raise InvalidSpace(f"dimension {name!r} repeats value {v!r}")
                    index[v] = i
                lookup.append(index)
            dims.append((name, values))
        names = tuple(name for name, _ in dims)
        if not names:
            raise InvalidSpace("a parameter space needs at least one dimension")
        if len(set(names)) != len(names):
            raise InvalidSpace(f"dimension names must be distinct: {names}")
        self._dims = tuple(dims)
        self._names = names
        self._lookup = tuple(lookup)
        self._hash = hash(self._dims)

    @property
    def dimensions(self) -> tuple[tuple[str, Sequence[Hashable]], ...]:
        return self._dims

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    def values(self, name: str) -> Sequence[Hashable]:
        return self._dims[self.axis(name)][1]

    def axis(self, name: str) -> int:
        try:
            return self._names.index(name)
        except ValueError:
            raise UnknownParameter(f"no dimension named {name!r}; have {self._names}") from None

    @property
    def size(self) -> int:
        return math.prod(len(v) for _, v in self._dims)

    def value_index(self, name: str, value: Hashable) -> int:
        i = self.axis(name)
        values = self._dims[i][1]
        if self._lookup[i] is None:
            if value in values:
                return values.index(value)
        else:
            try:
                return self._lookup[i][value]
            except (KeyError, TypeError):
                pass
        raise UnknownParameter(f"{value!r} is not a value of dimension {name!r}")

    def __contains__(self, values: object) -> bool:
        if not isinstance(values, tuple) or len(values) != len(self._dims):
            return False
        for (_, dim_values), lookup, v in zip(self._dims, self._lookup, values):
            if lookup is None:
                if not (isinstance(v, int) and v in dim_values):
                    return False
            else:
                try:
                    if v not in lookup:
                        return False
                except TypeError:
                    return False
        return True

    def point(self, coords: Mapping[str, Hashable] | None = None, /, **kwargs: Hashable) -> ParameterPoint:
        """Build a point from coordinates given by name."""
        merged = dict(coords or {}, **kwargs)
        unknown = set(merged) - set(self._names)
        if unknown:
            raise UnknownParameter(f"unknown dimension(s) {sorted(unknown)}; have {self._names}")
        missing = [n for n in self._names if n not in merged]
        if missing:
            raise UnknownParameter(f"missing coordinate(s) {missing}")
        return self.point_from_values(tuple(merged[n] for n in self._names))

    def _normalized(self, values: Sequence[Hashable]) -> tuple:
        """Turn integer-like values (numpy integers, say) on range dimensions into ``int``."""
        values = tuple(values)
        if len(values) != len(self._dims):
            return values
        return tuple(
            int(v) if lookup is None and hasattr(v, "__index__") and not isinstance(v, bool) else v
            for lookup, v in zip(self._lookup, values)
        )

    def point_from_values(self, values: Sequence[Hashable]) -> ParameterPoint:
        values = self._normalized(values)
        if values not in self:
            raise UnknownParameter(f"{values!r} is not a point of {self!r}")
        return ParameterPoint(self, values)

    def coerce(self, point: ParameterPoint | Mapping[str, Hashable] | Sequence[Hashable]) -> tuple:
        """Return the value tuple of ``point`` after checking membership.

        A :class:`ParameterPoint` that belongs to another space raises
        :class:`CrossModelComparison`: its likelihood lives on a different
        function.
        """
        if isinstance(point, ParameterPoint):
            if point.space != self:
                raise CrossModelComparison(
                    f"{point} belongs to {point.space!r}, not to {self!r}"
                )
            return point.values
        if isinstance(point, Mapping):
            return self.point(point).values
        values = self._normalized(point)
        if values not in self:
            raise UnknownParameter(f"{values!r} is not a point of {self!r}")
        return values

    def parse_point(self, text: str) -> ParameterPoint:
        """Parse ``"dim=value,dim=value"``; values are matched by their text."""
        coords: dict[str, Hashable] = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            name, sep, token = part.partition("=")
            name, token = name.strip(), token.strip()
            if not sep:
                raise UnknownParameter(f"expected dim=value, got {part!r}")
            i = self.axis(name)
            coords[name] = self._match_token(i, token)
        return self.point(coords)

    def _match_token(self, axis: int, token: str) -> Hashable:
        name, values = self._dims[axis]
        if self._lookup[axis] is None:
            try:
                v = int(token)
            except ValueError:
                raise UnknownParameter(f"{token!r} is not an integer value of {name!r}") from None
            if v in values:
                return v
        else:
            for v in values:
                if _format_value(v) == token:
                    return v
        raise UnknownParameter(f"{token!r} is not a value of dimension {name!r}")

    def iter_values(self, limit: int = MAX_ENUMERATED_POINTS) -> Iterator[tuple]:
        if self.size > limit:
            raise EnumerationTooLarge(
                f"parameter space has {self.size} points (limit {limit}); use a window"
            )
        return itertools.product(*(v for _, v in self._dims))

    def points(self, limit: int = MAX_ENUMERATED_POINTS) -> Iterator[ParameterPoint]:
        for values in self.iter_values(limit):
            yield ParameterPoint(self, values)

    def subspace(self, names: Sequence[str]) -> ParameterSpace:
        return ParameterSpace((n, self.values(n)) for n in names)

    def sort_key(self, values: tuple) -> tuple:
        """Position of ``values`` in the canonical (row-major) point order."""
        out = []
        for (name, dim_values), lookup, v in zip(self._dims, self._lookup, values):
            out.append(dim_values.index(v) if lookup is None else lookup[v])
        return tuple(out)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, ParameterSpace):
            return NotImplemented
        return self._hash == other._hash and self._dims == other._dims

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        parts = []
        for name, values in self._dims:
            if isinstance(values, range):
                parts.append(f"{name}=[{values.start}..{values.stop - 1}]")
            elif len(values) > 6:
                parts.append(f"{name}=[{values[0]!r}, ..., {values[-1]!r}] ({len(values)})")
            else:
                parts.append(f"{name}={list(values)!r}")
        return f"ParameterSpace({', '.join(parts)})"


class ParameterPoint:
    """A point of a :class:`ParameterSpace`; immutable and hashable."""

    __slots__ = ("space", "values")

    def __init__(self, space: ParameterSpace, values: tuple):
        self.space = space
        self.values = values

    def __getitem__(self, name: str) -> Hashable:
        return self.values[self.space.axis(name)]

    def as_dict(self) -> dict[str, Hashable]:
        return dict(zip(self.space.names, self.values))

    def project(self, names: Sequence[str]) -> tuple:
        return tuple(self[n] for n in names)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ParameterPoint):
            return NotImplemented
        return self.values == other.values and self.space == other.space

    def __hash__(self) -> int:
        return hash(self.values)

    def __str__(self) -> str:
        return ",".join(f"{n}={_format_value(v)}" for n, v in zip(self.space.names, self.values))

    def __repr__(self) -> str:
        inner = ", ".join(f"{n}={v!r}" for n, v in zip(self.space.names, self.values))
        return f"ParameterPoint({inner})"


# ---------------------------------------------------------------------------
# Outcomes and samples
# ---------------------------------------------------------------------------


class OutcomeSpace:
    """Either an enumerated list of labels or an inclusive integer interval."""

    __slots__ = ("kind", "labels", "lo", "hi", "_index")

    def __init__(self, kind: str, labels: Sequence[Hashable] | None = None, lo: int | None = None, hi: int | None = None):
        self.kind = kind
        self.labels = labels
        self.lo = lo
        self.hi = hi
        self._index = None
        if kind == "enumerated":
            if labels is None or len(labels) == 0:
                raise InvalidSpace("an enumerated outcome space needs at least one label")
            if isinstance(labels, (list, tuple)):
                self.labels = tuple(labels)
                self._index = {}
                for i, label in enumerate(self.labels):
                    if label in self._index:
                        raise InvalidSpace(f"outcome label {label!r} repeated")
                    self._index[label] = i
        elif kind == "interval":
            if lo is None or hi is None or lo > hi:
                raise InvalidSpace(f"invalid integer interval [{lo}, {hi}]")
        else:
            raise InvalidSpace(f"unknown outcome space kind {kind!r}")

    @classmethod
    def enumerated(cls, labels: Sequence[Hashable]) -> OutcomeSpace:
        return cls("enumerated", labels=labels)

    @classmethod
    def interval(cls, lo: int, hi: int) -> OutcomeSpace:
        return cls("interval", lo=int(lo), hi=int(hi))

    def __len__(self) -> int:
        if self.kind == "interval":
            return self.hi - self.lo + 1
        return len(self.labels)

    def __contains__(self, x: object) -> bool:
        if self.kind == "interval":
            return isinstance(x, int) and not isinstance(x, bool) and self.lo <= x <= self.hi
        if self._index is not None:
            try:
                return x in self._index
            except TypeError:
                return False
        return x in self.labels

    def __iter__(self) -> Iterator[Hashable]:
        if self.kind == "interval":
            return iter(range(self.lo, self.hi + 1))
        return iter(self.labels)

    def index(self, x: Hashable) -> int:
        if x not in self:
            raise OutcomeNotInSpace(f"{x!r} is not a possible outcome")
        if self.kind == "interval":
            return x - self.lo
        if self._index is not None:
            return self._index[x]
        return self.labels.index(x)

    def parse(self, token: str) -> Hashable:
        """Map a command-line token onto an outcome."""
        token = token.strip()
        if self.kind == "interval":
            try:
                x = int(token)
            except ValueError:
                raise OutcomeNotInSpace(f"{token!r} is not an integer outcome") from None
            if x in self:
                return x
        elif self._index is not None:
            for label in self.labels:
                if _format_value(label) == token:
                    return label
        elif token in self:
            return token
        raise OutcomeNotInSpace(f"{token!r} is not a possible outcome")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OutcomeSpace):
            return NotImplemented
        if self.kind != other.kind:
            return False
        if self.kind == "interval":
            return (self.lo, self.hi) == (other.lo, other.hi)
        return self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.kind, self.lo, self.hi, len(self)))

    def __repr__(self) -> str:
        if self.kind == "interval":
            return f"OutcomeSpace.interval({self.lo}, {self.hi})"
        if len(self.labels) > 6:
            return f"OutcomeSpace.enumerated([{self.labels[0]!r}, ..., {self.labels[-1]!r}] ({len(self.labels)}))"
        return f"OutcomeSpace.enumerated({list(self.labels)!r})"


@dataclass(frozen=True)
class Sample:
    """An ordered list of observed outcomes."""

    observations: tuple

    def __init__(self, observations: Iterable[Hashable]):
        object.__setattr__(self, "observations", tuple(observations))

    @property
    def n(self) -> int:
        return len(self.observations)

    @property
    def distinct_count(self) -> int:
        return len(set(self.observations))

    def __len__(self) -> int:
        return len(self.observations)

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self.observations)


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------

PmfCallable = Callable[[tuple, Hashable], float]
SupportCallable = Callable[[tuple], Iterable[tuple[Hashable, float]]]
PreimageCallable = Callable[[Hashable], Iterable[tuple]]


class DiscreteModel:
    """Family of PMFs over ``outcomes`` indexed by the points of ``space``.

    Use :func:`build_model` rather than the constructor; it validates the
    table.  Dense models keep one row per parameter point.  Function-backed
    models keep three callables, all taking parameter value tuples:

    ``pmf(theta, x)``
        probability of outcome ``x``.
    ``support(theta)``
        the outcomes with non-zero probability, as ``(x, p)`` pairs, finite.
    ``preimage(x)``
        every parameter value tuple at which ``x`` may have non-zero
        probability.  Needed when the space is too large to scan.
    """

    def __init__(
        self,
        space: ParameterSpace,
        outcomes: OutcomeSpace,
        *,
        table: Mapping[tuple, Mapping[Hashable, float]] | None = None,
        pmf: PmfCallable | None = None,
        support: SupportCallable | None = None,
        preimage: PreimageCallable | None = None,
        name: str = "",
        interest: Sequence[str] | None = None,
        meta: Mapping[str, Any] | None = None,
    ):
        self.space = space
        self.outcomes = outcomes
        self.name = name
        self.interest = tuple(interest) if interest else None
        self.meta = dict(meta or {})
        self._table = table
        self._pmf = pmf
        self._support = support
        self._preimage = preimage

    @property
    def is_dense(self) -> bool:
        return self._table is not None

    def point(self, coords: Mapping[str, Hashable] | None = None, /, **kwargs: Hashable) -> ParameterPoint:
        return self.space.point(coords, **kwargs)

    def prob(self, theta: ParameterPoint | Mapping | tuple, x: Hashable) -> float:
        values = self.space.coerce(theta)
        if x not in self.outcomes:
            raise OutcomeNotInSpace(f"{x!r} is not a possible outcome of {self.name or 'the model'}")
        if self._table is not None:
            return self._table[values].get(x, 0.0)
        return float(self._pmf(values, x))

    def support(self, theta: ParameterPoint | Mapping | tuple) -> tuple[tuple[Hashable, float], ...]:
        """Outcomes with non-zero probability under ``theta``, as (x, p) pairs."""
        values = self.space.coerce(theta)
        if self._table is not None:
            return tuple((x, p) for x, p in self._table[values].items() if p > 0)
        if self._support is not None:
            return tuple((x, float(p)) for x, p in self._support(values) if p > 0)
        pairs = ((x, float(self._pmf(values, x))) for x in self.outcomes)
        return tuple((x, p) for x, p in pairs if p > 0)

    def preimage(self, x: Hashable) -> Iterable[tuple]:
        """Parameter value tuples at which ``x`` may have positive probability."""
        if self._preimage is not None:
            return self._preimage(x)
        return self.space.iter_values()

    def rows(self) -> Iterator[tuple[ParameterPoint, tuple[float, ...]]]:
        """Dense table rows, aligned with the outcome order."""
        for values in self.space.iter_values():
            row = self._table[values] if self._table is not None else None
            if row is None:
                probs = tuple(float(self._pmf(values, x)) for x in self.outcomes)
            else:
                probs = tuple(row.get(x, 0.0) for x in self.outcomes)
            yield ParameterPoint(self.space, values), probs

    def __repr__(self) -> str:
        kind = "dense" if self.is_dense else "function-backed"
        return f"DiscreteModel({self.name or '?'}, {kind}, {self.space!r}, {self.outcomes!r})"


def _representative_values(space: ParameterSpace, per_dim: int = 3) -> Iterator[tuple]:
    """A small grid of points for spaces too large to validate exhaustively."""
    axes = []
    for _, values in space.dimensions:
        m = len(values)
        if m <= 3 * per_dim:
            axes.append(list(values))
            continue
        mid = m // 2
        picks = set(range(per_dim)) | set(range(mid - per_dim // 2, mid - per_dim // 2 + per_dim))
        picks |= set(range(m - per_dim, m))
        axes.append([values[i] for i in sorted(picks)])
    return itertools.product(*axes)


def _check_row(point: tuple, probs: Iterable[tuple[Hashable, float]], tol: float) -> None:
    total = []
    for x, p in probs:
        if not (p >= 0.0) or p > 1.0 + tol or math.isnan(p):
            raise NegativeProbability(point, x, p)
        total.append(p)
    s = math.fsum(total)
    if abs(s - 1.0) > tol:
        raise RowNotNormalized(point, s)


def build_model(
    space: ParameterSpace,
    outcomes: OutcomeSpace,
    pmf: Mapping | PmfCallable,
    *,
    support: SupportCallable | None = None,
    preimage: PreimageCallable | None = None,
    name: str = "",
    interest: Sequence[str] | None = None,
    meta: Mapping[str, Any] | None = None,
    check_points: Iterable[tuple] | None = None,
    tol: float = NORMALIZATION_TOL,
) -> DiscreteModel:
    """Validate a PMF table or evaluator and wrap it as a :class:`DiscreteModel`.

    Parameters
    ----------
    space, outcomes
        Parameter and outcome spaces.
    pmf
        Either a mapping from parameter point (value tuple, mapping or
        :class:`ParameterPoint`; a bare value for one-dimensional spaces) to a
        row, or a callable ``pmf(theta, x)``.  A row is a sequence aligned with
        an enumerated outcome space or a mapping ``{outcome: p}``.
    support, preimage
        Only for callables; see :class:`DiscreteModel`.
    check_points
        Parameter value tuples to validate for a callable model.  Defaults to
        every point when the space has at most 100,000 points and to a small
        representative grid (ends and middle of every dimension) otherwise.

    Raises
    ------
    NegativeProbability
        A probability lies outside [0, 1].
    RowNotNormalized
        A parameter point's probabilities do not sum to 1 within ``tol``.
    """
    if isinstance(pmf, Mapping):
        table: dict[tuple, dict[Hashable, float]] = {}
        for key, row in pmf.items():
            if isinstance(key, ParameterPoint) or isinstance(key, Mapping) or isinstance(key, tuple):
                values = space.coerce(key)
            else:
                values = space.coerce((key,))
            if values in table:
                raise ModelError(f"duplicate row for {values!r}")
            if isinstance(row, Mapping):
                items = [(x, float(p)) for x, p in row.items()]
            else:
                row = list(row)
                if len(row) != len(outcomes):
                    raise ModelError(
                        f"row for {values!r} has {len(row)} entries, outcome space has {len(outcomes)}"
                    )
                items = [(x, float(p)) for x, p in zip(outcomes, row)]
            for x, _ in items:
                if x not in outcomes:
                    raise OutcomeNotInSpace(f"{x!r} in row {values!r} is not a declared outcome")
            _check_row(values, items, tol)
            table[values] = dict(items)
        for values in space.iter_values():
            if values not in table:
                raise ModelError(f"no row for parameter point {values!r}")
        return DiscreteModel(space, outcomes, table=table, name=name, interest=interest, meta=meta)

    if not callable(pmf):
        raise ModelError("pmf must be a mapping or a callable")
    model = DiscreteModel(
        space, outcomes, pmf=pmf, support=support, preimage=preimage,
        name=name, interest=interest, meta=meta,
    )
    if check_points is None:
        check_points = space.iter_values() if space.size <= 100_000 else _representative_values(space)
    for values in check_points:
        _check_row(values, model.support(values), tol)
    return model


# ---------------------------------------------------------------------------
# Likelihood functions
# ---------------------------------------------------------------------------


class LikelihoodFunction:
    """Map from parameter points to non-negative reals, up to a constant.

    ``values`` holds the raw values keyed by parameter value tuple.  Points
    absent from ``values`` have likelihood zero; function-backed models only
    store the points whose likelihood can be non-zero.  The represented
    function is ``scale * raw``.
    """

    scale_note = "defined up to an arbitrary positive constant"

    __slots__ = ("space", "_values", "scale", "complete", "label")

    def __init__(
        self,
        space: ParameterSpace,
        values: Mapping[tuple, float],
        *,
        scale: float = 1.0,
        complete: bool | None = None,
        label: str = "",
    ):
        if not (scale > 0 and math.isfinite(scale)):
            raise ValueError(f"scale must be a positive finite number, got {scale!r}")
        clean: dict[tuple, float] = {}
        positive = False
        for key, v in values.items():
            v = float(v)
            if not (v >= 0) or math.isinf(v):
                raise ValueError(f"likelihood values must be finite and non-negative; got {v!r} at {key!r}")
            positive = positive or v > 0
            clean[key] = v
        if not positive:
            raise ImpossibleObservation(
                f"{label or 'observation'} has probability zero at every parameter point"
            )
        self.space = space
        self._values = clean
        self.scale = float(scale)
        self.complete = len(clean) == space.size if complete is None else complete
        self.label = label

    def raw(self, point: ParameterPoint | Mapping | tuple) -> float:
        return self._values.get(self.space.coerce(point), 0.0)

    def __getitem__(self, point: ParameterPoint | Mapping | tuple) -> float:
        return self.scale * self.raw(point)

    def __call__(self, point: ParameterPoint | Mapping | tuple | None = None, /, **coords: Hashable) -> float:
        if point is None:
            point = coords
        return self[point]

    def __len__(self) -> int:
        return len(self._values)

    def raw_items(self) -> Iterator[tuple[tuple, float]]:
        return iter(self._values.items())

    def items(self) -> Iterator[tuple[ParameterPoint, float]]:
        """Stored points in canonical order with their (scaled) values."""
        for key in sorted(self._values, key=self.space.sort_key):
            yield ParameterPoint(self.space, key), self.scale * self._values[key]

    @property
    def max_raw(self) -> float:
        return max(self._values.values())

    def scaled(self, gamma: float) -> LikelihoodFunction:
        """The same function with its arbitrary constant multiplied by ``gamma``."""
        out = LikelihoodFunction.__new__(LikelihoodFunction)
        if not (gamma > 0 and math.isfinite(gamma)):
            raise ValueError(f"scale factor must be positive, got {gamma!r}")
        out.space = self.space
        out._values = self._values
        out.scale = self.scale * gamma
        out.complete = self.complete
        out.label = self.label
        return out

    def __mul__(self, gamma: float) -> LikelihoodFunction:
        return self.scaled(gamma)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"LikelihoodFunction({self.label or '?'}, {len(self)} stored points, scale={self.scale!r})"


def likelihood(model: DiscreteModel, obs: Hashable) -> LikelihoodFunction:
    """Likelihood function of a single observation (representative with c = 1).

    Raises
    ------
    OutcomeNotInSpace
        ``obs`` is not a possible outcome.
    ImpossibleObservation
        ``obs`` has probability zero under every parameter point.
    """
    if obs not in model.outcomes:
        raise OutcomeNotInSpace(f"{obs!r} is not a possible outcome of {model.name or 'the model'}")
    values = {theta: model.prob(theta, obs) for theta in model.preimage(obs)}
    return LikelihoodFunction(
        model.space, values, complete=model.is_dense or None, label=f"{model.name}|x={obs}"
    )


def iid_likelihood(model: DiscreteModel, sample: Sample | Sequence[Hashable]) -> LikelihoodFunction:
    """Likelihood of an i.i.d. sample: the product of per-observation probabilities.

    The product is taken in a canonical order (observations sorted by outcome
    position), so any permutation of the sample gives bit-identical values.
    Outcomes that never occur contribute no factor, which is the ``0**0 = 1``
    convention.
    """
    if not isinstance(sample, Sample):
        sample = Sample(sample)
    if sample.n == 0:
        raise ValueError("sample must contain at least one observation")
    for x in sample.observations:
        if x not in model.outcomes:
            raise OutcomeNotInSpace(f"{x!r} is not a possible outcome of {model.name or 'the model'}")
    ordered = sorted(sample.observations, key=model.outcomes.index)
    distinct = list(dict.fromkeys(ordered))

    if model.is_dense:
        candidates: Iterable[tuple] = model.space.iter_values()
    else:
        sets = [set(model.preimage(x)) for x in distinct]
        sets.sort(key=len)
        common = sets[0].intersection(*sets[1:])
        candidates = sorted(common, key=model.space.sort_key)

    values: dict[tuple, float] = {}
    for theta in candidates:
        cache = {x: model.prob(theta, x) for x in distinct}
        v = cache[ordered[0]]
        for x in ordered[1:]:
            if v == 0.0:
                break
            v *= cache[x]
        values[theta] = v
    text = ",".join(str(x) for x in sample.observations)
    return LikelihoodFunction(
        model.space, values, complete=model.is_dense or None, label=f"{model.name}|sample={text}"
    )


# ---------------------------------------------------------------------------
# Evidence
# ---------------------------------------------------------------------------


class Support(enum.Enum):
    FAVORS_A = "favors_a"
    FAVORS_B = "favors_b"
    NEUTRAL = "neutral"
    CONCLUSIVE_A = "conclusive_a"
    CONCLUSIVE_B = "conclusive_b"

    @classmethod
    def classify(cls, ratio: float) -> Support:
        if math.isnan(ratio) or ratio < 0:
            raise ValueError(f"not a likelihood ratio: {ratio!r}")
        if math.isinf(ratio):
            return cls.CONCLUSIVE_A
        if ratio == 0:
            return cls.CONCLUSIVE_B
        if ratio > 1:
            return cls.FAVORS_A
        if ratio < 1:
            return cls.FAVORS_B
        return cls.NEUTRAL


@dataclass(frozen=True)
class EvidenceComparison:
    point_a: ParameterPoint
    point_b: ParameterPoint
    ratio: float
    classification: Support = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "classification", Support.classify(self.ratio))


def _raw_ratio(ra: float, rb: float, a: Any, b: Any) -> float:
    if rb == 0.0:
        if ra == 0.0:
            raise UndefinedRatio(f"likelihood is zero at both {a} and {b}")
        return math.inf
    return ra / rb


def likelihood_ratio(L: LikelihoodFunction, a, b) -> EvidenceComparison:
    """Evidence for ``a`` over ``b``: ``L(a) / L(b)``.

    Raises
    ------
    UndefinedRatio
        Both likelihoods are zero.
    CrossModelComparison
        Either point belongs to another parameter space.
    """
    va, vb = L.space.coerce(a), L.space.coerce(b)
    pa, pb = ParameterPoint(L.space, va), ParameterPoint(L.space, vb)
    ratio = _raw_ratio(L._values.get(va, 0.0), L._values.get(vb, 0.0), pa, pb)
    return EvidenceComparison(pa, pb, ratio)


def max_likelihood_points(L: LikelihoodFunction) -> frozenset[ParameterPoint]:
    """Every point attaining the maximum likelihood; ties are not broken."""
    top = L.max_raw
    return frozenset(ParameterPoint(L.space, k) for k, v in L._values.items() if v == top)


def proportional_equivalent(L1: LikelihoodFunction, L2: LikelihoodFunction, tol: float = 1e-9) -> bool:
    """Whether ``L1`` and ``L2`` are the same likelihood function up to a constant.

    The constant is fitted at the point where ``L1`` is largest; zeros must
    coincide and every other point must agree within ``tol * max(L1)``.
    Functions over different spaces are never equivalent.
    """
    if L1.space != L2.space:
        return False
    keys = set(L1._values) | set(L2._values)
    v1 = {k: L1.scale * L1._values.get(k, 0.0) for k in keys}
    v2 = {k: L2.scale * L2._values.get(k, 0.0) for k in keys}
    for k in keys:
        if (v1[k] == 0.0) != (v2[k] == 0.0):
            return False
    anchor = max(keys, key=lambda k: (v1[k], L1.space.sort_key(k)))
    c = v1[anchor] / v2[anchor]
    bound = tol * v1[anchor]
    return all(abs(v1[k] - c * v2[k]) <= bound for k in keys)


def comparable(L1: LikelihoodFunction, L2: LikelihoodFunction) -> bool:
    """Whether points taken from ``L1`` and ``L2`` lie on one likelihood function."""
    if L1 is L2:
        return True
    return proportional_equivalent(L1, L2)


def compare(L_a: LikelihoodFunction, a, L_b: LikelihoodFunction, b) -> EvidenceComparison:
    """Likelihood ratio of ``a`` (a point of ``L_a``) against ``b`` (of ``L_b``).

    Refuses with :class:`CrossModelComparison` unless both functions are one
    likelihood function over one parameter space.
    """
    if not comparable(L_a, L_b):
        raise CrossModelComparison(
            f"{L_a.label or 'first function'} and {L_b.label or 'second function'} "
            "are distinct likelihood functions; their points cannot be compared"
        )
    return likelihood_ratio(L_a, a, b)
