"""Builtin models and seeded sampling.

The builtins are the rain forecast table, the two urn experiments, Birnbaum's
measurement model (with its known-mean variant), the binomial coin model and
the per-sequence "sure thing" model.
"""

from __future__ import annotations

import math
from collections.abc import Hashable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import (
    DiscreteModel,
    OutcomeSpace,
    ParameterPoint,
    ParameterSpace,
    Sample,
    build_model,
)
from .errors import InvalidComposition, InvalidGrid, ModelError

DAYS = ("Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday")
RAIN_PROBABILITIES = (0, 0.07, 0.65, 0.2, 0.05, 0.01, 0.01)
NOT_RAIN_PROBABILITIES = (1, 0.93, 0.35, 0.8, 0.95, 0.99, 0.99)

#: The normalizing constant as printed for Birnbaum's model; it does not
#: normalize the printed support (the total is 250/251), so it is kept only
#: for reporting.
PRINTED_BIRNBAUM_C = Fraction(1, 10040)


def rain_model() -> DiscreteModel:
    """Forecast probability of rain for each day of one week."""
    space = ParameterSpace([("day", DAYS)])
    outcomes = OutcomeSpace.enumerated(["rain", "not-rain"])
    table = {
        (day,): (p_rain, p_dry)
        for day, p_rain, p_dry in zip(DAYS, RAIN_PROBABILITIES, NOT_RAIN_PROBABILITIES)
    }
    return build_model(space, outcomes, table, name="rain")


def urn1_model() -> DiscreteModel:
    """Red draws from urn 1a (one color) or urn 1b (201 colors, 1% red)."""
    space = ParameterSpace([("nu_c", (1, 201))])
    outcomes = OutcomeSpace.enumerated(["red", "non-red"])
    return build_model(space, outcomes, {(1,): (1, 0), (201,): (0.01, 0.99)}, name="urn1")


@dataclass(frozen=True)
class UrnComposition:
    """Ball counts of the multi-color urn.

    ``shared_count`` balls carry the color common to both urns; each entry of
    ``other_colors`` is a ``(label, count)`` pair and every count must be
    strictly smaller than ``shared_count``.
    """

    shared_count: int = 100
    other_colors: tuple[tuple[str, int], ...] = field(
        default_factory=lambda: tuple(
            (f"color{i:03d}", 49 if i <= 100 else 50) for i in range(1, 201)
        )
    )
    shared_label: str = "blue"

    def __post_init__(self):
        object.__setattr__(self, "other_colors", tuple((str(l), int(c)) for l, c in self.other_colors))
        if self.shared_count < 1:
            raise InvalidComposition("shared_count must be a positive integer")
        if not self.other_colors:
            raise InvalidComposition("the multi-color urn needs at least one other color")
        labels = [self.shared_label] + [label for label, _ in self.other_colors]
        if len(set(labels)) != len(labels):
            raise InvalidComposition("color labels must be distinct")
        for label, count in self.other_colors:
            if count < 1:
                raise InvalidComposition(f"color {label!r} has non-positive count {count}")
            if count >= self.shared_count:
                raise InvalidComposition(
                    f"color {label!r} has {count} balls; every other color must be "
                    f"less numerous than the shared color ({self.shared_count})"
                )

    @property
    def total(self) -> int:
        return self.shared_count + sum(c for _, c in self.other_colors)

    @property
    def palette(self) -> tuple[str, ...]:
        return (self.shared_label,) + tuple(label for label, _ in self.other_colors)


def urn2_model(comp: UrnComposition | None = None) -> DiscreteModel:
    """Joint model over the unknown shared color ``mu`` and the urn ``nu_c``.

    Every palette color can be the shared one.  Under ``nu_c = 201`` the color
    ``mu`` has ``shared_count`` balls and the remaining palette colors, taken
    in palette order, receive the counts of ``comp.other_colors`` in order.
    Under ``nu_c = 1`` every ball has color ``mu``.
    """
    comp = comp or UrnComposition()
    palette = comp.palette
    counts = [c for _, c in comp.other_colors]
    many = len(palette)
    space = ParameterSpace([("mu", palette), ("nu_c", (1, many))])
    outcomes = OutcomeSpace.enumerated(palette)
    table = {}
    total = comp.total
    for mu in palette:
        table[(mu, 1)] = {mu: 1.0}
        row = {mu: comp.shared_count / total}
        others = [c for c in palette if c != mu]
        for color, count in zip(others, counts):
            row[color] = count / total
        table[(mu, many)] = row
    return build_model(
        space, outcomes, table, name="urn2", interest=("nu_c",),
        meta={"composition": comp},
    )


@dataclass(frozen=True)
class BirnbaumConfig:
    """Parameters of Birnbaum's model.

    ``c`` is exact (a :class:`~fractions.Fraction`) so probabilities
    ``c * (100 - |x - mu|)`` are correctly rounded.  The default ``1/10000``
    is the value that normalizes the support ``|x - mu| < 100``.
    """

    mu_values: range = range(-10**10 + 1, 10**10)
    sigma_values: tuple[int, int] = (0, 100)
    c: Fraction = Fraction(1, 10000)
    peak_halfwidth: int = 100

    def __post_init__(self):
        if not isinstance(self.mu_values, range) or self.mu_values.step != 1 or len(self.mu_values) == 0:
            raise ModelError("mu_values must be a non-empty range with step 1")
        if tuple(self.sigma_values) != (0, 100):
            raise ModelError("sigma takes exactly the values 0 and 100")
        object.__setattr__(self, "c", Fraction(self.c))
        total = self.c * (self.peak_halfwidth + 2 * sum(self.peak_halfwidth - d for d in range(1, self.peak_halfwidth)))
        if abs(total - 1) > 1e-9:
            raise ModelError(
                f"c = {self.c} gives total probability {total} ({float(total)!r}) over |x - mu| < {self.peak_halfwidth}"
            )

    def peak_probability(self) -> float:
        return float(self.c * self.peak_halfwidth)


def _triangular(c: Fraction, h: int, d: int) -> float:
    return float(c * (h - d))


def birnbaum_model(cfg: BirnbaumConfig | None = None) -> DiscreteModel:
    """Birnbaum's measurement model over ``theta = (mu, sigma)``.

    ``sigma = 0`` puts all mass on ``x = mu``; ``sigma = 100`` gives the
    triangular PMF ``c * (100 - |x - mu|)`` on ``|x - mu| < 100``.  The model
    is function-backed: ``mu`` spans the full configured range lazily.
    """
    cfg = cfg or BirnbaumConfig()
    mus = cfg.mu_values
    h = cfg.peak_halfwidth
    c = cfg.c
    space = ParameterSpace([("mu", mus), ("sigma", (0, 100))])
    outcomes = OutcomeSpace.interval(mus.start - (h - 1), mus.stop - 1 + (h - 1))
    offsets = range(-(h - 1), h)
    probs = {d: _triangular(c, h, abs(d)) for d in offsets}

    def pmf(theta, x):
        mu, sigma = theta
        d = x - mu
        if sigma == 0:
            return 1.0 if d == 0 else 0.0
        return probs.get(d, 0.0)

    def support(theta):
        mu, sigma = theta
        if sigma == 0:
            return ((mu, 1.0),)
        return tuple((mu + d, probs[d]) for d in offsets)

    def preimage(x):
        out = []
        for mu in range(max(x - (h - 1), mus.start), min(x + h, mus.stop)):
            if mu == x:
                out.append((mu, 0))
            out.append((mu, 100))
        return out

    return build_model(
        space, outcomes, pmf, support=support, preimage=preimage, name="birnbaum",
        interest=("sigma",), meta={"config": cfg},
    )


def birnbaum_known_mu_model(mu: int = 17, cfg: BirnbaumConfig | None = None) -> DiscreteModel:
    """Birnbaum's model with the mean known; only ``sigma`` is unknown."""
    cfg = cfg or BirnbaumConfig()
    h = cfg.peak_halfwidth
    offsets = range(-(h - 1), h)
    probs = {d: _triangular(cfg.c, h, abs(d)) for d in offsets}
    space = ParameterSpace([("sigma", (0, 100))])
    outcomes = OutcomeSpace.interval(mu - (h - 1), mu + (h - 1))

    def pmf(theta, x):
        (sigma,) = theta
        if sigma == 0:
            return 1.0 if x == mu else 0.0
        return probs.get(x - mu, 0.0)

    def support(theta):
        if theta[0] == 0:
            return ((mu, 1.0),)
        return tuple((mu + d, probs[d]) for d in offsets)

    return build_model(
        space, outcomes, pmf, support=support, name="birnbaum-known-mu",
        meta={"mu": mu, "config": cfg},
    )


def binomial_model(n: int, p_grid: Sequence[float]) -> DiscreteModel:
    """Number of heads in ``n`` tosses of a coin with fixed head probability ``p``."""
    if not isinstance(n, int) or n < 1:
        raise InvalidGrid(f"n must be a positive integer, got {n!r}")
    grid = tuple(float(p) for p in p_grid)
    if not grid:
        raise InvalidGrid("p_grid is empty")
    if len(set(grid)) != len(grid):
        raise InvalidGrid("p_grid values must be distinct")
    if any(not (0.0 <= p <= 1.0) for p in grid):
        raise InvalidGrid("p_grid values must lie in [0, 1]")
    space = ParameterSpace([("p", grid)])
    outcomes = OutcomeSpace.interval(0, n)
    table = {(p,): [math.comb(n, k) * p**k * (1 - p) ** (n - k) for k in range(n + 1)] for p in grid}
    return build_model(space, outcomes, {key: dict(zip(range(n + 1), row)) for key, row in table.items()},
                       name="binomial", meta={"n": n})


class CoinSequences(Sequence):
    """All ``H``/``T`` strings of a fixed length, in lexicographic order, lazily."""

    def __init__(self, n: int):
        self.n = n

    def __len__(self) -> int:
        return 2**self.n

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError(i)
        return format(i, f"0{self.n}b").replace("0", "H").replace("1", "T") if self.n else ""

    def __contains__(self, x) -> bool:
        return isinstance(x, str) and len(x) == self.n and set(x) <= {"H", "T"}

    def index(self, x, *args) -> int:
        if x not in self:
            raise ValueError(f"{x!r} is not a sequence of length {self.n}")
        return int(x.replace("H", "0").replace("T", "1"), 2) if self.n else 0

    def __eq__(self, other) -> bool:
        return isinstance(other, CoinSequences) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("CoinSequences", self.n))


def surething_model(observed: Sample | Sequence[str] | str) -> DiscreteModel:
    """The hypothesis that the observed coin sequence was the only possible one.

    Its single parameter point *is* the observed sequence, so its parameter
    space never coincides with the space of a binomial model.
    """
    if isinstance(observed, Sample):
        seq = "".join(observed.observations)
    else:
        seq = "".join(observed)
    seq = seq.upper()
    if not seq or set(seq) - {"H", "T"}:
        raise ModelError(f"observed sequence must be a non-empty string of H and T, got {seq!r}")
    space = ParameterSpace([("sequence", (seq,))])
    outcomes = OutcomeSpace.enumerated(CoinSequences(len(seq)))
    return build_model(
        space, outcomes, lambda theta, x: 1.0 if x == theta[0] else 0.0,
        support=lambda theta: ((theta[0], 1.0),),
        name="sure-thing",
    )


BUILTINS = {
    "rain": rain_model,
    "urn1": urn1_model,
    "urn2": urn2_model,
    "birnbaum": birnbaum_model,
    "birnbaum-known-mu": birnbaum_known_mu_model,
    "binomial": binomial_model,
    "sure-thing": surething_model,
}


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def generator(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator for stream ``stream`` of ``seed``.

    Distinct ``(seed, stream)`` pairs give independent streams.
    """
    ss = np.random.SeedSequence(int(seed) & 0xFFFFFFFFFFFFFFFF, spawn_key=(int(stream),))
    return np.random.Generator(np.random.Philox(ss))


def ordered_support(model: DiscreteModel, theta) -> tuple[list[Hashable], np.ndarray]:
    """Support of ``theta`` sorted by decreasing probability, then outcome position.

    Two parameter points whose PMFs are permutations of each other get the
    same probability vector, which keeps enumeration sums bit-identical.
    """
    pairs = sorted(model.support(theta), key=lambda xp: (-xp[1], model.outcomes.index(xp[0])))
    return [x for x, _ in pairs], np.array([p for _, p in pairs], dtype=float)


def draw_indices(rng: np.random.Generator, probs: np.ndarray, shape) -> np.ndarray:
    """Inverse-CDF draws of support positions."""
    cdf = np.cumsum(probs)
    u = rng.random(shape)
    idx = np.searchsorted(cdf, u * cdf[-1], side="right")
    return np.minimum(idx, len(probs) - 1)


def sample(model: DiscreteModel, theta: ParameterPoint, n: int, seed: int, stream: int = 0) -> Sample:
    """``n`` i.i.d. draws from ``P(. | theta)``; identical for identical arguments."""
    if n < 0:
        raise ValueError("n must be non-negative")
    xs, probs = ordered_support(model, theta)
    idx = draw_indices(generator(seed, stream), probs, n)
    return Sample(xs[i] for i in idx.tolist())


def collapse(model: DiscreteModel, statistic, labels: Sequence[Hashable]) -> dict[tuple, dict[Hashable, float]]:
    """Probability table of ``statistic(x)`` for every parameter point (small spaces only)."""
    out = {}
    for theta in model.space.iter_values():
        row = dict.fromkeys(labels, 0.0)
        for x, p in model.support(theta):
            row[statistic(x)] += p
        out[theta] = row
    return out


__all__ = [
    "BUILTINS",
    "BirnbaumConfig",
    "CoinSequences",
    "DAYS",
    "PRINTED_BIRNBAUM_C",
    "UrnComposition",
    "binomial_model",
    "birnbaum_known_mu_model",
    "birnbaum_model",
    "collapse",
    "draw_indices",
    "generator",
    "ordered_support",
    "rain_model",
    "sample",
    "surething_model",
    "urn1_model",
    "urn2_model",
]

