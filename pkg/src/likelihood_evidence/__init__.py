"""Likelihood functions and evidential comparisons on finite discrete models."""

__version__ = "0.1.0"

from .core import (
    DiscreteModel,
    EvidenceComparison,
    LikelihoodFunction,
    OutcomeSpace,
    ParameterPoint,
    ParameterSpace,
    Sample,
    Support,
    build_model,
    comparable,
    compare,
    iid_likelihood,
    likelihood,
    likelihood_ratio,
    max_likelihood_points,
    proportional_equivalent,
)
from .errors import (
    CrossModelComparison,
    EmptyInterest,
    EnumerationTooLarge,
    EvidenceError,
    ImpossibleObservation,
    InvalidComposition,
    InvalidGrid,
    InvalidSpace,
    LikelihoodEvidenceError,
    ModelError,
    NegativeProbability,
    NuisanceDependent,
    OutcomeNotInSpace,
    RowNotNormalized,
    SpecInconsistent,
    UndefinedRatio,
    UnknownParameter,
)
from .misleading import (
    ComparisonSpec,
    MisleadingReport,
    exact_misleading_probability,
    monte_carlo_misleading,
)
from .models import (
    BUILTINS,
    BirnbaumConfig,
    UrnComposition,
    binomial_model,
    birnbaum_known_mu_model,
    birnbaum_model,
    rain_model,
    sample,
    surething_model,
    urn1_model,
    urn2_model,
)
from .modelspec import ModelDocument, ModelSpecError, ParseDiagnostic, check, load, parse, serialize, to_model
from .nuisance import (
    DerivedStatistic,
    NuisanceSpec,
    derived_statistic_model,
    distinct_count_statistic,
    marginalize,
    profile,
)

__all__ = [name for name in dir() if not name.startswith("_")]
