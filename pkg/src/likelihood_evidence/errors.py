"""Exception hierarchy.

Two families matter to callers.  :class:`ModelError` covers malformed model
definitions such as a row that does not sum to one.  :class:`EvidenceError`
covers well-formed requests without a meaningful answer, for example a ratio
of two zero likelihoods.
"""


class LikelihoodEvidenceError(Exception):
    """Base class for every error raised by this package."""

    code = "Error"


# -- model construction -----------------------------------------------------


class ModelError(LikelihoodEvidenceError, ValueError):
    code = "ModelError"


class InvalidSpace(ModelError):
    code = "InvalidSpace"


class NegativeProbability(ModelError):
    code = "NegativeProbability"

    def __init__(self, point, outcome, value):
        self.point = point
        self.outcome = outcome
        self.value = value
        super().__init__(f"P({outcome!r} | {point}) = {value!r} is outside [0, 1]")


class RowNotNormalized(ModelError):
    code = "RowNotNormalized"

    def __init__(self, point, total):
        self.point = point
        self.total = total
        super().__init__(f"probabilities for {point} sum to {total!r}, not 1")


class InvalidComposition(ModelError):
    code = "InvalidComposition"


class InvalidGrid(ModelError):
    code = "InvalidGrid"


# -- evidence / domain ------------------------------------------------------


class EvidenceError(LikelihoodEvidenceError):
    code = "EvidenceError"


class OutcomeNotInSpace(EvidenceError):
    code = "OutcomeNotInSpace"


class ImpossibleObservation(EvidenceError):
    code = "ImpossibleObservation"


class UndefinedRatio(EvidenceError):
    code = "UndefinedRatio"


class CrossModelComparison(EvidenceError):
    code = "CrossModelComparison"


class UnknownParameter(EvidenceError):
    code = "UnknownParameter"


class EmptyInterest(EvidenceError):
    code = "EmptyInterest"


class NuisanceDependent(EvidenceError):
    code = "NuisanceDependent"

    def __init__(self, dimension, witness_a, witness_b, detail=""):
        self.dimension = dimension
        self.witness_a = witness_a
        self.witness_b = witness_b
        msg = (
            f"statistic distribution depends on nuisance dimension {dimension!r}: "
            f"{witness_a!r} vs {witness_b!r}"
        )
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class EnumerationTooLarge(EvidenceError):
    code = "EnumerationTooLarge"


class SpecInconsistent(EvidenceError):
    code = "SpecInconsistent"
