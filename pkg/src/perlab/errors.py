"""Exception hierarchy shared by every perlab module.

The CLI maps these onto exit codes: ``ResourceCapError`` -> 1,
``ConfigError`` -> 2, ``HypothesisViolation`` -> 3.
"""


class PerlabError(Exception):
    """Base class for all perlab errors."""


class FormMismatchError(PerlabError, ValueError):
    """Univariate and homogeneous polynomials were mixed, or degrees disagree."""


class ZeroPolynomialError(PerlabError, ZeroDivisionError):
    """An operation received the zero polynomial where it is not allowed."""


class NotSquarefreeError(PerlabError, ValueError):
    pass


class NotAMorphismError(PerlabError, ValueError):
    """The pair (F, G) has a common projective root or degree < 2."""


class MixedDegreeError(PerlabError, ValueError):
    pass


class ResourceCapError(PerlabError, RuntimeError):
    """A configured resource limit (degree cap, subset budget, precision) was hit."""


class DegreeCapError(ResourceCapError):
    pass


class RecombinationLimitError(ResourceCapError):
    pass


class PrecisionError(ResourceCapError):
    pass


class HypothesisViolation(PerlabError, ValueError):
    """Input violates a hypothesis of the statement being checked (e.g. a point in the exceptional set)."""


class ExceptionalPointError(HypothesisViolation):
    """The target point lies in the exceptional set of the map."""


class MeasureFloorError(PerlabError, RuntimeError):
    """Greedy cube selection could not meet the measure floor."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace or []


class FitError(PerlabError, ValueError):
    """Too few usable points for a regression."""


class ConfigError(PerlabError, ValueError):
    pass
