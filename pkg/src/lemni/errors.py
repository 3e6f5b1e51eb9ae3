"""Exception and warning types shared across the toolkit."""


class LemniError(Exception):
    """Base class for all toolkit errors."""


class EvaluationError(LemniError):
    """Evaluation of an analytic map failed at a point.

    ``point`` holds the offending argument when it is known.
    """

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class DivisionByZero(EvaluationError, ZeroDivisionError):
    pass


class BranchCutHit(UserWarning):
    """A principal-branch argument landed on the negative real axis."""


class UnknownFamily(LemniError, KeyError):
    pass


class NonNormalized(LemniError, ValueError):
    pass


class ZeroOutsideDisk(LemniError, ValueError):
    pass


class InvalidScale(LemniError, ValueError):
    pass


class InvalidParams(LemniError, ValueError):
    pass


class DegenerateParams(InvalidParams):
    pass


class TooFewSamples(LemniError, ValueError):
    pass


class SelfIntersectingBoundary(LemniError, ValueError):
    pass


class BasePointMismatch(LemniError):
    def __init__(self, value, base):
        super().__init__(f"f(0) = {value!r} differs from base point {base!r}")
        self.value = value
        self.base = base


class SubjectMismatch(LemniError, TypeError):
    pass


class QuadratureNotConverged(EvaluationError):
    pass
