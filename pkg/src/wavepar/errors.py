"""Exception hierarchy shared by all wavepar modules."""


class WaveparError(Exception):
    """Base class for every error raised by this package."""


class NumericalError(WaveparError):
    """A numerical procedure could not deliver a trustworthy result."""


class DomainError(WaveparError):
    """Parameters lie outside the region where the construction exists."""


class StepFailure(NumericalError):
    pass


class ToleranceNotMet(NumericalError):
    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NotSimpleRoot(NumericalError):
    pass


class ModulusOne(DomainError, ValueError):
    pass


class NonMonotoneX(NumericalError):
    pass


class NonMonotoneWarning(UserWarning):
    """``X(psi)`` is not strictly increasing; the curve is flagged, not rejected."""


class DenominatorVanishes(NumericalError):
    def __init__(self, message, psi=None):
        super().__init__(message)
        self.psi = psi


class AdmittancePole(NumericalError):
    pass


class BranchFailure(NumericalError):
    pass


class NoBoundedOrbit(DomainError):
    pass


class MVanishes(DomainError):
    pass


class NotEven(DomainError, ValueError):
    pass


class ZeroEta(DomainError, ValueError):
    pass


class NotPeriodic(DomainError, ValueError):
    pass


class InvalidFamily(DomainError, ValueError):
    pass


class EvalBudgetExhausted(WaveparError):
    """Evaluation budget used up; ``result`` holds the best found so far."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
