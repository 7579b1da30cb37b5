"""Exception hierarchy shared by every module in the package."""


class HyperradialError(Exception):
    pass


class DomainError(HyperradialError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class ConvergenceError(HyperradialError, RuntimeError):
    """An iterative numerical routine failed to reach its tolerance."""


class QuadratureNotConverged(ConvergenceError):
    def __init__(self, message, estimates=()):
        super().__init__(message)
        self.estimates = tuple(estimates)


class StepSizeUnderflow(ConvergenceError):
    def __init__(self, message, location):
        super().__init__(message)
        self.location = location


class MaxStepsExceeded(ConvergenceError):
    def __init__(self, message, location):
        super().__init__(message)
        self.location = location


class NewtonFailure(ConvergenceError):
    def __init__(self, message, best, best_residual):
        super().__init__(message)
        self.best = best
        self.best_residual = best_residual


class MethodDisagreement(HyperradialError):
    """Independent evaluation routes returned values that do not agree."""
