"""Exception hierarchy shared by the library and the CLI."""


class ParameterDomainError(ValueError):
    """An input lies outside the domain where an operation is defined."""


class NoRealSolutionError(ParameterDomainError):
    """The parametric constants require the square root of a negative number."""

    def __init__(self, name, value):
        self.name = name
        self.value = value
        super().__init__(f"no real NU solution: {name} = {value!r} < 0")


class NoBoundStateError(ValueError):
    """The closed-form spectrum predicts no bound state for the requested level."""

    def __init__(self, message, a_crit):
        self.a_crit = a_crit
        super().__init__(message)


class AccuracyError(RuntimeError):
    """A quadrature did not reach the requested accuracy."""


class StateNotFoundError(RuntimeError):
    """The eigenvalue search window does not contain the requested state."""


class ConvergenceError(RuntimeError):
    """An iterative solver exhausted its iteration budget."""
