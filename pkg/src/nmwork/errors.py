"""Exception hierarchy shared by all nmwork modules."""


class NMWorkError(Exception):
    """Base class for every error raised by nmwork."""


class InvalidArgumentError(NMWorkError, ValueError):
    """An input violates the documented preconditions."""


class UnsupportedError(InvalidArgumentError):
    """A valid but unsupported configuration (e.g. n != 1 qubits)."""


class OutOfRangeError(InvalidArgumentError):
    """A special-function argument lies outside the supported domain."""


class SingularityError(NMWorkError, ArithmeticError):
    """A rate integral diverges at the requested time."""


class ModelViolationError(NMWorkError):
    """The model produced a physically impossible result (CPTP failure, |G| > 1, ...)."""


class DegenerateEchoError(ModelViolationError):
    """The Loschmidt echo underflowed, so its logarithmic derivative is meaningless."""
