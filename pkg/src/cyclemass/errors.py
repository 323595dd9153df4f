"""Exception hierarchy shared across the package."""


class CycleMassError(Exception):
    """Base class for every error raised by cyclemass."""


class InvalidParameter(CycleMassError, ValueError):
    pass


class UnsupportedSize(CycleMassError, ValueError):
    pass


class ParseError(CycleMassError, ValueError):
    """Malformed input text. ``offset`` is a byte offset or a 1-based line number."""

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at {offset})"
        super().__init__(message)


class MassInvariantError(CycleMassError, ValueError):
    """Input weights do not form a probability mass."""


class PreconditionViolation(CycleMassError, ValueError):
    pass


class DeadSupport(CycleMassError, ArithmeticError):
    """The objective vanishes, so a multiplicative update is undefined."""


class EmptySearch(CycleMassError):
    pass


class ProofStepFailure(CycleMassError):
    def __init__(self, step, detail=""):
        self.step = step
        super().__init__(f"{step}: {detail}" if detail else step)
