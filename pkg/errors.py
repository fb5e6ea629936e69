class NucleusError(Exception):
    """Base class of every error raised by the nucleus toolkit."""


class PreconditionError(NucleusError, ValueError):
    """An input violates the precondition of an operation (zero vector, p | |W|, ...)."""


class GroupTooLargeError(PreconditionError):
    """Closing the generators produced more elements than the configured max_order."""


class SearchExhaustedError(NucleusError, RuntimeError):
    """A bounded search (representative points) ended without a result."""


class VerificationError(NucleusError, AssertionError):
    """A cross-check between two independent computations failed."""
