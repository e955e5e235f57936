"""Exception hierarchy shared by all bellbound modules."""


class BellboundError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(BellboundError):
    """Raised for malformed or non-finite inputs."""


class ConstraintError(BellboundError):
    """Raised when observable parameters violate strength + |bias| <= 1."""


class UnphysicalStateError(BellboundError):
    """Raised when a candidate two-qubit state has a negative eigenvalue."""


class DomainError(BellboundError):
    """Raised when an operation's precondition on its inputs is not met."""


class InternalConsistencyError(BellboundError):
    """Raised when two independent evaluation routes disagree."""


class ConstructionError(BellboundError):
    """Raised when an attaining measurement construction misses its target."""
