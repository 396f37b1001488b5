"""Exception taxonomy shared across the toolkit.

The CLI maps these onto exit codes: UsageError -> 1, DataError -> 2,
EndpointError -> 3.
"""


class SlangbenchError(Exception):
    """Base class for all toolkit errors."""


class UsageError(SlangbenchError):
    """Caller violated an operation's precondition (bad arguments/config)."""


class DataError(SlangbenchError):
    """Input data is unreadable or inconsistent with its declared schema."""


class EndpointError(SlangbenchError):
    """A remote model endpoint failed after retries or broke its contract."""


class MetricInputError(DataError):
    """A usage does not qualify for the requested metric (e.g. novelty on a coinage)."""


class ReplayMismatchError(DataError):
    """A replayed request diverged from the recorded transcript."""
