"""Shared exception types."""


class InternalError(RuntimeError):
    """An internal invariant was violated; indicates a bug, not bad input."""


class UntilableError(ValueError):
    """The region inside the boundary admits no rhomb tiling."""
