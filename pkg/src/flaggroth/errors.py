"""Exception hierarchy shared by all modules."""


class UsageError(ValueError):
    """The caller violated a documented precondition (bad instance data,
    mismatched variable counts, request outside a guaranteed range, ...)."""


class WindowError(UsageError):
    """A Laurent-series coefficient was requested outside the range in which
    the windowed representation is provably complete."""


class InternalError(RuntimeError):
    """An internal invariant failed (e.g. a final result with non-integer
    coefficients).  Indicates a bug, not a usage problem."""
