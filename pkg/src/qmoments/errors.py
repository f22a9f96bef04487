"""Exception types shared across the package."""


class QmomentsError(Exception):
    """Base class for package-specific errors."""


class ParseError(QmomentsError, ValueError):
    """Malformed partition or flag text."""


class ParamMismatch(QmomentsError, ValueError):
    """Two values carrying different formal parameters were combined."""


class SingularityError(QmomentsError, ZeroDivisionError):
    """A q-shifted factorial with negative index hit a vanishing factor."""


class ModeError(QmomentsError, ValueError):
    """Exact mode was asked for something only the float mode supports."""


class ResourceBoundError(QmomentsError, RuntimeError):
    """A brute-force operation exceeded its configured resource bound."""

    def __init__(self, bound, limit, requested):
        self.bound = bound
        self.limit = limit
        self.requested = requested
        super().__init__(
            "%s exceeded: requested %s, limit %s" % (bound, requested, limit)
        )
