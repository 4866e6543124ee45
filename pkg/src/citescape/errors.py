"""Exception and warning types shared across the package."""


class CitescapeError(Exception):
    """Base class for all errors raised by citescape."""


class ParseError(CitescapeError, ValueError):
    """Malformed input text. ``lineno`` is 1-based when known."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class InvalidValueError(ParseError):
    """A field parsed but holds an out-of-range value (negative count, ...)."""


class DuplicateEntryError(ParseError):
    """The same key (edge or journal) appears twice in one stream."""


class JournalNotFoundError(CitescapeError, LookupError):
    pass


class LabelError(CitescapeError, ValueError):
    """A journal name cannot be condensed to a unique Pajek label."""


class DegenerateEnvironmentError(CitescapeError, ValueError):
    pass


class DegenerateVariableError(CitescapeError, ValueError):
    """A variable has zero variance and cannot enter a correlation matrix."""

    def __init__(self, message, variable=None):
        self.variable = variable
        super().__init__(message)


class MergeConflictWarning(UserWarning):
    pass


class TotalsFallbackWarning(UserWarning):
    """Metadata totals were missing; in-graph sums were used instead."""


class FixtureNotFoundError(CitescapeError, LookupError):
    pass
