"""Exception types shared across the compiler and the UQ runtime."""


class UccError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByUncertainZero(UccError):
    """Divisor interval or p-box support contains zero."""


class DomainError(UccError):
    """A function was applied outside its mathematical domain."""


class EmptyIntersection(UccError):
    """Two enclosures of the same quantity do not overlap.

    This signals inconsistent inputs or a bug in whatever produced the
    enclosures; it is never a legitimate runtime state.
    """


class UnsupportedSupport(UccError):
    """An operation was requested on supports it cannot handle tightly."""


class InvalidParams(UccError):
    """Distribution parameters outside the family's domain."""


class MalformedHedge(UccError):
    """Unknown hedge keyword or malformed hedge phrase."""


class SpecError(UccError):
    """Problem in an uncertainty spec file; carries line information."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateEntry(SpecError):
    pass


class MalformedInterval(SpecError):
    pass


class UnknownHedge(SpecError):
    pass


class SourceError(UccError):
    """Problem in MiniScript source; carries a source position."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class LexError(SourceError):
    pass


class ParseError(SourceError):
    pass


class UnknownVariable(UccError):
    """Spec refers to a variable with no matching assignment site."""


class UccRuntimeError(UccError):
    """Raised while evaluating an (enriched) program."""


class DunnoBranch(UccRuntimeError):
    """A conditional came out DUNNO under the `error` policy."""


class MissingSampler(UccError):
    """Monte Carlo run requested for a variable without a sampler."""


class UccWarning(UserWarning):
    """Category for diagnostics that do not stop a computation."""
