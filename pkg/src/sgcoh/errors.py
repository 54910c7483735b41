"""Shared exception types, mapped onto CLI exit codes by the cli module."""


class SgcohError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class UsageError(SgcohError):
    """Bad arguments: mismatched quivers, arity violations, malformed input."""

    exit_code = 2


class QuiverSyntaxError(UsageError):
    """Parse failure in a quiver file; carries the source name and line number."""

    def __init__(self, message, source="<quiver>", line=None):
        self.source = source
        self.line = line
        if line is not None:
            message = "%s:%d: %s" % (source, line, message)
        super().__init__(message)


class ResourceGuardError(SgcohError):
    """A basis-size guard tripped before a cell was materialized."""

    exit_code = 3


class NotACocycleError(SgcohError):
    """Projection to cohomology applied to an element with nonzero differential."""

    exit_code = 4


class HypothesisRefusal(SgcohError):
    """A verification suite's standing hypothesis is violated; names the hypothesis."""

    exit_code = 5
