"""Shared exception types."""


class EdgemultError(ValueError):
    """Base class for all library errors."""


class ParseError(EdgemultError):
    """Malformed input document."""


class NotBipartite(EdgemultError):
    """Operation requires a bipartite graph."""


class NotPerfectlyMatched(EdgemultError):
    """Operation requires a perfectly matched graph."""


class CapExceeded(EdgemultError):
    """Instance is larger than the configured enumeration cap."""


class InvariantViolation(EdgemultError):
    """A quantity the underlying theory guarantees failed to check out.

    Raised only for statements with proofs; seeing this means a bug in the
    library, never a mathematical discovery.
    """
