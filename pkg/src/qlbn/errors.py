"""Exception hierarchy shared across the package."""


class QlbnError(Exception):
    """Base class for all errors raised by this package."""


class DocumentError(QlbnError):
    """A network document is malformed or violates a model invariant."""


class QueryError(QlbnError):
    """A query does not fit the network it is posed against."""


class InferenceError(QlbnError):
    """Inference cannot produce a distribution (e.g. zero-likelihood evidence)."""


class PhaseVectorError(QlbnError):
    """An explicit phase vector does not match the query's term layout."""


class UnsupportedConfigurationError(QlbnError):
    """A feature was applied to a network shape it does not support."""
