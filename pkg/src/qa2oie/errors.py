"""Exception types shared across the package."""


class Qa2OieError(Exception):
    """Base class for all errors raised by this package."""


class ConlluError(Qa2OieError):
    """Malformed or structurally invalid CoNLL-U input."""


class DataError(Qa2OieError):
    """Malformed dataset, embedding, or evaluation input."""
