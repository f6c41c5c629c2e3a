"""Exception types shared across the package."""


class BaselineError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(BaselineError):
    """A hyperparameter or option outside its legal range."""


class CorpusError(BaselineError):
    """Missing, empty, or inconsistent src/tgt training data."""


class ParserError(BaselineError):
    """The requested dependency parser backend cannot run."""
