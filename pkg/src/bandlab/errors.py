"""Exception types shared across the package."""


class BandlabError(ValueError):
    """Base class for all bandlab input errors."""


class ParameterError(BandlabError):
    """A hyperparameter or argument is outside its valid range."""


class DegenerateInputError(BandlabError):
    """An input is structurally unusable (empty subset, fully masked logits, ...)."""


class SchemaError(BandlabError):
    """A serialized file does not match its expected schema.

    The message names the offending field.
    """
