"""Exception types shared across the package."""


class ArticulodynError(Exception):
    """Base class for all errors raised by this package."""


class SchemaError(ArticulodynError, ValueError):
    """A document field is missing, has the wrong type, or is unknown.

    The message starts with the dotted path of the offending field,
    e.g. ``gestures[2].targets.location``.
    """


class ValidationError(ArticulodynError, ValueError):
    """A structurally well-formed value violates a model invariant
    (tier overlap, out-of-range target, bad interval)."""


class ConfigError(ArticulodynError, ValueError):
    """A simulation parameter is unusable (bad time step, bad synergy
    config, unknown constriction location)."""


class DomainError(ArticulodynError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class OracleDomainError(ArticulodynError, ValueError):
    """The closed-form oracle was called outside its validity domain
    (non critically damped parameters)."""


class EmptyInputError(ArticulodynError, ValueError):
    """An operation that needs at least one element got an empty input."""


class WindowRangeError(ArticulodynError, ValueError):
    """A requested time window falls outside the available samples."""


# Spec name for the window error; kept as the public alias.
RangeError = WindowRangeError


class MissingSyllableError(ArticulodynError, KeyError):
    """The nine-syllable check set is incomplete."""
