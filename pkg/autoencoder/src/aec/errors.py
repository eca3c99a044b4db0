"""Exception hierarchy for the autoencoder package."""


class AecError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(AecError):
    """Model configuration violates an architectural invariant."""


class DataError(AecError):
    """Dataset directory is empty or unusable."""


class ShapeError(AecError):
    """Array input has the wrong dimensions or dtype."""


class FormatError(AecError):
    """A bridge file (PGM or sidecar) is malformed or inconsistent."""
