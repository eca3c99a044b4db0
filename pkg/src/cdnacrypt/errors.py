"""Exception hierarchy shared by every cdnacrypt module."""


class CdnaError(Exception):
    """Base class for all cdnacrypt errors."""


class RangeError(CdnaError):
    """A parameter or value lies outside its legal range."""


class NumericalDegeneracy(CdnaError):
    """A chaotic orbit left its domain and the one-shot rescue failed."""


class ShapeError(CdnaError):
    """Array dimensions are inconsistent with what an operation requires."""


class PermutationError(CdnaError):
    """An index sequence is not a bijection on its range."""


class EmptyInput(CdnaError):
    """An operation that needs at least one pixel received none."""


class ZeroVariance(CdnaError):
    """Correlation is undefined because one marginal is constant."""


class ChecksumMismatch(CdnaError):
    """Decrypted plaintext does not hash to the envelope checksum."""


class MalformedFile(CdnaError):
    """A file does not parse as the format it claims to be."""


class UnsupportedMaxval(MalformedFile):
    """A PGM file uses a maxval other than 255."""


class FormatError(CdnaError):
    """A sidecar or key file violates its documented schema."""
