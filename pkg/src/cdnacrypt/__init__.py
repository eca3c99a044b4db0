"""Chaos + DNA grayscale image cipher with a security-analysis suite.

Public surface: four keyed chaotic stream generators (``chaos``), SHA-256
key schedule (``keyschedule``), DNA coding/diffusion (``dna``), fixed
S-boxes (``sbox``), the full cipher (``pipeline``), security metrics
(``metrics``) and file formats (``fileio``).
"""

from . import chaos, dna, fileio, keyschedule, metrics, pipeline, sbox
from .errors import (
    CdnaError,
    ChecksumMismatch,
    EmptyInput,
    FormatError,
    MalformedFile,
    NumericalDegeneracy,
    PermutationError,
    RangeError,
    ShapeError,
    UnsupportedMaxval,
    ZeroVariance,
)
from .keyschedule import MasterKey, derive_key, expand
from .pipeline import CipherEnvelope, decrypt, encrypt

__version__ = "0.1.0"

__all__ = [
    "CdnaError",
    "ChecksumMismatch",
    "CipherEnvelope",
    "EmptyInput",
    "FormatError",
    "MalformedFile",
    "MasterKey",
    "NumericalDegeneracy",
    "PermutationError",
    "RangeError",
    "ShapeError",
    "UnsupportedMaxval",
    "ZeroVariance",
    "chaos",
    "decrypt",
    "derive_key",
    "dna",
    "encrypt",
    "expand",
    "fileio",
    "keyschedule",
    "metrics",
    "pipeline",
    "sbox",
]
