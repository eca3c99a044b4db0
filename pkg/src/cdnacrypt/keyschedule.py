"""SHA-256 master key derivation and expansion into chaotic map seeds.

The 256-bit digest is the single secret.  ``derive_key`` binds it to the
image (dimension-prefixed hash); ``expand`` deterministically turns any
digest into in-range seed parameters for all four maps:

* split the digest into four big-endian 64-bit words w1..w4, u_i = w_i / 2^64
* u1 -> mu in (eps, 1-eps), u2 -> x0 in [-1+eps, 1-eps],
  u3 -> C0 in (eps, 1-eps), u4 -> A0 in [0, N)
* X0, Y0, Z0, B0 come from the four words of SHA-256(digest || 0x01)
* everything else is a fixed published constant; N = max(P, Q)

Key file format: line 1 ``CDNA-KEY v1``, line 2 the digest as 64 lowercase
hex characters.
"""

from __future__ import annotations

import enum
import hashlib
import struct
from dataclasses import dataclass

import numpy as np

from .chaos import ChirikovParams, IntertwiningParams, NcaParams, TdErcsParams
from .errors import EmptyInput, FormatError

EPS = 1e-6

# Fixed (non-secret) map constants of the published parameterization.
ALPHA = 1.2345
M_DELAY = 5
LAMBDA = 3.99
A1, A2, A3 = 34.1, 38.1, 36.1
ETA = 7.77
CHI, XI = 1.2, 20.0

KEY_FILE_HEADER = "CDNA-KEY v1"

_TWO64 = float(2 ** 64)


class KeyOrigin(enum.Enum):
    IMAGE_HASH = "image-hash"
    USER_SUPPLIED = "user-supplied"


@dataclass(frozen=True)
class MasterKey:
    digest: bytes
    origin: KeyOrigin

    def __post_init__(self):
        if len(self.digest) != 32:
            raise FormatError(f"digest must be 32 bytes, got {len(self.digest)}")


@dataclass(frozen=True)
class KeyBundle:
    td_ercs: TdErcsParams
    intertwining: IntertwiningParams
    chirikov: ChirikovParams
    nca: NcaParams


def derive_key(image: np.ndarray) -> MasterKey:
    """Hash a grayscale image into a MasterKey.

    The digest covers big-endian u32 height and width followed by the
    row-major pixel bytes, so equal pixel streams with swapped dimensions
    hash differently.
    """
    img = np.asarray(image)
    if img.size == 0:
        raise EmptyInput("cannot derive a key from an empty image")
    if img.ndim != 2 or img.dtype != np.uint8:
        raise EmptyInput("image must be a 2-D uint8 array")
    p, q = img.shape
    h = hashlib.sha256(struct.pack(">II", p, q) + img.tobytes())
    return MasterKey(h.digest(), KeyOrigin.IMAGE_HASH)


def _units(digest32: bytes) -> tuple[float, float, float, float]:
    words = struct.unpack(">QQQQ", digest32)
    return tuple(w / _TWO64 for w in words)


def expand(key: MasterKey, shape: tuple[int, int]) -> KeyBundle:
    """Expand a MasterKey into seed parameters for an image of ``shape``.

    Total: every 32-byte digest yields a valid bundle.  The Chirikov
    lattice size is N = max(P, Q), so the bundle depends on the image
    dimensions as well as the digest.
    """
    p, q = shape
    n = max(int(p), int(q))
    if n < 1:
        raise EmptyInput("image shape must be at least 1x1")
    u1, u2, u3, u4 = _units(key.digest)
    v1, v2, v3, v4 = _units(hashlib.sha256(key.digest + b"\x01").digest())

    span = 1.0 - 2.0 * EPS
    mu = EPS + u1 * span
    x0 = -1.0 + EPS + u2 * (2.0 - 2.0 * EPS)
    c0 = EPS + u3 * span
    # u < 1 can still round up to 1.0 in binary64; the mod keeps [0, n).
    a0 = (u4 * n) % n
    xx0 = EPS + v1 * span
    yy0 = EPS + v2 * span
    zz0 = EPS + v3 * span
    b0 = (v4 * n) % n

    return KeyBundle(
        td_ercs=TdErcsParams(mu=mu, x0=x0, alpha=ALPHA, m=M_DELAY),
        intertwining=IntertwiningParams(
            lam=LAMBDA, a1=A1, a2=A2, a3=A3, x0=xx0, y0=yy0, z0=zz0
        ),
        chirikov=ChirikovParams(eta=ETA, n=n, a0=a0, b0=b0),
        nca=NcaParams(c0=c0, chi=CHI, xi=XI),
    )


def flip_low_bit(key: MasterKey) -> MasterKey:
    """Return a key whose digest differs in the least significant bit."""
    d = bytearray(key.digest)
    d[-1] ^= 1
    return MasterKey(bytes(d), key.origin)


def write_key_file(key: MasterKey, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{KEY_FILE_HEADER}\n{key.digest.hex()}\n")


def read_key_file(path) -> MasterKey:
    """Parse a key file; the resulting key has UserSupplied origin."""
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if len(lines) < 2 or lines[0] != KEY_FILE_HEADER:
        raise FormatError("missing or wrong key file header")
    hexdigest = lines[1].strip()
    if len(hexdigest) != 64 or hexdigest != hexdigest.lower():
        raise FormatError("key digest must be 64 lowercase hex characters")
    try:
        digest = bytes.fromhex(hexdigest)
    except ValueError as exc:
        raise FormatError(f"bad hex in key file: {exc}") from exc
    return MasterKey(digest, KeyOrigin.USER_SUPPLIED)
