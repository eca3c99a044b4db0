"""Binary PGM image I/O and the latent sidecar bridge format.

Only binary PGM (P5) with maxval 255 is supported; round-trips are
bit-exact.  The sidecar is a small key=value text file describing how a
latent grayscale image maps back to the original colour image, so the
autoencoder side needs no shared code.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FormatError, MalformedFile, UnsupportedMaxval

SIDECAR_HEADER = "CDNA-SIDECAR v1"


def _parse_pgm_header(raw: bytes):
    """Parse 'P5 <w> <h> <maxval>' allowing whitespace and # comments.

    Returns (width, height, maxval, body_offset).
    """
    if raw[:2] != b"P5":
        raise MalformedFile("not a binary PGM (missing P5 magic)")
    pos = 2
    fields = []
    while len(fields) < 3:
        # skip whitespace and comments
        while pos < len(raw) and raw[pos : pos + 1].isspace():
            pos += 1
        if pos < len(raw) and raw[pos : pos + 1] == b"#":
            while pos < len(raw) and raw[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(raw) and not raw[pos : pos + 1].isspace():
            pos += 1
        token = raw[start:pos]
        if not token.isdigit():
            raise MalformedFile(f"bad PGM header token {token!r}")
        fields.append(int(token))
    if pos >= len(raw) or not raw[pos : pos + 1].isspace():
        raise MalformedFile("PGM header not terminated by whitespace")
    pos += 1  # single whitespace byte separates header from body
    width, height, maxval = fields
    return width, height, maxval, pos


def read_pgm(path) -> np.ndarray:
    """Read a binary PGM into a (P, Q) uint8 array."""
    with open(path, "rb") as fh:
        raw = fh.read()
    width, height, maxval, offset = _parse_pgm_header(raw)
    if maxval != 255:
        raise UnsupportedMaxval(f"only maxval 255 is supported, got {maxval}")
    if width < 1 or height < 1:
        raise MalformedFile("PGM dimensions must be at least 1x1")
    body = raw[offset:]
    if len(body) != width * height:
        raise MalformedFile(
            f"PGM body has {len(body)} bytes, expected {width * height}"
        )
    return np.frombuffer(body, dtype=np.uint8).reshape(height, width).copy()


def write_pgm(img: np.ndarray, path) -> None:
    img = np.asarray(img)
    if img.ndim != 2 or img.dtype != np.uint8 or img.size == 0:
        raise MalformedFile("can only write non-empty 2-D uint8 images")
    height, width = img.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{width} {height}\n255\n".encode("ascii"))
        fh.write(img.tobytes())


@dataclass(frozen=True)
class LatentSidecar:
    """Quantization and shape metadata pairing a latent PGM with the
    colour image it came from."""

    original_width: int
    original_height: int
    channels: int
    latent_width: int
    latent_height: int
    qmin: float
    qmax: float

    def __post_init__(self):
        if self.channels != 3:
            raise FormatError(f"channels must be 3, got {self.channels}")
        if not self.qmin < self.qmax:
            raise FormatError(f"qmin must be < qmax, got {self.qmin} >= {self.qmax}")
        for name in (
            "original_width",
            "original_height",
            "latent_width",
            "latent_height",
        ):
            if getattr(self, name) < 1:
                raise FormatError(f"{name} must be positive")


_SIDECAR_FIELDS = {
    "original_width": int,
    "original_height": int,
    "channels": int,
    "latent_width": int,
    "latent_height": int,
    "qmin": float,
    "qmax": float,
}


def write_sidecar(sidecar: LatentSidecar, path) -> None:
    lines = [SIDECAR_HEADER]
    for name in _SIDECAR_FIELDS:
        value = getattr(sidecar, name)
        lines.append(f"{name}={value!r}" if isinstance(value, float) else f"{name}={value}")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def read_sidecar(path) -> LatentSidecar:
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln.strip() for ln in fh.read().splitlines() if ln.strip()]
    if not lines or lines[0] != SIDECAR_HEADER:
        raise FormatError("missing or wrong sidecar header")
    values = {}
    for line in lines[1:]:
        name, _, raw = line.partition("=")
        if name not in _SIDECAR_FIELDS or not raw:
            raise FormatError(f"unexpected sidecar line {line!r}")
        try:
            values[name] = _SIDECAR_FIELDS[name](raw)
        except ValueError as exc:
            raise FormatError(f"bad sidecar value in {line!r}") from exc
    missing = set(_SIDECAR_FIELDS) - set(values)
    if missing:
        raise FormatError(f"sidecar missing fields: {sorted(missing)}")
    return LatentSidecar(**values)
