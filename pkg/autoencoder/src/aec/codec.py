"""Latent compression, reconstruction, bridge-file I/O and PSNR.

The bridge with the encryption side is purely file-based: a binary PGM
(P5, maxval 255) holding the quantized 384x512 latent, and a small
key=value sidecar recording the original image shape and the per-image
quantization range.  Both formats are re-implemented here from their
specification; nothing is imported from the cipher package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FormatError, ShapeError
from .model import FEATURE_SHAPE, INPUT_SHAPE, LATENT_SHAPE

SIDECAR_HEADER = "CDNA-SIDECAR v1"


# --- binary PGM -------------------------------------------------------------

def read_pgm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        raw = fh.read()
    parts = raw.split(maxsplit=4)
    if len(parts) < 5 or parts[0] != b"P5":
        raise FormatError(f"{path}: not a binary PGM")
    try:
        width, height, maxval = int(parts[1]), int(parts[2]), int(parts[3])
    except ValueError as exc:
        raise FormatError(f"{path}: bad PGM header") from exc
    if maxval != 255:
        raise FormatError(f"{path}: only maxval 255 is supported")
    body = raw[len(raw) - len(parts[4]):]
    if len(body) != width * height:
        raise FormatError(f"{path}: PGM body length mismatch")
    return np.frombuffer(body, dtype=np.uint8).reshape(height, width).copy()


def write_pgm(img: np.ndarray, path) -> None:
    img = np.asarray(img)
    if img.ndim != 2 or img.dtype != np.uint8 or img.size == 0:
        raise ShapeError("can only write non-empty 2-D uint8 images")
    height, width = img.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{width} {height}\n255\n".encode("ascii"))
        fh.write(img.tobytes())


# --- sidecar ----------------------------------------------------------------

@dataclass(frozen=True)
class Sidecar:
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
            raise FormatError("qmin must be strictly below qmax")


_FIELDS = {
    "original_width": int,
    "original_height": int,
    "channels": int,
    "latent_width": int,
    "latent_height": int,
    "qmin": float,
    "qmax": float,
}


def write_sidecar(sc: Sidecar, path) -> None:
    lines = [SIDECAR_HEADER]
    for name in _FIELDS:
        value = getattr(sc, name)
        lines.append(f"{name}={value!r}" if isinstance(value, float) else f"{name}={value}")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def read_sidecar(path) -> Sidecar:
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln.strip() for ln in fh.read().splitlines() if ln.strip()]
    if not lines or lines[0] != SIDECAR_HEADER:
        raise FormatError(f"{path}: missing or wrong sidecar header")
    values = {}
    for line in lines[1:]:
        name, _, raw = line.partition("=")
        if name not in _FIELDS or not raw:
            raise FormatError(f"{path}: unexpected sidecar line {line!r}")
        try:
            values[name] = _FIELDS[name](raw)
        except ValueError as exc:
            raise FormatError(f"{path}: bad value in {line!r}") from exc
    missing = set(_FIELDS) - set(values)
    if missing:
        raise FormatError(f"{path}: sidecar missing fields {sorted(missing)}")
    return Sidecar(**values)


# --- compress / reconstruct ---------------------------------------------------

def compress(encoder, img: np.ndarray):
    """Colour image -> (quantized 384x512 uint8 latent, Sidecar).

    Quantization is linear per image over [qmin, qmax]; it is the only
    lossy step between the encoder output and the decoder input.
    """
    img = np.asarray(img)
    if img.shape != INPUT_SHAPE or img.dtype != np.uint8:
        raise ShapeError(f"expected uint8 image of shape {INPUT_SHAPE}, "
                         f"got {img.dtype} {img.shape}")
    x = img.astype(np.float32) / 255.0
    feat = np.asarray(encoder(x[None], training=False))[0]
    latent = feat.reshape(LATENT_SHAPE)
    qmin = float(latent.min())
    qmax = float(latent.max())
    if qmax <= qmin:  # constant latent; keep the sidecar invariant intact
        qmax = qmin + 1e-6
    quantized = np.rint((latent - qmin) / (qmax - qmin) * 255.0).astype(np.uint8)
    sc = Sidecar(
        original_width=INPUT_SHAPE[1],
        original_height=INPUT_SHAPE[0],
        channels=3,
        latent_width=LATENT_SHAPE[1],
        latent_height=LATENT_SHAPE[0],
        qmin=qmin,
        qmax=qmax,
    )
    return quantized, sc


def dequantize(latent_u8: np.ndarray, sc: Sidecar) -> np.ndarray:
    return (latent_u8.astype(np.float32) / 255.0 * (sc.qmax - sc.qmin)
            + sc.qmin)


def reconstruct(decoder, latent_u8: np.ndarray, sc: Sidecar) -> np.ndarray:
    """Quantized latent + sidecar -> uint8 colour image 512x768x3."""
    latent_u8 = np.asarray(latent_u8)
    if latent_u8.shape != (sc.latent_height, sc.latent_width):
        raise FormatError(
            f"latent shape {latent_u8.shape} does not match sidecar "
            f"{(sc.latent_height, sc.latent_width)}"
        )
    if (sc.latent_height, sc.latent_width) != LATENT_SHAPE or (
        sc.original_height, sc.original_width
    ) != INPUT_SHAPE[:2]:
        raise FormatError("sidecar dimensions do not match the model")
    feat = dequantize(latent_u8, sc).reshape(FEATURE_SHAPE)
    out = np.asarray(decoder(feat[None], training=False))[0]
    return np.rint(np.clip(out, 0.0, 1.0) * 255.0).astype(np.uint8)


def psnr(a: np.ndarray, b: np.ndarray) -> float:
    """10*log10(255^2 / MSE) over all channels; identical images -> inf."""
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    mse = float(np.mean((a.astype(np.float64) - b.astype(np.float64)) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0 ** 2 / mse)
