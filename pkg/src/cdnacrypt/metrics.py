"""Security statistics for images and image pairs.

All metrics are deterministic: correlation uses every adjacent pixel pair
in the requested direction (no random sampling), and the GLCM uses a
single (0, 1) offset with 256 gray levels on the raw image.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import pipeline
from .errors import EmptyInput, ShapeError, ZeroVariance
from .keyschedule import MasterKey, flip_low_bit

#: 5% critical value of chi-square with 255 degrees of freedom.
CHI2_CRITICAL_5PCT = 293.25

#: Commonly accepted band for UACI between independent ciphertexts.
UACI_BAND = (33.0, 36.0)


def _check(img) -> np.ndarray:
    img = np.asarray(img)
    if img.size == 0:
        raise EmptyInput("metric input is empty")
    if img.ndim != 2 or img.dtype != np.uint8:
        raise ShapeError("expected a 2-D uint8 image")
    return img


def histogram(img: np.ndarray) -> np.ndarray:
    """256-bin pixel histogram (counts sum to P*Q)."""
    return np.bincount(_check(img).ravel(), minlength=256)


def entropy(img: np.ndarray) -> float:
    """Shannon entropy of the pixel histogram in bits, 0*log0 := 0."""
    counts = histogram(img)
    p = counts[counts > 0] / counts.sum()
    return float(-(p * np.log2(p)).sum())


_DIRECTIONS = {"H": (0, 1), "V": (1, 0), "D": (1, 1)}


def _adjacent_pairs(img: np.ndarray, direction: str):
    try:
        di, dj = _DIRECTIONS[direction]
    except KeyError:
        raise ShapeError(f"direction must be one of H, V, D, got {direction!r}")
    p, q = img.shape
    if p - di < 1 or q - dj < 1:
        raise ShapeError(f"image too small for direction {direction}")
    x = img[: p - di, : q - dj]
    y = img[di:, dj:]
    return x.ravel().astype(np.float64), y.ravel().astype(np.float64)


def correlation(img: np.ndarray, direction: str) -> float:
    """Pearson correlation over all adjacent pixel pairs in a direction."""
    x, y = _adjacent_pairs(_check(img), direction)
    if x.size < 2:
        raise ShapeError("need at least two adjacent pairs")
    xm = x - x.mean()
    ym = y - y.mean()
    sx = float((xm * xm).sum())
    sy = float((ym * ym).sum())
    if sx == 0.0 or sy == 0.0:
        raise ZeroVariance("constant pixels along this direction")
    return float((xm * ym).sum() / np.sqrt(sx * sy))


def correlation_pairs(img: np.ndarray, direction: str):
    """The (x, y) adjacent-pair samples behind ``correlation`` (for export)."""
    return _adjacent_pairs(_check(img), direction)


def _check_pair(a, b):
    a, b = _check(a), _check(b)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a, b


def npcr(a: np.ndarray, b: np.ndarray) -> float:
    """Percentage of positions where the two images differ."""
    a, b = _check_pair(a, b)
    return float(100.0 * np.count_nonzero(a != b) / a.size)


def uaci(a: np.ndarray, b: np.ndarray) -> float:
    """Mean absolute pixel difference as a percentage of 255."""
    a, b = _check_pair(a, b)
    diff = np.abs(a.astype(np.int16) - b.astype(np.int16))
    return float(100.0 * diff.mean() / 255.0)


def key_sensitivity(img: np.ndarray, key: MasterKey, *, _flip=True) -> float:
    """NPCR between ciphertexts under ``key`` and its one-bit flip.

    ``_flip=False`` is a test hook that reuses the same key (expects 0).
    """
    c1 = pipeline.encrypt(img, key).body
    key2 = flip_low_bit(key) if _flip else key
    c2 = pipeline.encrypt(img, key2).body
    return npcr(c1, c2)


def glcm(img: np.ndarray, levels: int = 256) -> tuple[float, float, float]:
    """(contrast, homogeneity, energy) of the (0, 1)-offset GLCM.

    ``levels`` quantizes gray values to that many bins first (bin =
    pixel * levels // 256).  The default keeps the full 256 levels;
    levels=8 matches the coarse convention behind typical published
    cipher-image contrast values near 10.5.
    """
    img = _check(img)
    if img.shape[1] < 2:
        raise ShapeError("GLCM needs at least two columns")
    if not 2 <= levels <= 256:
        raise ShapeError(f"levels must be in 2..256, got {levels}")
    binned = (img.astype(np.int32) * levels) >> 8
    left = binned[:, :-1].ravel()
    right = binned[:, 1:].ravel()
    counts = np.bincount(left * levels + right, minlength=levels * levels)
    counts = counts.reshape(levels, levels)
    p = counts / counts.sum()
    i = np.arange(levels)
    diff = i[:, None] - i[None, :]
    contrast = float((p * diff * diff).sum())
    homogeneity = float((p / (1.0 + np.abs(diff))).sum())
    energy = float((p * p).sum())
    return contrast, homogeneity, energy


def chi_square(img: np.ndarray) -> float:
    """Sum of (observed - expected)^2 / expected over the 256 bins."""
    counts = histogram(img)
    expected = counts.sum() / 256.0
    return float(((counts - expected) ** 2 / expected).sum())


@dataclass(frozen=True)
class MetricsReport:
    """Every Table-style security quantity for one image (or image pair)."""

    entropy: float
    corr_h: float
    corr_v: float
    corr_d: float
    npcr: Optional[float]
    uaci: Optional[float]
    key_sensitivity: Optional[float]
    contrast: float
    homogeneity: float
    energy: float
    histogram: np.ndarray
    chi_square: float

    def lines(self) -> list[str]:
        def fmt(v):
            return "na" if v is None else f"{v:.6f}"

        return [
            f"entropy={fmt(self.entropy)}",
            f"corr_h={fmt(self.corr_h)}",
            f"corr_v={fmt(self.corr_v)}",
            f"corr_d={fmt(self.corr_d)}",
            f"npcr={fmt(self.npcr)}",
            f"uaci={fmt(self.uaci)}",
            f"key_sensitivity={fmt(self.key_sensitivity)}",
            f"contrast={fmt(self.contrast)}",
            f"homogeneity={fmt(self.homogeneity)}",
            f"energy={fmt(self.energy)}",
            f"chi_square={fmt(self.chi_square)}",
        ]


def report(
    img: np.ndarray,
    other: Optional[np.ndarray] = None,
    key: Optional[MasterKey] = None,
) -> MetricsReport:
    """Compute all metrics for ``img``.

    ``other`` adds the pairwise NPCR/UACI columns; ``key`` adds the key
    sensitivity run (an encryption of ``img`` under the key and its flip).
    """
    img = _check(img)
    contrast, homogeneity, energy = glcm(img)
    return MetricsReport(
        entropy=entropy(img),
        corr_h=correlation(img, "H"),
        corr_v=correlation(img, "V"),
        corr_d=correlation(img, "D"),
        npcr=None if other is None else npcr(img, other),
        uaci=None if other is None else uaci(img, other),
        key_sensitivity=None if key is None else key_sensitivity(img, key),
        contrast=contrast,
        homogeneity=homogeneity,
        energy=energy,
        histogram=histogram(img),
        chi_square=chi_square(img),
    )
