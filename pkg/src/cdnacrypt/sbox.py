"""Three fixed bijective 8-bit S-boxes and keyed per-pixel substitution.

The tables are deterministic chaotic constructions: S-box k (k = 0, 1, 2)
is the stable argsort permutation of the first 256 post-burn-in outputs of
an NCA stream seeded with c0 = 0.31 + 0.07k, chi = 1.1, xi = 17.  The
tables themselves are key-independent; only the per-pixel *selection*
among the three is keyed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .chaos import NcaParams, NcaStream
from .errors import ShapeError

_SEED_C0 = (0.31, 0.38, 0.45)
_SEED_CHI = 1.1
_SEED_XI = 17.0


@dataclass(frozen=True)
class SBox:
    """A byte permutation with its precomputed inverse."""

    table: np.ndarray
    inverse: np.ndarray

    @classmethod
    def from_table(cls, table: np.ndarray) -> "SBox":
        table = np.asarray(table, dtype=np.uint8)
        if table.shape != (256,) or len(np.unique(table)) != 256:
            raise ShapeError("S-box table must be a permutation of 0..255")
        inverse = np.empty(256, dtype=np.uint8)
        inverse[table] = np.arange(256, dtype=np.uint8)
        return cls(table, inverse)


@lru_cache(maxsize=1)
def standard_sboxes() -> tuple[SBox, SBox, SBox]:
    """The three fixed S-boxes, identical on every build."""
    boxes = []
    for c0 in _SEED_C0:
        stream = NcaStream(NcaParams(c0=c0, chi=_SEED_CHI, xi=_SEED_XI))
        table = np.argsort(stream.take(256), kind="stable").astype(np.uint8)
        boxes.append(SBox.from_table(table))
    return tuple(boxes)


def _check_selector(selector, npixels: int) -> np.ndarray:
    sel = np.asarray(selector)
    if sel.size != npixels:
        raise ShapeError(f"need {npixels} selector entries, got {sel.size}")
    if sel.min() < 0 or sel.max() > 2:
        raise ShapeError("selector entries must be in 0..2")
    return sel.reshape(-1).astype(np.intp)


def substitute(img: np.ndarray, selector, boxes=None) -> np.ndarray:
    """Replace pixel (i, j) with boxes[selector[i*Q + j]].table[pixel]."""
    img = np.asarray(img, dtype=np.uint8)
    p, q = img.shape
    sel = _check_selector(selector, p * q).reshape(p, q)
    if boxes is None:
        boxes = standard_sboxes()
    tables = np.stack([b.table for b in boxes])
    return tables[sel, img.astype(np.intp)]


def inverse_substitute(img: np.ndarray, selector, boxes=None) -> np.ndarray:
    """Exact inverse of substitute with the same selector and boxes."""
    img = np.asarray(img, dtype=np.uint8)
    p, q = img.shape
    sel = _check_selector(selector, p * q).reshape(p, q)
    if boxes is None:
        boxes = standard_sboxes()
    inverses = np.stack([b.inverse for b in boxes])
    return inverses[sel, img.astype(np.intp)]
