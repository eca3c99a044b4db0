"""DNA encoding, decoding and XOR diffusion over pixel planes.

Each byte splits MSB-first into four 2-bit codes; a rule is one of the 8
code->base bijections that respect base complementarity (00/11 and 01/10
always land on complementary bases, A<->T and C<->G):

    code  R1  R2  R3  R4  R5  R6  R7  R8
     00    A   A   C   C   G   G   T   T
     01    C   G   A   T   A   T   C   G
     10    G   C   T   A   T   A   G   C
     11    T   T   G   G   C   C   A   A

Bases are stored as uint8 ids 0..3 in the order A, C, G, T; a DNA plane is
a (P, Q, 4) uint8 array.  Rules apply per pixel (all four bases of a byte
share the pixel's rule) and are passed around as arrays of rule ids 1..8.

DNA XOR is XOR of the underlying 2-bit codes under the active rule:
``xor(x, y, r) = enc_r(dec_r(x) ^ dec_r(y))``.  For R1 this reproduces the
conventional DNA XOR table, and for every rule it is commutative,
associative, self-inverse, with the rule's 00-base as identity.
"""

from __future__ import annotations

import numpy as np

from .errors import RangeError, ShapeError

BASES = "ACGT"

_RULE_BASES = ("ACGT", "AGCT", "CATG", "CTAG", "GATC", "GTAC", "TCGA", "TGCA")

# ENCODE[rule_id, code] -> base id; DECODE[rule_id, base_id] -> code.
# Row 0 is padding so rule ids 1..8 index directly.
ENCODE = np.zeros((9, 4), dtype=np.uint8)
DECODE = np.zeros((9, 4), dtype=np.uint8)
for _rid, _letters in enumerate(_RULE_BASES, start=1):
    for _code, _letter in enumerate(_letters):
        _base = BASES.index(_letter)
        ENCODE[_rid, _code] = _base
        DECODE[_rid, _base] = _code


class DnaRule:
    """One of the eight code->base bijections, addressed by id 1..8."""

    __slots__ = ("id",)

    def __init__(self, rule_id: int):
        if not 1 <= rule_id <= 8:
            raise RangeError(f"rule id must be 1..8, got {rule_id}")
        self.id = rule_id

    def base_for(self, code: int) -> str:
        return BASES[ENCODE[self.id, code]]

    def code_for(self, base: str) -> int:
        return int(DECODE[self.id, BASES.index(base)])

    def __eq__(self, other):
        return isinstance(other, DnaRule) and other.id == self.id

    def __hash__(self):
        return hash(self.id)

    def __repr__(self):
        return f"DnaRule(R{self.id}: {_RULE_BASES[self.id - 1]})"


RULES = tuple(DnaRule(i) for i in range(1, 9))


def encode_byte(b: int, rule: DnaRule) -> str:
    """Encode one byte as four bases, MSB-first (200 under R2 -> 'TACA')."""
    codes = ((b >> 6) & 3, (b >> 4) & 3, (b >> 2) & 3, b & 3)
    return "".join(rule.base_for(c) for c in codes)


def decode_bases(bases: str, rule: DnaRule) -> int:
    """Exact inverse of encode_byte under the same rule."""
    if len(bases) != 4:
        raise ShapeError("exactly four bases decode to one byte")
    out = 0
    for base in bases:
        out = (out << 2) | rule.code_for(base)
    return out


def dna_xor(x: str, y: str, rule: DnaRule) -> str:
    """XOR two bases: decode both to 2-bit codes under ``rule``, XOR, re-encode."""
    return rule.base_for(rule.code_for(x) ^ rule.code_for(y))


def _check_rules(rules, npixels: int) -> np.ndarray:
    arr = np.asarray(rules)
    if arr.size != npixels:
        raise ShapeError(f"need {npixels} rules, got {arr.size}")
    if arr.min() < 1 or arr.max() > 8:
        raise RangeError("rule ids must be in 1..8")
    return arr.reshape(-1).astype(np.intp)


def encode_plane(img: np.ndarray, rules) -> np.ndarray:
    """DNA-encode a grayscale image, pixel (i, j) under rules[i*Q + j].

    Returns a (P, Q, 4) uint8 plane of base ids.
    """
    img = np.asarray(img, dtype=np.uint8)
    p, q = img.shape
    rid = _check_rules(rules, p * q).reshape(p, q)
    shifts = np.array([6, 4, 2, 0], dtype=np.uint8)
    codes = (img[:, :, None] >> shifts) & 3
    return ENCODE[rid[:, :, None], codes]


def decode_plane(plane: np.ndarray, rules) -> np.ndarray:
    """Exact inverse of encode_plane under the same rules."""
    plane = np.asarray(plane, dtype=np.uint8)
    p, q, depth = plane.shape
    if depth != 4:
        raise ShapeError("DNA plane must be (P, Q, 4)")
    rid = _check_rules(rules, p * q).reshape(p, q)
    codes = DECODE[rid[:, :, None], plane.astype(np.intp)]
    weights = np.array([64, 16, 4, 1], dtype=np.uint16)
    return (codes.astype(np.uint16) * weights).sum(axis=2).astype(np.uint8)


def xor_planes(a: np.ndarray, b: np.ndarray, rules) -> np.ndarray:
    """Cellwise DNA XOR of two planes with the per-pixel rule."""
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    if a.shape != b.shape:
        raise ShapeError(f"plane shapes differ: {a.shape} vs {b.shape}")
    p, q, depth = a.shape
    if depth != 4:
        raise ShapeError("DNA plane must be (P, Q, 4)")
    rid = _check_rules(rules, p * q).reshape(p, q)[:, :, None]
    codes = DECODE[rid, a.astype(np.intp)] ^ DECODE[rid, b.astype(np.intp)]
    return ENCODE[rid, codes.astype(np.intp)]


def plane_to_letters(plane: np.ndarray) -> np.ndarray:
    """Base-id plane to an array of 'A'/'C'/'G'/'T' strings (for display)."""
    lut = np.array(list(BASES))
    return lut[np.asarray(plane)]
