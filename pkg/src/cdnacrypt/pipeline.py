"""The full encryption pipeline and its exact inverse.

Stage order (one pass over a P x Q grayscale image):

1. expand the key into seed parameters (Chirikov lattice N = max(P, Q))
2. TD-ERCS row permutation, then column permutation continuing the same
   stream (P values, then Q values)
3. Intertwining byte matrix R_T1, XORed in
4. NCA-selected per-pixel S-box substitution
5. Chirikov rule draws -> DNA encode; Chirikov bytes -> R_T2; fresh rule
   draws -> DNA encode R_T2; DNA XOR under the step-5 rules; fresh rule
   draws -> DNA decode back to bytes

Decryption regenerates every stream from the key in the same absolute
order and applies the inverse stages in reverse.  The envelope carries a
SHA-256 of the plaintext for explicit wrong-key detection.

Cipher file layout (bit-exact): magic ``CDNA``, u8 version = 1, u32
big-endian P, u32 big-endian Q, 32-byte plaintext checksum, P*Q body bytes.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass

import numpy as np

from . import dna
from .chaos import (
    ChirikovStream,
    IntertwiningStream,
    NcaStream,
    TdErcsStream,
    chaotic_bytes,
    chaotic_indices,
    permutation_from_sequence,
)
from .errors import ChecksumMismatch, PermutationError, ShapeError
from .keyschedule import MasterKey, expand
from .sbox import inverse_substitute, standard_sboxes, substitute

MAGIC = b"CDNA"
VERSION = 1
HEADER_LEN = 4 + 1 + 4 + 4 + 32

#: Stage names accepted by the encrypt test hook.
STAGES = ("permute_rows", "permute_cols", "xor_rt1", "sbox", "dna")


def check_gray(img) -> np.ndarray:
    img = np.asarray(img)
    if img.ndim != 2 or img.dtype != np.uint8 or img.size == 0:
        raise ShapeError("expected a non-empty 2-D uint8 image")
    return img


@dataclass(frozen=True)
class CipherEnvelope:
    height: int
    width: int
    checksum: bytes
    body: np.ndarray

    def __post_init__(self):
        if len(self.checksum) != 32:
            raise ShapeError("checksum must be 32 bytes")
        if self.body.shape != (self.height, self.width):
            raise ShapeError("header dimensions do not match body")

    def to_bytes(self) -> bytes:
        head = MAGIC + struct.pack(">BII", VERSION, self.height, self.width)
        return head + self.checksum + self.body.tobytes()

    @classmethod
    def from_bytes(cls, raw: bytes) -> "CipherEnvelope":
        if len(raw) < HEADER_LEN or raw[:4] != MAGIC:
            raise ShapeError("not a CDNA envelope")
        version, height, width = struct.unpack(">BII", raw[4:13])
        if version != VERSION:
            raise ShapeError(f"unsupported envelope version {version}")
        checksum = raw[13:45]
        body = raw[45:]
        if len(body) != height * width:
            raise ShapeError(
                f"body length {len(body)} does not match {height}x{width}"
            )
        pixels = np.frombuffer(body, dtype=np.uint8).reshape(height, width).copy()
        return cls(height, width, checksum, pixels)


def _check_perm(perm, size: int) -> np.ndarray:
    perm = np.asarray(perm)
    if perm.shape != (size,) or not np.array_equal(
        np.sort(perm), np.arange(size)
    ):
        raise PermutationError(f"not a permutation of 0..{size - 1}")
    return perm.astype(np.intp)


def permute_rows(img: np.ndarray, perm) -> np.ndarray:
    """Output row i = input row perm[i]."""
    img = check_gray(img)
    return img[_check_perm(perm, img.shape[0]), :]


def permute_cols(img: np.ndarray, perm) -> np.ndarray:
    """Output column j = input column perm[j]."""
    img = check_gray(img)
    return img[:, _check_perm(perm, img.shape[1])]


def invert_permutation(perm: np.ndarray) -> np.ndarray:
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm), dtype=perm.dtype)
    return inv


def xor_matrix(img: np.ndarray, r: np.ndarray) -> np.ndarray:
    img = check_gray(img)
    r = check_gray(r)
    if img.shape != r.shape:
        raise ShapeError(f"shape mismatch: {img.shape} vs {r.shape}")
    return img ^ r


@dataclass(frozen=True)
class _KeyStreams:
    """Everything decryption needs, regenerated from the key alone."""

    row_perm: np.ndarray
    col_perm: np.ndarray
    r_t1: np.ndarray
    sbox_sel: np.ndarray
    rules_img: np.ndarray
    r_t2: np.ndarray
    rules_rt2: np.ndarray
    rules_out: np.ndarray


def _keystreams(key: MasterKey, shape: tuple[int, int]) -> _KeyStreams:
    p, q = shape
    npix = p * q
    bundle = expand(key, shape)

    td = TdErcsStream(bundle.td_ercs)
    row_perm = permutation_from_sequence(td.take(p))
    col_perm = permutation_from_sequence(td.take(q))

    tw = IntertwiningStream(bundle.intertwining)
    r_t1 = chaotic_bytes(tw, npix).reshape(p, q)

    nca = NcaStream(bundle.nca)
    sbox_sel = chaotic_indices(nca, npix, 3)

    # One Chirikov stream, consumed in fixed order: image rules, R_T2
    # bytes, R_T2 rules, output rules.
    ch = ChirikovStream(bundle.chirikov)
    rules_img = chaotic_indices(ch, npix, 8) + 1
    r_t2 = chaotic_bytes(ch, npix).reshape(p, q)
    rules_rt2 = chaotic_indices(ch, npix, 8) + 1
    rules_out = chaotic_indices(ch, npix, 8) + 1

    return _KeyStreams(
        row_perm, col_perm, r_t1, sbox_sel, rules_img, r_t2, rules_rt2, rules_out
    )


def encrypt(img: np.ndarray, key: MasterKey, *, _skip=frozenset()) -> CipherEnvelope:
    """Encrypt a grayscale image under ``key``.

    ``_skip`` is a test hook naming pipeline stages to disable; it is not
    part of the cipher and must stay empty in real use.
    """
    img = check_gray(img)
    unknown = set(_skip) - set(STAGES)
    if unknown:
        raise ValueError(f"unknown stages: {sorted(unknown)}")
    p, q = img.shape
    ks = _keystreams(key, (p, q))
    boxes = standard_sboxes()

    work = img
    if "permute_rows" not in _skip:
        work = permute_rows(work, ks.row_perm)
    if "permute_cols" not in _skip:
        work = permute_cols(work, ks.col_perm)
    if "xor_rt1" not in _skip:
        work = xor_matrix(work, ks.r_t1)
    if "sbox" not in _skip:
        work = substitute(work, ks.sbox_sel, boxes)
    if "dna" not in _skip:
        encoded = dna.encode_plane(work, ks.rules_img)
        r_td = dna.encode_plane(ks.r_t2, ks.rules_rt2)
        mixed = dna.xor_planes(encoded, r_td, ks.rules_img)
        work = dna.decode_plane(mixed, ks.rules_out)

    checksum = hashlib.sha256(img.tobytes()).digest()
    return CipherEnvelope(p, q, checksum, work)


def decrypt(env: CipherEnvelope, key: MasterKey) -> np.ndarray:
    """Invert encrypt; raises ChecksumMismatch when the key is wrong."""
    body = check_gray(env.body)
    p, q = env.height, env.width
    if body.shape != (p, q):
        raise ShapeError("envelope header dimensions do not match body")
    ks = _keystreams(key, (p, q))
    boxes = standard_sboxes()

    mixed = dna.encode_plane(body, ks.rules_out)
    r_td = dna.encode_plane(ks.r_t2, ks.rules_rt2)
    encoded = dna.xor_planes(mixed, r_td, ks.rules_img)
    work = dna.decode_plane(encoded, ks.rules_img)
    work = inverse_substitute(work, ks.sbox_sel, boxes)
    work = xor_matrix(work, ks.r_t1)
    work = permute_cols(work, invert_permutation(ks.col_perm))
    work = permute_rows(work, invert_permutation(ks.row_perm))

    if hashlib.sha256(work.tobytes()).digest() != env.checksum:
        raise ChecksumMismatch(
            "plaintext checksum mismatch: wrong key or corrupted envelope"
        )
    return work
