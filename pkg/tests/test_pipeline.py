import hashlib

import numpy as np
import pytest

import reference_impl
from cdnacrypt.errors import ChecksumMismatch, PermutationError, ShapeError
from cdnacrypt.keyschedule import derive_key, flip_low_bit
from cdnacrypt.pipeline import (
    CipherEnvelope,
    HEADER_LEN,
    STAGES,
    decrypt,
    encrypt,
    invert_permutation,
    permute_cols,
    permute_rows,
    xor_matrix,
)
from conftest import random_image

# Ciphertext of the conftest 4x4 image under SHA-256("golden-test-key"),
# frozen from tests/reference_impl.py (independent straight-line script).
GOLDEN_CIPHER_4X4 = np.array(
    [[169, 48, 144, 61],
     [221, 120, 227, 72],
     [23, 203, 176, 193],
     [166, 72, 80, 200]],
    dtype=np.uint8,
)


# --- permutation / xor primitives -------------------------------------------

def test_permute_rows_examples():
    img = np.array([[1, 2], [3, 4]], dtype=np.uint8)
    assert np.array_equal(permute_rows(img, [0, 1]), img)
    assert np.array_equal(permute_rows(img, [1, 0]), img[::-1])
    with pytest.raises(PermutationError):
        permute_rows(img, [0, 0])


def test_permute_cols_examples():
    img = np.array([[1, 2], [3, 4]], dtype=np.uint8)
    assert np.array_equal(permute_cols(img, [0, 1]), img)
    assert np.array_equal(permute_cols(img, [1, 0]), img[:, ::-1])
    with pytest.raises(PermutationError):
        permute_cols(img, [1, 1])


def test_permutation_roundtrip():
    rng = np.random.default_rng(23)
    img = random_image(rng, (9, 13))
    perm = rng.permutation(9)
    assert np.array_equal(
        permute_rows(permute_rows(img, perm), invert_permutation(perm)), img
    )


def test_xor_matrix_laws():
    rng = np.random.default_rng(29)
    img, r = random_image(rng, (5, 5)), random_image(rng, (5, 5))
    assert np.array_equal(xor_matrix(img, np.zeros((5, 5), dtype=np.uint8)), img)
    assert np.array_equal(xor_matrix(xor_matrix(img, r), r), img)
    with pytest.raises(ShapeError):
        xor_matrix(img, random_image(rng, (5, 6)))


# --- envelope serialization --------------------------------------------------

def test_envelope_roundtrip(small_image, fixed_key):
    env = encrypt(small_image, fixed_key)
    raw = env.to_bytes()
    assert raw[:4] == b"CDNA"
    assert raw[4] == 1
    assert len(raw) == HEADER_LEN + 16
    again = CipherEnvelope.from_bytes(raw)
    assert (again.height, again.width, again.checksum) == (4, 4, env.checksum)
    assert np.array_equal(again.body, env.body)
    assert np.array_equal(decrypt(again, fixed_key), small_image)


def test_envelope_rejects_garbage(small_image, fixed_key):
    raw = encrypt(small_image, fixed_key).to_bytes()
    with pytest.raises(ShapeError):
        CipherEnvelope.from_bytes(b"NOPE" + raw[4:])
    with pytest.raises(ShapeError):
        CipherEnvelope.from_bytes(raw[:-1])  # truncated body
    with pytest.raises(ShapeError):
        CipherEnvelope.from_bytes(raw[: HEADER_LEN - 1])
    bad_version = raw[:4] + b"\x02" + raw[5:]
    with pytest.raises(ShapeError):
        CipherEnvelope.from_bytes(bad_version)


# --- the cipher itself --------------------------------------------------------

def test_golden_cipher(small_image, fixed_key):
    env = encrypt(small_image, fixed_key)
    assert np.array_equal(env.body, GOLDEN_CIPHER_4X4)
    assert env.checksum == hashlib.sha256(small_image.tobytes()).digest()


def test_matches_independent_reference(fixed_key):
    rng = np.random.default_rng(31)
    for shape in ((4, 4), (16, 16), (3, 5)):
        img = random_image(rng, shape)
        want = reference_impl.encrypt(img.tolist(), fixed_key.digest)
        env = encrypt(img, fixed_key)
        assert env.body.tolist() == want


def test_roundtrip_sizes(fixed_key):
    rng = np.random.default_rng(37)
    for shape in ((1, 1), (1, 7), (7, 1), (3, 5), (16, 16), (64, 48)):
        img = random_image(rng, shape)
        assert np.array_equal(decrypt(encrypt(img, fixed_key), fixed_key), img)


def test_roundtrip_image_derived_key(natural_images):
    img = natural_images[0]
    key = derive_key(img)
    assert np.array_equal(decrypt(encrypt(img, key), key), img)


def test_deterministic(small_image, fixed_key):
    a = encrypt(small_image, fixed_key)
    b = encrypt(small_image, fixed_key)
    assert a.to_bytes() == b.to_bytes()


def test_stage_isolation(small_image, fixed_key):
    # disabling any one stage must break the golden vector
    for stage in STAGES:
        env = encrypt(small_image, fixed_key, _skip={stage})
        assert not np.array_equal(env.body, GOLDEN_CIPHER_4X4), stage
    with pytest.raises(ValueError):
        encrypt(small_image, fixed_key, _skip={"bogus"})


def test_wrong_key_checksum_mismatch(small_image, fixed_key):
    env = encrypt(small_image, fixed_key)
    with pytest.raises(ChecksumMismatch):
        decrypt(env, flip_low_bit(fixed_key))


def test_reject_bad_inputs(fixed_key):
    with pytest.raises(ShapeError):
        encrypt(np.zeros((0, 4), dtype=np.uint8), fixed_key)
    with pytest.raises(ShapeError):
        encrypt(np.zeros((4, 4), dtype=np.uint16), fixed_key)
    with pytest.raises(ShapeError):
        encrypt(np.zeros((4, 4, 3), dtype=np.uint8), fixed_key)
