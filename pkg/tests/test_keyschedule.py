import hashlib
import struct

import numpy as np
import pytest

from cdnacrypt.errors import EmptyInput, FormatError
from cdnacrypt.keyschedule import (
    A1,
    A2,
    A3,
    ALPHA,
    CHI,
    EPS,
    ETA,
    KeyOrigin,
    LAMBDA,
    M_DELAY,
    MasterKey,
    XI,
    derive_key,
    expand,
    flip_low_bit,
    read_key_file,
    write_key_file,
)


def test_empty_image_rejected():
    with pytest.raises(EmptyInput):
        derive_key(np.zeros((0, 4), dtype=np.uint8))


def test_derive_key_dimension_prefix():
    img = np.zeros((1, 1), dtype=np.uint8)
    want = hashlib.sha256(bytes.fromhex("00 00 00 01 00 00 00 01 00".replace(" ", ""))).digest()
    key = derive_key(img)
    assert key.digest == want
    assert key.origin is KeyOrigin.IMAGE_HASH


def test_derive_key_deterministic_and_dimension_sensitive():
    rng = np.random.default_rng(0)
    img = rng.integers(0, 256, (6, 4), dtype=np.uint8)
    assert derive_key(img) == derive_key(img.copy())
    assert derive_key(img).digest != derive_key(img.reshape(4, 6)).digest


def test_digest_length_enforced():
    with pytest.raises(FormatError):
        MasterKey(b"short", KeyOrigin.USER_SUPPLIED)


def test_expand_all_zero_digest_hits_low_ends():
    bundle = expand(MasterKey(b"\x00" * 32, KeyOrigin.USER_SUPPLIED), (4, 4))
    assert bundle.td_ercs.mu == EPS
    assert bundle.td_ercs.x0 == -1.0 + EPS
    assert bundle.nca.c0 == EPS
    assert bundle.chirikov.a0 == 0.0


def test_expand_golden_from_documented_affine_maps():
    # independent re-derivation of the documented expansion for the
    # 1x1 zero image key
    img = np.zeros((1, 1), dtype=np.uint8)
    key = derive_key(img)
    bundle = expand(key, (1, 1))

    u = [w / 2 ** 64 for w in struct.unpack(">QQQQ", key.digest)]
    v = [w / 2 ** 64 for w in struct.unpack(
        ">QQQQ", hashlib.sha256(key.digest + b"\x01").digest())]
    span = 1 - 2 * EPS
    assert bundle.td_ercs.mu == EPS + u[0] * span
    assert bundle.td_ercs.x0 == -1 + EPS + u[1] * (2 - 2 * EPS)
    assert bundle.nca.c0 == EPS + u[2] * span
    assert bundle.chirikov.a0 == (u[3] * 1) % 1
    assert bundle.intertwining.x0 == EPS + v[0] * span
    assert bundle.intertwining.y0 == EPS + v[1] * span
    assert bundle.intertwining.z0 == EPS + v[2] * span
    assert bundle.chirikov.b0 == (v[3] * 1) % 1
    # fixed published constants
    assert (bundle.td_ercs.alpha, bundle.td_ercs.m) == (ALPHA, M_DELAY)
    assert (bundle.intertwining.lam, bundle.intertwining.a1,
            bundle.intertwining.a2, bundle.intertwining.a3) == (LAMBDA, A1, A2, A3)
    assert (bundle.chirikov.eta, bundle.chirikov.n) == (ETA, 1)
    assert (bundle.nca.chi, bundle.nca.xi) == (CHI, XI)


def test_expand_total_over_random_digests():
    # every digest must yield a valid bundle (type invariants raise otherwise)
    rng = np.random.default_rng(11)
    shapes = [(1, 1), (3, 5), (384, 512)]
    for _ in range(2_000):
        digest = rng.bytes(32)
        expand(MasterKey(digest, KeyOrigin.USER_SUPPLIED), shapes[int(rng.integers(3))])


def test_expand_extreme_digests():
    for digest in (b"\x00" * 32, b"\xff" * 32, b"\x00" * 31 + b"\x01"):
        expand(MasterKey(digest, KeyOrigin.USER_SUPPLIED), (384, 512))


def test_one_bit_flip_changes_every_derived_float():
    key = MasterKey(hashlib.sha256(b"x").digest(), KeyOrigin.USER_SUPPLIED)
    a = expand(key, (16, 16))
    b = expand(flip_low_bit(key), (16, 16))
    # a0 comes from the flipped 64-bit word, whose low bit is below float64
    # mantissa precision, so a0 itself may not move; the re-hashed second
    # block must move everything it feeds
    assert a.chirikov.b0 != b.chirikov.b0
    assert a.intertwining.x0 != b.intertwining.x0
    assert a.intertwining.y0 != b.intertwining.y0
    assert a.intertwining.z0 != b.intertwining.z0


def test_key_file_roundtrip(tmp_path):
    key = MasterKey(hashlib.sha256(b"roundtrip").digest(), KeyOrigin.IMAGE_HASH)
    path = tmp_path / "k.txt"
    write_key_file(key, path)
    text = path.read_text()
    assert text.splitlines()[0] == "CDNA-KEY v1"
    loaded = read_key_file(path)
    assert loaded.digest == key.digest
    assert loaded.origin is KeyOrigin.USER_SUPPLIED
    # bundle survives the round trip exactly
    assert expand(loaded, (8, 8)) == expand(key, (8, 8))


@pytest.mark.parametrize(
    "content",
    [
        "",
        "WRONG HEADER\n" + "0" * 64 + "\n",
        "CDNA-KEY v1\n" + "0" * 63 + "\n",
        "CDNA-KEY v1\n" + "G" * 64 + "\n",
        "CDNA-KEY v1\n" + "A" * 64 + "\n",  # uppercase hex rejected
    ],
)
def test_key_file_malformed(tmp_path, content):
    path = tmp_path / "k.txt"
    path.write_text(content)
    with pytest.raises(FormatError):
        read_key_file(path)
