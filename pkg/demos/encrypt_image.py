"""Encrypt a test image end to end and look inside the envelope.

Loads one of the checked-in 384x512 fixtures, derives the key from the
plaintext (the scheme's native mode), encrypts, pokes at the envelope
bytes, decrypts, and finally shows what a wrong key does.  Run from the
repository root:

    python demos/encrypt_image.py
"""

import time
from pathlib import Path

import numpy as np

from cdnacrypt.errors import ChecksumMismatch
from cdnacrypt.fileio import read_pgm
from cdnacrypt.keyschedule import derive_key, flip_low_bit
from cdnacrypt.pipeline import CipherEnvelope, decrypt, encrypt

FIXTURE = Path(__file__).parent.parent / "tests" / "fixtures" / "natural_01.pgm"


def main() -> None:
    img = read_pgm(FIXTURE)
    print(f"plaintext: {img.shape[1]}x{img.shape[0]}, "
          f"range {img.min()}..{img.max()}")

    key = derive_key(img)
    print(f"key (SHA-256 of dims + pixels): {key.digest.hex()[:32]}...")

    t0 = time.perf_counter()
    env = encrypt(img, key)
    t1 = time.perf_counter()
    print(f"encrypted in {t1 - t0:.3f}s")

    raw = env.to_bytes()
    print(f"envelope: {len(raw)} bytes -- magic {raw[:4]!r}, version {raw[4]}, "
          f"checksum {env.checksum.hex()[:16]}...")
    print("cipher corner:")
    print(np.array2string(env.body[:4, :8]))

    back = decrypt(CipherEnvelope.from_bytes(raw), key)
    print("decrypt with the right key:", "bit-exact"
          if np.array_equal(back, img) else "MISMATCH")

    try:
        decrypt(env, flip_low_bit(key))
    except ChecksumMismatch as exc:
        print(f"decrypt with a one-bit-wrong key: rejected ({exc})")


if __name__ == "__main__":
    main()
