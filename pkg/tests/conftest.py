import hashlib
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cdnacrypt.keyschedule import KeyOrigin, MasterKey

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def natural_images():
    from cdnacrypt.fileio import read_pgm

    return [read_pgm(p) for p in sorted(FIXTURES.glob("natural_*.pgm"))]


@pytest.fixture
def fixed_key():
    digest = hashlib.sha256(b"golden-test-key").digest()
    return MasterKey(digest, KeyOrigin.USER_SUPPLIED)


@pytest.fixture
def small_image():
    return np.array(
        [[52, 55, 61, 59],
         [79, 61, 76, 41],
         [86, 89, 65, 23],
         [31, 34, 44, 21]],
        dtype=np.uint8,
    )


def random_image(rng, shape):
    return rng.integers(0, 256, shape, dtype=np.uint8)
