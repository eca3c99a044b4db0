import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from make_dataset import make_image

#: Weights produced by the documented training run (checked in when present).
WEIGHTS = Path(__file__).parent.parent / "src" / "aec" / "weights" / "autoencoder.weights.h5"


@pytest.fixture(scope="session")
def models():
    from aec.model import build_model

    return build_model(seed=0)


@pytest.fixture(scope="session")
def trained_models():
    if not WEIGHTS.exists():
        pytest.skip(f"trained weights not present at {WEIGHTS}")
    from aec.model import build_model

    auto, encoder, decoder = build_model(seed=0)
    auto.load_weights(WEIGHTS)
    return auto, encoder, decoder


@pytest.fixture(scope="session")
def tiny_dataset(tmp_path_factory):
    """Four synthetic images on disk, for fast training-loop tests."""
    from PIL import Image

    outdir = tmp_path_factory.mktemp("data")
    for idx in range(4):
        Image.fromarray(make_image(1000 + idx)).save(outdir / f"synth_{idx:02d}.png")
    return outdir


def validation_images(count: int = 24, seed: int = 0, train_fraction: float = 0.6):
    """The validation split of the standard synthetic set, regenerated
    deterministically without touching the training images."""
    order = np.random.default_rng(seed).permutation(count)
    cut = int(round(count * train_fraction))
    return np.stack([make_image(1000 + int(idx)) for idx in order[cut:]])
