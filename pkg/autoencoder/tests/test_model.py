import numpy as np
import pytest

from aec.errors import ConfigError
from aec.model import (
    DECODER_PARAMS,
    ENCODER_PARAMS,
    FEATURE_SHAPE,
    INPUT_SHAPE,
    LATENT_SHAPE,
    ModelConfig,
    TrainConfig,
    build_model,
)


def test_parameter_counts(models):
    _, encoder, decoder = models
    assert encoder.count_params() == ENCODER_PARAMS == 95_840
    assert decoder.count_params() == DECODER_PARAMS == 29_475


def test_shape_pipeline(models):
    auto, encoder, decoder = models
    x = np.zeros((1,) + INPUT_SHAPE, dtype=np.float32)
    feat = np.asarray(encoder(x, training=False))
    assert feat.shape == (1,) + FEATURE_SHAPE
    assert feat.size == LATENT_SHAPE[0] * LATENT_SHAPE[1] == 196_608
    out = np.asarray(decoder(feat, training=False))
    assert out.shape == (1,) + INPUT_SHAPE
    assert np.isfinite(out).all()
    assert np.asarray(auto(x, training=False)).shape == (1,) + INPUT_SHAPE


def test_compression_ratio():
    h, w, c = INPUT_SHAPE
    assert (h * w * c) / (LATENT_SHAPE[0] * LATENT_SHAPE[1]) == 6.0


def test_config_validation():
    with pytest.raises(ConfigError):
        ModelConfig(input_shape=(512, 768, 1))
    with pytest.raises(ConfigError):
        ModelConfig(input_shape=(510, 768, 3))
    with pytest.raises(ConfigError):
        ModelConfig(encoder_maps=(128, 64, 16))
    with pytest.raises(ConfigError):
        ModelConfig(decoder_maps=(32, 64, 1))
    with pytest.raises(ConfigError):
        TrainConfig(train_fraction=1.0)
    with pytest.raises(ConfigError):
        TrainConfig(epochs=0)


def test_seeded_build_deterministic_structure():
    a_auto, a_enc, a_dec = build_model(seed=7)
    b_auto, b_enc, b_dec = build_model(seed=7)
    assert a_enc.count_params() == b_enc.count_params()
    assert a_dec.count_params() == b_dec.count_params()
    for wa, wb in zip(a_auto.get_weights(), b_auto.get_weights()):
        assert wa.shape == wb.shape
