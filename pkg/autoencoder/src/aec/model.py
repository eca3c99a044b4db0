"""The convolutional autoencoder: 512x768x3 -> 384x512 latent -> 512x768x3.

Encoder: three 3x3 convolutions with 128, 64 and 32 feature maps (strides
1, 1, 2) and two 2x2 max-pool stages in between, all ReLU; the 64x96x32
feature block flattens to 196608 values and reshapes into a 384x512
grayscale latent (compression ratio exactly 6:1).  Decoder: three 3x3
transpose convolutions (32, 64, 3 maps, stride 2) with ReLU, ReLU,
Sigmoid.  Trainable parameters: encoder 95,840, decoder 29,475.  All
kernels and biases carry L2 regularization 1e-6.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigError

INPUT_SHAPE = (512, 768, 3)
LATENT_SHAPE = (384, 512)
FEATURE_SHAPE = (64, 96, 32)

ENCODER_PARAMS = 95_840
DECODER_PARAMS = 29_475


@dataclass(frozen=True)
class ModelConfig:
    input_shape: tuple = INPUT_SHAPE
    encoder_maps: tuple = (128, 64, 32)
    decoder_maps: tuple = (32, 64, 3)
    kernel: int = 3
    l2: float = 1e-6

    def __post_init__(self):
        h, w, c = self.input_shape
        if c != 3 or h % 8 or w % 8:
            raise ConfigError(f"input shape {self.input_shape} not supported")
        if self.encoder_maps[-1] != self.decoder_maps[0]:
            raise ConfigError("latent feature maps must match across the bottleneck")
        if self.decoder_maps[-1] != c:
            raise ConfigError("decoder must emit the input channel count")
        # the latent must reshape into a 2-D grayscale image of 2:3 halves
        latent = (h // 8) * (w // 8) * self.encoder_maps[-1]
        if latent != LATENT_SHAPE[0] * LATENT_SHAPE[1]:
            raise ConfigError(
                f"latent length {latent} does not reshape to {LATENT_SHAPE}"
            )


@dataclass(frozen=True)
class TrainConfig:
    optimizer: str = "adamax"
    learning_rate: float = 1e-4
    epochs: int = 600
    train_fraction: float = 0.6
    seed: int = 0
    crop: tuple | None = None  # optional (h, w) random-crop training

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ConfigError("train fraction must be in (0, 1)")
        if self.epochs < 1:
            raise ConfigError("epochs must be at least 1")


def build_model(cfg: ModelConfig = ModelConfig(), seed: int = 0):
    """Build (autoencoder, encoder, decoder) Keras models.

    The convolutional stack is size-agnostic; the flatten/reshape pair is
    applied outside the conv layers so the encoder can also run on crops
    during training.
    """
    import tensorflow as tf
    from tensorflow.keras import layers, regularizers

    tf.keras.utils.set_random_seed(seed)
    reg = dict(
        kernel_regularizer=regularizers.l2(cfg.l2),
        bias_regularizer=regularizers.l2(cfg.l2),
    )
    k = cfg.kernel
    m1, m2, m3 = cfg.encoder_maps
    d1, d2, d3 = cfg.decoder_maps

    inp = layers.Input(shape=(None, None, 3))
    x = layers.Conv2D(m1, k, padding="same", activation="relu", **reg)(inp)
    x = layers.MaxPooling2D(2)(x)
    x = layers.Conv2D(m2, k, padding="same", activation="relu", **reg)(x)
    x = layers.MaxPooling2D(2)(x)
    feat = layers.Conv2D(m3, k, strides=2, padding="same", activation="relu",
                         **reg)(x)
    encoder = tf.keras.Model(inp, feat, name="encoder")

    dec_inp = layers.Input(shape=(None, None, d1))
    y = layers.Conv2DTranspose(d1, k, strides=2, padding="same",
                               activation="relu", **reg)(dec_inp)
    y = layers.Conv2DTranspose(d2, k, strides=2, padding="same",
                               activation="relu", **reg)(y)
    out = layers.Conv2DTranspose(d3, k, strides=2, padding="same",
                                 activation="sigmoid", **reg)(y)
    decoder = tf.keras.Model(dec_inp, out, name="decoder")

    auto_inp = layers.Input(shape=(None, None, 3))
    auto = tf.keras.Model(auto_inp, decoder(encoder(auto_inp)), name="autoencoder")

    if encoder.count_params() != ENCODER_PARAMS:
        raise ConfigError(
            f"encoder has {encoder.count_params()} parameters, "
            f"expected {ENCODER_PARAMS}"
        )
    if decoder.count_params() != DECODER_PARAMS:
        raise ConfigError(
            f"decoder has {decoder.count_params()} parameters, "
            f"expected {DECODER_PARAMS}"
        )
    return auto, encoder, decoder
