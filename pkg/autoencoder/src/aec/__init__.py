"""Convolutional autoencoder companion to the cdnacrypt cipher.

Compresses a 512x768x3 colour image into a 384x512 grayscale latent
(ratio 6:1) suitable for encryption, and reconstructs the colour image
from the decrypted latent.  All exchange with the cipher happens through
files: binary PGM latents and CDNA-SIDECAR metadata.
"""

from .codec import Sidecar, compress, psnr, read_pgm, read_sidecar, reconstruct, write_pgm, write_sidecar
from .errors import AecError, ConfigError, DataError, FormatError, ShapeError
from .model import DECODER_PARAMS, ENCODER_PARAMS, ModelConfig, TrainConfig, build_model
from .train import load_dataset, split_dataset, train, validation_psnr

__version__ = "0.1.0"
