"""Dataset loading, the training loop, and validation PSNR.

The reference recipe is Adamax, learning rate 1e-4, MSE loss, 600 epochs,
60/40 train/validation split over a 24-image set.  Because the conv stack
is size-agnostic, ``TrainConfig.crop`` optionally trains on random crops
per epoch (cheaper on small machines); validation PSNR is always measured
on full images.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .codec import psnr
from .errors import DataError, ShapeError
from .model import INPUT_SHAPE, TrainConfig

_EXTENSIONS = (".png", ".ppm", ".bmp", ".tiff")


def load_dataset(data_dir) -> np.ndarray:
    """All colour images in a directory as one (N, 512, 768, 3) uint8 array."""
    from PIL import Image

    paths = sorted(
        p for p in Path(data_dir).iterdir() if p.suffix.lower() in _EXTENSIONS
    )
    if not paths:
        raise DataError(f"no images found in {data_dir}")
    images = []
    for path in paths:
        img = np.asarray(Image.open(path).convert("RGB"))
        if img.shape != INPUT_SHAPE:
            raise ShapeError(f"{path}: expected {INPUT_SHAPE}, got {img.shape}")
        images.append(img)
    return np.stack(images)


def split_dataset(images: np.ndarray, cfg: TrainConfig):
    """Deterministic shuffled train/validation split."""
    order = np.random.default_rng(cfg.seed).permutation(len(images))
    cut = max(1, int(round(len(images) * cfg.train_fraction)))
    cut = min(cut, len(images) - 1) if len(images) > 1 else 1
    return images[order[:cut]], images[order[cut:]]


def _crops(images: np.ndarray, size, rng) -> np.ndarray:
    ch, cw = size
    h, w = images.shape[1:3]
    out = np.empty((len(images), ch, cw, 3), dtype=images.dtype)
    for i, img in enumerate(images):
        top = int(rng.integers(0, h - ch + 1))
        left = int(rng.integers(0, w - cw + 1))
        out[i] = img[top : top + ch, left : left + cw]
    return out


def train(model, data_dir, cfg: TrainConfig = TrainConfig(), *,
          weights_out=None, batch_size: int = 2, log_every: int = 0):
    """Train ``model`` on the images in ``data_dir``; returns the history.

    History is a dict with per-epoch ``loss`` and ``val_loss`` lists.  The
    best-validation-loss weights are kept and optionally persisted to
    ``weights_out`` (a Keras ``.weights.h5`` path).
    """
    import tensorflow as tf

    images = load_dataset(data_dir)
    train_imgs, val_imgs = split_dataset(images, cfg)
    x_val = val_imgs.astype(np.float32) / 255.0

    model.compile(
        optimizer=tf.keras.optimizers.get(
            {"class_name": cfg.optimizer,
             "config": {"learning_rate": cfg.learning_rate}}
        ),
        loss="mse",
    )

    rng = np.random.default_rng(cfg.seed)
    history = {"loss": [], "val_loss": []}
    best = np.inf
    best_weights = None
    for epoch in range(cfg.epochs):
        batch_src = (
            _crops(train_imgs, cfg.crop, rng) if cfg.crop else train_imgs
        )
        x = batch_src.astype(np.float32) / 255.0
        x = x[rng.permutation(len(x))]
        losses = []
        for start in range(0, len(x), batch_size):
            chunk = x[start : start + batch_size]
            losses.append(float(model.train_on_batch(chunk, chunk)))
        val_loss = float(model.evaluate(x_val, x_val, batch_size=batch_size,
                                        verbose=0))
        history["loss"].append(float(np.mean(losses)))
        history["val_loss"].append(val_loss)
        if val_loss < best:
            best = val_loss
            best_weights = model.get_weights()
        if log_every and (epoch + 1) % log_every == 0:
            print(f"epoch {epoch + 1}/{cfg.epochs}  "
                  f"loss {history['loss'][-1]:.6f}  val_loss {val_loss:.6f}",
                  flush=True)

    if best_weights is not None:
        model.set_weights(best_weights)
    if weights_out is not None:
        model.save_weights(weights_out)
    return history


def validation_psnr(encoder, decoder, images: np.ndarray) -> list[float]:
    """Full-pipeline (compress -> reconstruct) PSNR per image in dB."""
    from .codec import compress, reconstruct

    out = []
    for img in images:
        latent, sc = compress(encoder, img)
        out.append(psnr(img, reconstruct(decoder, latent, sc)))
    return out
