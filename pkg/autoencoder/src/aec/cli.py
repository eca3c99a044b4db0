"""Command-line entry point: train, compress, reconstruct.

Exit codes: 0 success, 1 on any validation or I/O error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .errors import AecError


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aec", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    tr = sub.add_parser("train", help="train on a directory of colour images")
    tr.add_argument("--data", required=True)
    tr.add_argument("--out", required=True, help="weights file (.weights.h5)")
    tr.add_argument("--epochs", type=int, default=600)
    tr.add_argument("--lr", type=float, default=1e-4)
    tr.add_argument("--optimizer", default="adamax")
    tr.add_argument("--seed", type=int, default=0)
    tr.add_argument("--batch", type=int, default=2)
    tr.add_argument("--crop", type=int, nargs=2, metavar=("H", "W"),
                    help="train on random HxW crops instead of full images")
    tr.add_argument("--log-every", type=int, default=10)

    co = sub.add_parser("compress", help="colour image -> latent PGM + sidecar")
    co.add_argument("--weights", required=True)
    co.add_argument("--in", dest="infile", required=True)
    co.add_argument("--out", required=True, help="latent PGM path")
    co.add_argument("--sidecar", required=True)

    re = sub.add_parser("reconstruct", help="latent PGM + sidecar -> colour image")
    re.add_argument("--weights", required=True)
    re.add_argument("--in", dest="infile", required=True, help="latent PGM path")
    re.add_argument("--sidecar", required=True)
    re.add_argument("--out", required=True, help="output PNG path")

    return parser


def _load_models(weights_path):
    from .model import build_model

    auto, encoder, decoder = build_model()
    auto.load_weights(weights_path)
    return auto, encoder, decoder


def _cmd_train(args) -> int:
    from .model import TrainConfig, build_model
    from .train import load_dataset, split_dataset, train, validation_psnr

    cfg = TrainConfig(
        optimizer=args.optimizer,
        learning_rate=args.lr,
        epochs=args.epochs,
        seed=args.seed,
        crop=tuple(args.crop) if args.crop else None,
    )
    auto, encoder, decoder = build_model(seed=args.seed)
    history = train(auto, args.data, cfg, weights_out=args.out,
                    batch_size=args.batch, log_every=args.log_every)
    _, val_imgs = split_dataset(load_dataset(args.data), cfg)
    scores = validation_psnr(encoder, decoder, val_imgs)
    print(f"final val_loss {history['val_loss'][-1]:.6f}; "
          f"validation PSNR mean {np.mean(scores):.2f} dB "
          f"(min {min(scores):.2f}, max {max(scores):.2f})")
    return 0


def _cmd_compress(args) -> int:
    from PIL import Image

    from .codec import compress, write_pgm, write_sidecar

    _, encoder, _ = _load_models(args.weights)
    img = np.asarray(Image.open(args.infile).convert("RGB"))
    latent, sc = compress(encoder, img)
    write_pgm(latent, args.out)
    write_sidecar(sc, args.sidecar)
    return 0


def _cmd_reconstruct(args) -> int:
    from PIL import Image

    from .codec import read_pgm, read_sidecar, reconstruct

    _, _, decoder = _load_models(args.weights)
    latent = read_pgm(args.infile)
    sc = read_sidecar(args.sidecar)
    out = reconstruct(decoder, latent, sc)
    Image.fromarray(out).save(args.out)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "train": _cmd_train,
        "compress": _cmd_compress,
        "reconstruct": _cmd_reconstruct,
    }
    try:
        return handlers[args.command](args)
    except (AecError, OSError) as exc:
        print(f"aec: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
