"""Command-line entry point.

Subcommands: encrypt, decrypt, analyze, keygen, sbox dump.
Exit codes: 0 success, 1 validation/usage error, 2 crypto mismatch.
"""

from __future__ import annotations

import argparse
import csv
import secrets
import sys
from pathlib import Path

from . import fileio, metrics, pipeline
from .errors import CdnaError, ChecksumMismatch
from .keyschedule import (
    KeyOrigin,
    MasterKey,
    derive_key,
    read_key_file,
    write_key_file,
)
from .sbox import standard_sboxes


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; the CLI contract
    # reserves 2 for crypto mismatches, so remap to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cdnacrypt", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    enc = sub.add_parser("encrypt", help="encrypt a PGM image")
    enc.add_argument("--in", dest="infile", required=True)
    key_src = enc.add_mutually_exclusive_group(required=True)
    key_src.add_argument("--key", help="key file produced by keygen")
    key_src.add_argument(
        "--key-from-image",
        action="store_true",
        help="derive the key from the plaintext image (SHA-256)",
    )
    enc.add_argument("--out", required=True)
    enc.add_argument("--sidecar", help="latent sidecar to validate against")

    dec = sub.add_parser("decrypt", help="decrypt a cipher envelope")
    dec.add_argument("--in", dest="infile", required=True)
    dec.add_argument("--key", required=True)
    dec.add_argument("--out", required=True)

    ana = sub.add_parser("analyze", help="security metrics for an image pair")
    ana.add_argument("--plain", required=True)
    ana.add_argument("--cipher", required=True)
    ana.add_argument("--out", required=True)
    ana.add_argument("--csv", help="directory for histogram/scatter CSV files")

    gen = sub.add_parser("keygen", help="create a key file")
    gen_src = gen.add_mutually_exclusive_group(required=True)
    gen_src.add_argument("--from-image", help="derive the key from a PGM image")
    gen_src.add_argument("--random", action="store_true")
    gen.add_argument("--out", required=True)

    box = sub.add_parser("sbox", help="S-box utilities")
    box_sub = box.add_subparsers(dest="sbox_command", required=True, parser_class=_Parser)
    box_sub.add_parser("dump", help="print the three S-box tables as hex")

    return parser


def _load_key(path) -> MasterKey:
    return read_key_file(path)


def _cmd_encrypt(args) -> int:
    img = fileio.read_pgm(args.infile)
    if args.sidecar:
        sc = fileio.read_sidecar(args.sidecar)
        if (sc.latent_height, sc.latent_width) != img.shape:
            raise CdnaError(
                f"sidecar latent shape {(sc.latent_height, sc.latent_width)} "
                f"does not match image {img.shape}"
            )
    key = derive_key(img) if args.key_from_image else _load_key(args.key)
    env = pipeline.encrypt(img, key)
    Path(args.out).write_bytes(env.to_bytes())
    return 0


def _cmd_decrypt(args) -> int:
    env = pipeline.CipherEnvelope.from_bytes(Path(args.infile).read_bytes())
    key = _load_key(args.key)
    img = pipeline.decrypt(env, key)
    fileio.write_pgm(img, args.out)
    return 0


def _cmd_analyze(args) -> int:
    plain = fileio.read_pgm(args.plain)
    env = pipeline.CipherEnvelope.from_bytes(Path(args.cipher).read_bytes())
    cipher = env.body

    plain_report = metrics.report(plain)
    cipher_report = metrics.report(cipher, other=plain)
    lines = ["[plain]"]
    lines += plain_report.lines()
    lines += ["", "[cipher]"]
    lines += cipher_report.lines()
    Path(args.out).write_text("\n".join(lines) + "\n", encoding="ascii")

    if args.csv:
        outdir = Path(args.csv)
        outdir.mkdir(parents=True, exist_ok=True)
        for label, rep in (("plain", plain_report), ("cipher", cipher_report)):
            with open(outdir / f"{label}_histogram.csv", "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["value", "count"])
                writer.writerows(enumerate(rep.histogram.tolist()))
        for direction in ("H", "V", "D"):
            for label, img in (("plain", plain), ("cipher", cipher)):
                x, y = metrics.correlation_pairs(img, direction)
                with open(
                    outdir / f"{label}_corr_{direction.lower()}.csv", "w", newline=""
                ) as fh:
                    writer = csv.writer(fh)
                    writer.writerow(["x", "y"])
                    writer.writerows(zip(x.astype(int).tolist(), y.astype(int).tolist()))
    return 0


def _cmd_keygen(args) -> int:
    if args.random:
        key = MasterKey(secrets.token_bytes(32), KeyOrigin.USER_SUPPLIED)
    else:
        key = derive_key(fileio.read_pgm(args.from_image))
    write_key_file(key, args.out)
    return 0


def _cmd_sbox_dump(_args) -> int:
    for k, box in enumerate(standard_sboxes()):
        print(f"sbox {k}: {bytes(box.table.tolist()).hex()}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "encrypt": _cmd_encrypt,
        "decrypt": _cmd_decrypt,
        "analyze": _cmd_analyze,
        "keygen": _cmd_keygen,
        "sbox": _cmd_sbox_dump,
    }
    try:
        return handlers[args.command](args)
    except ChecksumMismatch as exc:
        print(f"cdnacrypt: {exc}", file=sys.stderr)
        return 2
    except (CdnaError, OSError) as exc:
        print(f"cdnacrypt: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
