"""The ``embed`` command: dataset or local array in, 2-D point file out.

Exit codes follow the clustering toolkit's convention: 0 on success, 1
for usage problems, 2 for data problems (fetch failures, malformed
arrays, images the architecture cannot take).
"""

import argparse
import sys

from .cae import CaeConfig
from .datasets import DATASET_NAMES, load_array, load_images
from .embed import DEFAULT_PERPLEXITY, embed_images
from .errors import DataError, ShapeError


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="embed", description=__doc__.splitlines()[0])
    src = p.add_mutually_exclusive_group()
    src.add_argument("--dataset", choices=DATASET_NAMES, help="named image dataset")
    src.add_argument("--input", help="local .npy/.npz image array")
    p.add_argument("--da", action="store_true", help="train with shift/rotate augmentation")
    p.add_argument("--epochs", type=int, default=10)
    p.add_argument("--batch-size", type=int, default=256)
    p.add_argument("--noise", type=float, default=0.2, help="denoising corruption level")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--perplexity", type=float, default=DEFAULT_PERPLEXITY)
    p.add_argument("--limit", type=int, default=None, help="use only the first N images")
    p.add_argument("--root", default=None, help="dataset cache directory")
    p.add_argument("--format", choices=("csv", "binary"), default="csv")
    p.add_argument("--out", required=True, help="embedding point file to write")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"embed: error: {exc}", file=sys.stderr)
        return 1
    try:
        if (args.dataset is None) == (args.input is None):
            raise UsageError("exactly one of --dataset or --input is required")
        config = CaeConfig(
            epochs=args.epochs,
            batch_size=args.batch_size,
            noise=args.noise,
            use_da=args.da,
            seed=args.seed,
        )
    except (UsageError, ValueError) as exc:
        print(f"embed: error: {exc}", file=sys.stderr)
        return 1

    try:
        if args.dataset is not None:
            images, labels = load_images(args.dataset, root=args.root, limit=args.limit)
        else:
            images, labels = load_array(args.input, limit=args.limit)
        print(
            f"training on {images.shape[0]} images {images.shape[1]}x{images.shape[2]} "
            f"epochs={config.epochs} batch_size={config.batch_size} noise={config.noise} "
            f"use_da={config.use_da} optimizer={config.optimizer} lr={config.lr} "
            f"seed={config.seed}"
        )
        summary = embed_images(
            images,
            labels,
            config=config,
            out_path=args.out,
            format=args.format,
            perplexity=args.perplexity,
        )
    except ValueError as exc:
        print(f"embed: error: {exc}", file=sys.stderr)
        return 1
    except (DataError, ShapeError, OSError) as exc:
        print(f"embed: {exc}", file=sys.stderr)
        return 2

    print(
        f"embedded n={summary.n} loss_first={summary.first_loss:.6f} "
        f"loss_last={summary.last_loss:.6f} out={summary.out_path}"
    )
    return 0


def run() -> None:
    sys.exit(main())
