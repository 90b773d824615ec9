"""Command-line entry point: train each configured backbone and export
prediction/label/manifest files consumable by the evaluation toolkit."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import TrainConfig, load_config
from .data import list_images, split_dataset
from .errors import TrainerError
from .export import export_labels, export_manifest, export_predictions
from .train import evaluate_accuracy, train_model


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trainex",
        description="Train transfer-learning classifiers and export "
                    "softmax prediction files.")
    parser.add_argument("--config", help="JSON file of TrainConfig fields")
    parser.add_argument("--out-dir", required=True)
    parser.add_argument("--dataset-root")
    parser.add_argument("--backbones", nargs="+")
    parser.add_argument("--epochs", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--image-side", type=int)
    parser.add_argument("--quiet", action="store_true")
    return parser


def _build_config(args: argparse.Namespace) -> TrainConfig:
    overrides = {}
    if args.dataset_root is not None:
        overrides["dataset_root"] = args.dataset_root
    if args.backbones is not None:
        overrides["backbones"] = tuple(args.backbones)
    if args.epochs is not None:
        overrides["epochs"] = args.epochs
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.image_side is not None:
        overrides["image_side"] = args.image_side
    if args.config:
        return load_config(args.config, **overrides)
    return TrainConfig(**overrides)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _build_config(args)
        out_dir = Path(args.out_dir)
        files = list_images(config.dataset_root)
        splits = split_dataset(config)
        print(f"dataset: {len(files)} images; split "
              f"{len(splits.train)}/{len(splits.val)}/{len(splits.test)}")
        model_files: dict[str, str] = {}
        verbose = 0 if args.quiet else 1
        for backbone in config.backbones:
            print(f"training {backbone} ({config.epochs} epochs)")
            result = train_model(config, backbone, files, splits,
                                 verbose=verbose)
            accuracy = evaluate_accuracy(result.model, config, files,
                                         splits.test)
            fname = f"{backbone.lower()}.predictions.csv"
            export_predictions(result.model, config, files, splits.test,
                               out_dir / fname)
            model_files[backbone.lower()] = fname
            print(f"{backbone}: test accuracy {accuracy:.4f} -> "
                  f"{out_dir / fname}")
        export_labels(config, files, splits.test, out_dir / "labels.csv")
        manifest = export_manifest(out_dir, "labels.csv", model_files)
        print(f"wrote {manifest}")
        return 0
    except TrainerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
