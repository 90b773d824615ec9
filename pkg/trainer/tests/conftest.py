"""Shared fixtures: a synthetic image dataset and one reusable smoke run.

The dataset encodes the class in mean pixel intensity so a small model can
separate the four classes quickly on CPU.
"""

from pathlib import Path

import numpy as np
import pytest
from PIL import Image

import trainex as tx

IMAGES_PER_CLASS = 44
CLASS_INTENSITY = (30, 95, 160, 225)

SMOKE_CONFIG = dict(
    image_side=64,
    epochs=6,
    batch_size=16,
    seed=11,
    augment=False,
    bn_momentum=0.5,
    backbones=("ResNet50",),
)


@pytest.fixture(scope="session")
def dataset_root(tmp_path_factory) -> Path:
    root = tmp_path_factory.mktemp("dataset")
    rng = np.random.default_rng(5)
    for ci, name in enumerate(tx.CLASS_NAMES):
        class_dir = root / name
        class_dir.mkdir()
        for j in range(IMAGES_PER_CLASS):
            pixels = np.clip(
                CLASS_INTENSITY[ci] + rng.normal(0.0, 15.0, (32, 32, 3)),
                0, 255)
            Image.fromarray(pixels.astype(np.uint8)).save(
                class_dir / f"img_{j:03d}.png")
    return root


@pytest.fixture(scope="session")
def smoke_config(dataset_root) -> tx.TrainConfig:
    return tx.TrainConfig(dataset_root=dataset_root, **SMOKE_CONFIG)


@pytest.fixture(scope="session")
def smoke_run(smoke_config, tmp_path_factory):
    """One trained backbone plus its exported artifacts, reused by every
    test that needs a real model."""
    out_dir = tmp_path_factory.mktemp("export")
    files = tx.list_images(smoke_config.dataset_root)
    splits = tx.split_dataset(smoke_config)
    result = tx.train_model(smoke_config, "ResNet50", files, splits,
                            verbose=0)
    predictions = tx.export_predictions(
        result.model, smoke_config, files, splits.test,
        out_dir / "resnet50.predictions.csv")
    labels = tx.export_labels(smoke_config, files, splits.test,
                              out_dir / "labels.csv")
    manifest = tx.export_manifest(
        out_dir, "labels.csv", {"resnet50": "resnet50.predictions.csv"})
    return {
        "config": smoke_config,
        "files": files,
        "splits": splits,
        "model": result.model,
        "out_dir": out_dir,
        "predictions": predictions,
        "labels": labels,
        "manifest": manifest,
    }
