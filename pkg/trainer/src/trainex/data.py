"""Dataset discovery and the seeded stratified train/val/test split."""

from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path
from typing import NamedTuple

from .config import CLASS_NAMES, TrainConfig
from .errors import MissingClassDirectory

IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg", ".bmp", ".gif")


class SplitIndices(NamedTuple):
    train: tuple[int, ...]
    val: tuple[int, ...]
    test: tuple[int, ...]


def list_images(root: str | Path) -> tuple[tuple[int, Path], ...]:
    """All (class index, path) pairs, class-major, name-sorted per class."""
    root = Path(root)
    out: list[tuple[int, Path]] = []
    for idx, name in enumerate(CLASS_NAMES):
        class_dir = root / name
        if not class_dir.is_dir():
            raise MissingClassDirectory(f"missing class directory "
                                        f"{class_dir}")
        files = sorted(p for p in class_dir.iterdir()
                       if p.suffix.lower() in IMAGE_SUFFIXES)
        if not files:
            raise MissingClassDirectory(f"no images in {class_dir}")
        out.extend((idx, p) for p in files)
    return tuple(out)


def allocate_counts(n: int, split: tuple[float, float, float]
                    ) -> tuple[int, int, int]:
    """Largest-remainder allocation of n samples to the three splits.

    Each count stays within 1 of the exact fractional share; ties go to
    the earlier split. Fractions keep the arithmetic exact.
    """
    ideals = [Fraction(n) * Fraction(f) for f in split]
    base = [int(v) for v in ideals]
    leftovers = n - sum(base)
    order = sorted(range(3), key=lambda i: (base[i] - ideals[i], i))
    for i in order[:leftovers]:
        base[i] += 1
    return tuple(base)


def split_dataset(config: TrainConfig) -> SplitIndices:
    """Seeded stratified split; the three lists are disjoint and cover
    every discovered image."""
    files = list_images(config.dataset_root)
    rng = random.Random(config.seed)
    train: list[int] = []
    val: list[int] = []
    test: list[int] = []
    n_classes = len(CLASS_NAMES)
    for cls in range(n_classes):
        indices = [i for i, (c, _) in enumerate(files) if c == cls]
        rng.shuffle(indices)
        n_train, n_val, _ = allocate_counts(len(indices), config.split)
        train.extend(indices[:n_train])
        val.extend(indices[n_train:n_train + n_val])
        test.extend(indices[n_train + n_val:])
    return SplitIndices(tuple(train), tuple(val), tuple(test))
