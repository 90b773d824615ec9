"""Run configuration: dataclass defaults plus JSON config-file loading."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from pathlib import Path

from .errors import BadConfig

CLASS_NAMES = ("Mild_Demented", "Moderate_Demented", "Non_Demented",
               "Very_Mild_Demented")

SUPPORTED_BACKBONES = ("ResNet50", "ResNet101", "ResNet152", "InceptionV3",
                       "EfficientNetB0")

SPLIT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class TrainConfig:
    dataset_root: Path = Path(".")
    split: tuple[float, float, float] = (0.8, 0.1, 0.1)
    image_side: int = 128
    rescale_factor: float = 1.0 / 255.0
    head_units: int = 512
    dropout_rate: float = 0.3
    backbones: tuple[str, ...] = SUPPORTED_BACKBONES
    seed: int = 0
    # Training knobs below are this harness's own defaults, not sourced
    # values; see README.
    epochs: int = 5
    batch_size: int = 32
    learning_rate: float = 1e-3
    augment: bool = True
    freeze_backbone: bool = False
    pretrained: bool = False
    # None keeps each backbone's own batch-norm momentum. Short runs need
    # a lower value so inference statistics can catch up to training.
    bn_momentum: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "dataset_root", Path(self.dataset_root))
        object.__setattr__(self, "split", tuple(self.split))
        object.__setattr__(self, "backbones", tuple(self.backbones))
        if len(self.split) != 3 or any(f <= 0.0 for f in self.split):
            raise BadConfig(f"split must be three positive fractions, "
                            f"got {self.split!r}")
        if abs(math.fsum(self.split) - 1.0) > SPLIT_TOLERANCE:
            raise BadConfig(f"split fractions must sum to 1.0, "
                            f"got {math.fsum(self.split)!r}")
        if self.image_side < 32:
            raise BadConfig(f"image_side must be >= 32, "
                            f"got {self.image_side}")
        if self.rescale_factor <= 0.0:
            raise BadConfig("rescale_factor must be positive")
        if self.head_units < 1:
            raise BadConfig("head_units must be >= 1")
        if not 0.0 <= self.dropout_rate < 1.0:
            raise BadConfig(f"dropout_rate must be in [0, 1), "
                            f"got {self.dropout_rate}")
        if not self.backbones:
            raise BadConfig("backbones must be non-empty")
        for name in self.backbones:
            if name not in SUPPORTED_BACKBONES:
                raise BadConfig(
                    f"unsupported backbone {name!r}; supported: "
                    f"{', '.join(SUPPORTED_BACKBONES)}")
        if self.epochs < 1 or self.batch_size < 1:
            raise BadConfig("epochs and batch_size must be >= 1")
        if self.learning_rate <= 0.0:
            raise BadConfig("learning_rate must be positive")
        if self.bn_momentum is not None and not 0.0 <= self.bn_momentum < 1.0:
            raise BadConfig(f"bn_momentum must be in [0, 1), "
                            f"got {self.bn_momentum}")


def load_config(path: str | Path, **overrides) -> TrainConfig:
    """Read a JSON object whose keys are TrainConfig field names."""
    try:
        raw = Path(path).read_text(encoding="utf-8")
        data = json.loads(raw)
    except OSError as exc:
        raise BadConfig(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise BadConfig(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise BadConfig(f"config {path} must hold a JSON object")
    known = {f.name for f in fields(TrainConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise BadConfig(f"unknown config keys: {', '.join(unknown)}")
    data.update(overrides)
    try:
        return TrainConfig(**data)
    except TypeError as exc:
        raise BadConfig(f"bad config value: {exc}") from exc
