"""Training/export harness producing prediction files for the evaluation
toolkit. It talks to that toolkit only through its file formats and CLI."""

from .config import (
    CLASS_NAMES,
    SUPPORTED_BACKBONES,
    TrainConfig,
    load_config,
)
from .data import SplitIndices, allocate_counts, list_images, split_dataset
from .errors import (
    BadConfig,
    IOFailure,
    MissingClassDirectory,
    TrainerError,
    UnknownBackbone,
)
from .export import (
    export_labels,
    export_manifest,
    export_predictions,
    sample_id,
)
from .model import BACKBONES, build_head, head_layers
from .train import (
    TrainResult,
    evaluate_accuracy,
    make_dataset,
    train_model,
)

__version__ = "0.1.0"

__all__ = [
    "BACKBONES",
    "BadConfig",
    "CLASS_NAMES",
    "IOFailure",
    "MissingClassDirectory",
    "SUPPORTED_BACKBONES",
    "SplitIndices",
    "TrainConfig",
    "TrainResult",
    "TrainerError",
    "UnknownBackbone",
    "allocate_counts",
    "build_head",
    "evaluate_accuracy",
    "export_labels",
    "export_manifest",
    "export_predictions",
    "head_layers",
    "list_images",
    "load_config",
    "make_dataset",
    "sample_id",
    "split_dataset",
    "train_model",
    "__version__",
]
