"""Writers for the evaluation toolkit's prediction/label/manifest formats."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .config import CLASS_NAMES, TrainConfig
from .errors import IOFailure
from .train import make_dataset

FLOAT_FORMAT = "%.9g"


def sample_id(root: Path, path: Path) -> str:
    """Stable unique id: the image path relative to the dataset root."""
    rel = path.relative_to(root).as_posix()
    if "," in rel or "\n" in rel or "\r" in rel:
        raise IOFailure(f"image path {rel!r} cannot be used as a sample id "
                        "(contains a delimiter)")
    return rel


def export_predictions(model, config: TrainConfig, files, indices,
                       out_path: str | Path) -> Path:
    """One softmax row per sample, renormalized in float64 so every row
    passes the toolkit's canonical-row validation."""
    ds = make_dataset(config, files, indices, training=False)
    probs = np.asarray(model.predict(ds, verbose=0), dtype=np.float64)
    root = Path(config.dataset_root)
    lines = ["id," + ",".join(CLASS_NAMES)]
    for i, row in zip(indices, probs):
        row = row / math.fsum(row)
        cells = ",".join(FLOAT_FORMAT % v for v in row)
        lines.append(f"{sample_id(root, files[i][1])},{cells}")
    return _write(out_path, lines)


def export_labels(config: TrainConfig, files, indices,
                  out_path: str | Path) -> Path:
    root = Path(config.dataset_root)
    lines = ["id,label"]
    for i in indices:
        cls, path = files[i]
        lines.append(f"{sample_id(root, path)},{CLASS_NAMES[cls]}")
    return _write(out_path, lines)


def export_manifest(out_dir: str | Path, labels_name: str,
                    model_files: dict[str, str]) -> Path:
    lines = [f"labels={labels_name}"]
    lines += [f"{mid}={fname}" for mid, fname in sorted(model_files.items())]
    return _write(Path(out_dir) / "manifest.txt", lines)


def _write(out_path: str | Path, lines: list[str]) -> Path:
    out_path = Path(out_path)
    try:
        out_path.parent.mkdir(parents=True, exist_ok=True)
        out_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as exc:
        raise IOFailure(f"cannot write {out_path}: {exc}") from exc
    return out_path
