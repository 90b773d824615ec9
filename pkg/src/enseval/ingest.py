"""Readers and writers for the three on-disk formats, plus alignment of
several models' predictions against one label file.

Formats (UTF-8 text, one record per line):

* predictions: header ``id,<class name 1>,...,<class name k>`` then one row
  per sample with decimal floats (written at 9 significant digits);
* labels: header ``id,label`` with the label as a class name or a zero-based
  index;
* confusion fixture: a ``model=<name>`` line, then k lines of k
  whitespace-separated integer counts (rows = actual class);
* manifest: ``model-id=path`` lines, ``#`` comments, plus the reserved
  ``labels=path`` entry; paths are resolved relative to the manifest file.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .core import ClassCatalog, ConfusionMatrix, LabelVector, ProbabilityMatrix
from .errors import (
    CatalogMismatch,
    DuplicateId,
    EmptyManifest,
    EvalError,
    IdMismatch,
    MalformedFile,
    NegativeCount,
    NonInteger,
    ShapeMismatch,
    UnknownClassName,
    UnknownModelId,
)

FLOAT_FORMAT = "%.9g"


def _read_lines(path) -> list[str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedFile(f"cannot read file: {exc}", path=str(path)) from exc
    return text.splitlines()


def load_predictions(path, catalog: ClassCatalog) -> ProbabilityMatrix:
    """Parse a prediction file; rows are validated and canonicalized."""
    lines = _read_lines(path)
    if not lines:
        raise MalformedFile("empty prediction file", path=str(path), line=1)
    expected_header = "id," + ",".join(catalog.names)
    if lines[0] != expected_header:
        raise MalformedFile(f"bad header {lines[0]!r}, expected "
                            f"{expected_header!r}", path=str(path), line=1)
    ids: list[str] = []
    rows: list[list[float]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split(",")
        if len(cells) != catalog.k + 1:
            raise MalformedFile(f"expected {catalog.k + 1} columns, got "
                                f"{len(cells)}", path=str(path), line=lineno)
        sid = cells[0]
        try:
            values = [float(c) for c in cells[1:]]
        except ValueError:
            raise MalformedFile("non-numeric probability cell",
                                path=str(path), line=lineno) from None
        ids.append(sid)
        rows.append(values)
    if not ids:
        raise MalformedFile("prediction file has no data rows",
                            path=str(path), line=1)
    try:
        return ProbabilityMatrix.from_rows(ids, rows, catalog)
    except EvalError as exc:
        exc.path = str(path)
        raise


def write_predictions(matrix: ProbabilityMatrix, path) -> None:
    """Write a prediction file; floats at 9 significant digits."""
    out = ["id," + ",".join(matrix.catalog.names)]
    for sid, row in zip(matrix.ids, matrix.rows):
        if "," in sid or "\n" in sid:
            raise MalformedFile("sample id contains a delimiter", row_id=sid)
        out.append(sid + "," + ",".join(FLOAT_FORMAT % v for v in row))
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8")


def load_labels(path, catalog: ClassCatalog) -> LabelVector:
    """Parse a label file; labels given by class name or zero-based index."""
    lines = _read_lines(path)
    if not lines or lines[0] != "id,label":
        got = lines[0] if lines else ""
        raise MalformedFile(f"bad header {got!r}, expected 'id,label'",
                            path=str(path), line=1)
    ids: list[str] = []
    labels: list[int] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split(",")
        if len(cells) != 2:
            raise MalformedFile(f"expected 2 columns, got {len(cells)}",
                                path=str(path), line=lineno)
        sid, token = cells
        if token in catalog.names:
            idx = catalog.index_of(token)
        else:
            try:
                idx = int(token)
            except ValueError:
                raise UnknownClassName(f"label {token!r} is neither a class "
                                       f"name nor an index", path=str(path),
                                       line=lineno, row_id=sid) from None
            if not (0 <= idx < catalog.k):
                raise UnknownClassName(f"label index {idx} out of range for "
                                       f"k={catalog.k}", path=str(path),
                                       line=lineno, row_id=sid)
        ids.append(sid)
        labels.append(idx)
    if not ids:
        raise MalformedFile("label file has no data rows", path=str(path),
                            line=1)
    try:
        return LabelVector.from_pairs(ids, labels, catalog)
    except DuplicateId as exc:
        exc.path = str(path)
        raise


def write_labels(labels: LabelVector, catalog: ClassCatalog, path) -> None:
    """Write a label file using class names."""
    out = ["id,label"]
    for sid, idx in zip(labels.ids, labels.labels):
        if "," in sid or "\n" in sid:
            raise MalformedFile("sample id contains a delimiter", row_id=sid)
        out.append(f"{sid},{catalog.names[idx]}")
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8")


class ConfusionFixture(NamedTuple):
    """A named k x k count grid as stored in a fixture file."""

    name: str
    matrix: ConfusionMatrix


def load_confusion_fixture(path, catalog: ClassCatalog) -> ConfusionFixture:
    """Parse a ``model=`` line plus a k x k integer grid (rows = actual)."""
    lines = [ln for ln in _read_lines(path) if ln.strip()]
    if not lines or not lines[0].startswith("model="):
        raise MalformedFile("first line must be 'model=<name>'",
                            path=str(path), line=1)
    name = lines[0][len("model="):].strip()
    if not name:
        raise MalformedFile("empty model name", path=str(path), line=1)
    k = catalog.k
    grid = lines[1:]
    if len(grid) != k:
        raise ShapeMismatch(f"expected {k} count rows, got {len(grid)}",
                            path=str(path))
    counts = np.zeros((k, k), dtype=np.int64)
    for r, line in enumerate(grid):
        tokens = line.split()
        if len(tokens) != k:
            raise ShapeMismatch(f"expected {k} counts per row, got "
                                f"{len(tokens)}", path=str(path), line=r + 2)
        for c, tok in enumerate(tokens):
            try:
                v = int(tok)
            except ValueError:
                raise NonInteger(f"count {tok!r} is not an integer",
                                 path=str(path), line=r + 2) from None
            if v < 0:
                raise NegativeCount(f"negative count {v}", path=str(path),
                                    line=r + 2)
            counts[r, c] = v
    return ConfusionFixture(name=name,
                            matrix=ConfusionMatrix(counts=counts,
                                                   catalog=catalog))


@dataclass(frozen=True, eq=False)
class ModelPredictionSet:
    """Several models' aligned predictions plus the shared ground truth.

    All matrices carry identical ids in identical order (equal to
    labels.ids) and one shared catalog. Build via :func:`align`.
    """

    entries: dict[str, ProbabilityMatrix]
    labels: LabelVector

    def __post_init__(self):
        if not self.entries:
            raise EmptyManifest("prediction set has no models")
        catalogs = {m.catalog for m in self.entries.values()}
        if len(catalogs) != 1:
            raise CatalogMismatch("models use different class catalogs")
        for mid, m in self.entries.items():
            if m.ids != self.labels.ids:
                raise IdMismatch(f"model {mid!r} ids not aligned to labels")

    @property
    def catalog(self) -> ClassCatalog:
        return next(iter(self.entries.values())).catalog

    @property
    def model_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.entries))

    def matrix_for(self, model_id: str) -> ProbabilityMatrix:
        try:
            return self.entries[model_id]
        except KeyError:
            raise UnknownModelId(f"no model {model_id!r}; have "
                                 f"{list(self.model_ids)}") from None


def align(predictions: Sequence[tuple[str, ProbabilityMatrix]],
          labels: LabelVector) -> ModelPredictionSet:
    """Verify id agreement and reorder each matrix to the label order.

    Ids must match as sets; matrices whose row order differs from the label
    file are permuted (bit-identical rows, new order).
    """
    if not predictions:
        raise EmptyManifest("no prediction matrices to align")
    seen: set[str] = set()
    label_ids = labels.ids
    label_set = set(label_ids)
    entries: dict[str, ProbabilityMatrix] = {}
    for mid, matrix in predictions:
        if mid in seen:
            raise DuplicateId(f"duplicate model id {mid!r}")
        seen.add(mid)
        matrix_set = set(matrix.ids)
        if matrix_set != label_set:
            missing = sorted(label_set - matrix_set)[:3]
            extra = sorted(matrix_set - label_set)[:3]
            raise IdMismatch(f"model {mid!r} id mismatch: missing "
                             f"{missing}, unexpected {extra}")
        if matrix.ids != label_ids:
            pos = {sid: i for i, sid in enumerate(matrix.ids)}
            order = [pos[sid] for sid in label_ids]
            matrix = ProbabilityMatrix(ids=label_ids,
                                       rows=matrix.rows[order],
                                       catalog=matrix.catalog)
        entries[mid] = matrix
    return ModelPredictionSet(entries=entries, labels=labels)


class ManifestSpec(NamedTuple):
    """Parsed manifest: optional label path plus (model-id, path) entries."""

    labels_path: Path | None
    models: tuple[tuple[str, Path], ...]


def parse_manifest(path) -> ManifestSpec:
    """Parse ``model-id=path`` lines; ``labels`` is a reserved key."""
    base = Path(path).parent
    labels_path: Path | None = None
    models: list[tuple[str, Path]] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(_read_lines(path), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise MalformedFile(f"expected 'model-id=path', got {line!r}",
                                path=str(path), line=lineno)
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not key or not value:
            raise MalformedFile("empty model id or path", path=str(path),
                                line=lineno)
        if key in seen:
            raise DuplicateId(f"duplicate manifest entry {key!r}",
                              path=str(path), line=lineno)
        seen.add(key)
        target = base / value
        if key == "labels":
            labels_path = target
        else:
            models.append((key, target))
    if not models:
        raise EmptyManifest("manifest lists no models", path=str(path))
    return ManifestSpec(labels_path=labels_path, models=tuple(models))


def load_model_set(manifest_path, catalog: ClassCatalog) -> ModelPredictionSet:
    """Load everything a manifest names and align it."""
    spec = parse_manifest(manifest_path)
    if spec.labels_path is None:
        raise MalformedFile("manifest has no labels= entry",
                            path=str(manifest_path))
    labels = load_labels(spec.labels_path, catalog)
    loaded = [(mid, load_predictions(p, catalog)) for mid, p in spec.models]
    return align(loaded, labels)
