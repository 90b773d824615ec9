"""Shared domain types: class catalog, probability matrices, labels,
confusion matrices, per-class statistics, and the ten-metric report.

All types are immutable values after construction and safe to share across
threads. Probability rows are canonicalized on construction: each stored row
sums to exactly 1.0 under exact (fsum) summation, so downstream arithmetic
never re-normalizes silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainViolation, DuplicateId, RowSumViolation, UnknownClassName

ROW_SUM_TOLERANCE = 1e-6
ENTRY_SLACK = 1e-9

DEFAULT_CLASS_NAMES = (
    "Mild_Demented",
    "Moderate_Demented",
    "Non_Demented",
    "Very_Mild_Demented",
)


@dataclass(frozen=True)
class ClassCatalog:
    """Ordered set of class display names; k is the class count."""

    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(names) < 2:
            raise ValueError("catalog needs at least 2 classes")
        if len(set(names)) != len(names):
            raise ValueError("catalog class names must be unique")
        if any(not n for n in names):
            raise ValueError("catalog class names must be non-empty")

    @property
    def k(self) -> int:
        return len(self.names)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownClassName(f"unknown class {name!r}") from None


def default_catalog() -> ClassCatalog:
    """The fixed 4-class dementia-severity catalog used by the shipped data."""
    return ClassCatalog(DEFAULT_CLASS_NAMES)


def _check_ids(ids: Sequence[str]) -> tuple[str, ...]:
    out = tuple(str(i) for i in ids)
    seen = set()
    for sid in out:
        if not sid:
            raise DuplicateId("empty sample id", row_id=sid)
        if sid in seen:
            raise DuplicateId("duplicate sample id", row_id=sid)
        seen.add(sid)
    return out


def normalize_row(row: np.ndarray, *, row_id: str | None = None) -> np.ndarray:
    """Validate and canonicalize one probability row.

    Entries must be finite and inside [-ENTRY_SLACK, 1 + ENTRY_SLACK]; they
    are clamped to [0, 1]. The row sum must be within ROW_SUM_TOLERANCE of
    1.0; the row is rescaled and the residual float error is folded into the
    largest entry so that math.fsum(row) == 1.0 exactly. Rows already in
    canonical form pass through bit-identical.
    """
    row = np.asarray(row, dtype=np.float64)
    if not np.all(np.isfinite(row)):
        raise DomainViolation("non-finite probability entry", row_id=row_id)
    if np.any(row < -ENTRY_SLACK) or np.any(row > 1.0 + ENTRY_SLACK):
        bad = row[(row < -ENTRY_SLACK) | (row > 1.0 + ENTRY_SLACK)][0]
        raise DomainViolation(f"probability {bad!r} outside [0, 1]", row_id=row_id)
    row = np.clip(row, 0.0, 1.0)
    s = math.fsum(row)
    if abs(s - 1.0) > ROW_SUM_TOLERANCE:
        raise RowSumViolation(f"row sums to {s!r}, expected 1.0 within "
                              f"{ROW_SUM_TOLERANCE}", row_id=row_id)
    if s != 1.0:
        row = row / s
    # Fold the remaining rounding residue into the largest entry. The
    # residue is a small multiple of 2**-53, so the subtraction is exact and
    # at most a couple of passes reach fsum(row) == 1.0.
    for _ in range(4):
        resid = math.fsum(row) - 1.0
        if resid == 0.0:
            return row
        row = row.copy()
        row[int(np.argmax(row))] -= resid
    raise RowSumViolation("row failed to canonicalize", row_id=row_id)


@dataclass(frozen=True, eq=False)
class ProbabilityMatrix:
    """N x k per-sample class-probability rows from one model or ensemble.

    Construct via :meth:`from_rows`, which validates and canonicalizes.
    """

    ids: tuple[str, ...]
    rows: np.ndarray
    catalog: ClassCatalog

    def __post_init__(self):
        object.__setattr__(self, "ids", tuple(self.ids))
        rows = np.asarray(self.rows, dtype=np.float64)
        object.__setattr__(self, "rows", rows)
        if rows.ndim != 2 or rows.shape != (len(self.ids), self.catalog.k):
            raise DomainViolation(
                f"matrix shape {rows.shape} does not match "
                f"{len(self.ids)} ids x {self.catalog.k} classes")
        if len(self.ids) < 1:
            raise DomainViolation("probability matrix needs at least one row")
        rows.setflags(write=False)

    @classmethod
    def from_rows(cls, ids: Sequence[str], rows, catalog: ClassCatalog,
                  ) -> "ProbabilityMatrix":
        ids = _check_ids(ids)
        arr = np.array(rows, dtype=np.float64)
        if arr.ndim != 2 or arr.shape != (len(ids), catalog.k):
            raise DomainViolation(
                f"expected {len(ids)} rows x {catalog.k} columns, "
                f"got shape {arr.shape}")
        out = np.empty_like(arr)
        for i in range(arr.shape[0]):
            out[i] = normalize_row(arr[i], row_id=ids[i])
        return cls(ids=ids, rows=out, catalog=catalog)

    @property
    def n(self) -> int:
        return len(self.ids)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProbabilityMatrix):
            return NotImplemented
        return (self.ids == other.ids and self.catalog == other.catalog
                and np.array_equal(self.rows, other.rows))

    __hash__ = None


@dataclass(frozen=True)
class LabelVector:
    """Ground-truth (or predicted) class indices aligned to sample ids."""

    ids: tuple[str, ...]
    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ids", _check_ids(self.ids))
        object.__setattr__(self, "labels", tuple(int(v) for v in self.labels))
        if len(self.labels) != len(self.ids):
            raise DomainViolation(
                f"{len(self.labels)} labels for {len(self.ids)} ids")
        if any(v < 0 for v in self.labels):
            raise UnknownClassName("negative class index")

    @classmethod
    def from_pairs(cls, ids: Sequence[str], labels: Iterable[int],
                   catalog: ClassCatalog) -> "LabelVector":
        vec = cls(ids=tuple(ids), labels=tuple(labels))
        bad = [v for v in vec.labels if v >= catalog.k]
        if bad:
            raise UnknownClassName(f"class index {bad[0]} out of range "
                                   f"for k={catalog.k}")
        return vec

    @property
    def n(self) -> int:
        return len(self.ids)


@dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    """k x k integer counts; rows = actual class, columns = predicted class."""

    counts: np.ndarray
    catalog: ClassCatalog

    def __post_init__(self):
        counts = np.asarray(self.counts)
        if not np.issubdtype(counts.dtype, np.integer):
            raise DomainViolation("confusion counts must be integers")
        counts = counts.astype(np.int64)
        k = self.catalog.k
        if counts.shape != (k, k):
            raise DomainViolation(f"confusion shape {counts.shape}, expected "
                                  f"({k}, {k})")
        if np.any(counts < 0):
            raise DomainViolation("negative confusion count")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def k(self) -> int:
        return self.catalog.k

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def trace(self) -> int:
        return int(np.trace(self.counts))

    def row_sums(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.counts.sum(axis=1))

    def col_sums(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.counts.sum(axis=0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConfusionMatrix):
            return NotImplemented
        return (self.catalog == other.catalog
                and np.array_equal(self.counts, other.counts))

    __hash__ = None


@dataclass(frozen=True)
class ClassStats:
    """Confusion tallies and rates for one class.

    precision/recall fall back to 0.0 when their denominator is zero; the
    corresponding *_undefined flag records that this happened.
    """

    name: str
    tp: int
    fp: int
    fn: int
    support: int
    precision: float
    recall: float
    f1: float
    precision_undefined: bool = False
    recall_undefined: bool = False


class F1Mode(str, Enum):
    """How the aggregate (weighted/macro) F1 scores are combined.

    DEFINITION aggregates per-class F1 scores directly. PAPER_REPLICATION
    takes the harmonic mean of the corresponding aggregate precision and
    recall instead, which is what the shipped reference table contains.
    Micro F1 is identical in both modes.
    """

    DEFINITION = "definition"
    PAPER_REPLICATION = "paper_replication"


METRIC_NAMES = (
    "weighted_accuracy",
    "weighted_precision",
    "macro_precision",
    "micro_precision",
    "weighted_recall",
    "macro_recall",
    "micro_recall",
    "weighted_f1",
    "macro_f1",
    "micro_f1",
)


@dataclass(frozen=True)
class MetricsReport:
    """The ten scalar metrics plus per-class statistics."""

    weighted_accuracy: float
    weighted_precision: float
    macro_precision: float
    micro_precision: float
    weighted_recall: float
    macro_recall: float
    micro_recall: float
    weighted_f1: float
    macro_f1: float
    micro_f1: float
    f1_mode: F1Mode
    per_class: tuple[ClassStats, ...]

    def values(self) -> tuple[float, ...]:
        """The ten metrics in reference-table column order."""
        return tuple(getattr(self, name) for name in METRIC_NAMES)


@dataclass(frozen=True)
class EnsembleSpec:
    """An order-insensitive subset of registered model ids to be averaged."""

    member_ids: frozenset[str]

    def __post_init__(self):
        members = frozenset(str(m) for m in self.member_ids)
        if not members:
            raise ValueError("ensemble member set must be non-empty")
        if any(not m for m in members):
            raise ValueError("ensemble member ids must be non-empty")
        object.__setattr__(self, "member_ids", members)

    @property
    def sorted_members(self) -> tuple[str, ...]:
        return tuple(sorted(self.member_ids))

    @property
    def display_name(self) -> str:
        return "+".join(self.sorted_members)

    @property
    def size(self) -> int:
        return len(self.member_ids)
