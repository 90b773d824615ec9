"""Ensemble averaging, subset enumeration, and argmax decisions.

The mean is computed exactly: every float64 is a dyadic rational
(``float.as_integer_ratio``), so member entries are summed as integers over
a common power-of-two denominator and divided once, which Python rounds
correctly. Consequences the tests rely on: averaging is bitwise
permutation-invariant, a single-member mean is the identity, and the mean
of m copies of a matrix is that matrix, for any m.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .core import (
    EnsembleSpec,
    LabelVector,
    ProbabilityMatrix,
    normalize_row,
)
from .errors import (
    AlignmentError,
    DuplicateId,
    EmptyEnsemble,
    RangeExceedsPool,
)
from .ingest import ModelPredictionSet


def exact_mean(values: Sequence[float]) -> float:
    """Arithmetic mean with one final rounding.

    Accumulates numerators over the largest power-of-two denominator seen,
    then performs a single exact-integer division; both rescaling steps are
    exact because float64 denominators are powers of two.
    """
    num, den = 0, 1
    for v in values:
        n, d = float(v).as_integer_ratio()
        if d > den:
            num *= d // den
            den = d
        num += n * (den // d)
    return num / (den * len(values))


def average(members: Sequence[ProbabilityMatrix]) -> ProbabilityMatrix:
    """Uniform mean of aligned probability matrices, rows canonicalized."""
    if not members:
        raise EmptyEnsemble("cannot average an empty member list")
    first = members[0]
    for m in members[1:]:
        if m.catalog != first.catalog:
            raise AlignmentError("member catalogs differ")
        if m.ids != first.ids:
            raise AlignmentError("member sample ids differ")
    n, k = first.rows.shape
    columns = [m.rows for m in members]
    out = np.empty((n, k), dtype=np.float64)
    for i in range(n):
        row = np.array([exact_mean([rows[i, c] for rows in columns])
                        for c in range(k)])
        out[i] = normalize_row(row, row_id=first.ids[i])
    return ProbabilityMatrix(ids=first.ids, rows=out, catalog=first.catalog)


def argmax_predict(matrix: ProbabilityMatrix) -> LabelVector:
    """Per-row argmax; ties resolve to the lowest class index."""
    winners = np.argmax(matrix.rows, axis=1)
    return LabelVector.from_pairs(matrix.ids, (int(w) for w in winners),
                                  matrix.catalog)


@dataclass(frozen=True)
class SubsetRange:
    """Closed ensemble-size range for a sweep."""

    min_size: int
    max_size: int

    def __post_init__(self):
        if self.min_size < 1:
            raise ValueError("min_size must be >= 1")
        if self.max_size < self.min_size:
            raise ValueError("max_size must be >= min_size")


def enumerate_subsets(pool: Sequence[str],
                      size_range: SubsetRange) -> list[EnsembleSpec]:
    """All member subsets in the size range, ordered by size then
    lexicographically by sorted member ids."""
    ids = list(pool)
    if len(set(ids)) != len(ids):
        raise DuplicateId("pool contains duplicate model ids")
    if size_range.max_size > len(ids):
        raise RangeExceedsPool(f"max_size {size_range.max_size} exceeds pool "
                               f"of {len(ids)} models")
    ordered = sorted(ids)
    specs = []
    for size in range(size_range.min_size, size_range.max_size + 1):
        for combo in combinations(ordered, size):
            specs.append(EnsembleSpec(member_ids=frozenset(combo)))
    return specs


def evaluate_ensemble(spec: EnsembleSpec, pset: ModelPredictionSet,
                      ) -> tuple[ProbabilityMatrix, LabelVector]:
    """Average the named members (gathered in sorted-id order) and take
    the argmax predictions."""
    members = [pset.matrix_for(mid) for mid in spec.sorted_members]
    averaged = average(members)
    return averaged, argmax_predict(averaged)
