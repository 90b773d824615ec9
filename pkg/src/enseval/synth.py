"""Synthetic data realizing a target confusion matrix, plus the independent
brute-force metric oracle used by the test suite.

Reproducibility contract: the sample shuffle is Fisher-Yates driven by
SplitMix64 (Steele, Lea & Flood 2014), a tiny generator with a published
reference that is easy to reimplement bit-for-bit in any language. Bounded
draws use plain rejection sampling on the high 64-bit output. Same
(matrix, seed, sharpness) therefore means bit-identical samples everywhere.
"""

from __future__ import annotations

from math import fsum

import numpy as np

from .core import (
    ClassCatalog,
    ClassStats,
    ConfusionMatrix,
    F1Mode,
    LabelVector,
    MetricsReport,
    ProbabilityMatrix,
)
from .errors import EmptyMatrix, IdMismatch, InvalidSharpness, ShapeMismatch

_MASK64 = (1 << 64) - 1
DEFAULT_SHARPNESS = 0.9


class SplitMix64:
    """SplitMix64 PRNG: state += 0x9E3779B97F4A7C15, then finalize with
    xor-shift/multiply steps. All arithmetic is modulo 2**64."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) via rejection sampling (no modulo
        bias)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = _MASK64 + 1 - ((_MASK64 + 1) % bound)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % bound


def fisher_yates(items: list, rng: SplitMix64) -> None:
    """In-place Fisher-Yates shuffle, iterating from the last index down."""
    for i in range(len(items) - 1, 0, -1):
        j = rng.below(i + 1)
        items[i], items[j] = items[j], items[i]


def _check_sharpness(sharpness: float, k: int) -> None:
    if not (0.0 < sharpness <= 1.0):
        raise InvalidSharpness(f"sharpness {sharpness!r} outside (0, 1]")
    # The target entry gets sharpness + (1-sharpness)/k, every other entry
    # (1-sharpness)/k. Require the extra mass to strictly exceed one residue
    # share, i.e. sharpness > 1/(k+1), so the argmax stays unambiguous.
    if sharpness * (k + 1) <= 1.0:
        raise InvalidSharpness(
            f"sharpness {sharpness!r} cannot dominate the uniform residue "
            f"for k={k}; need sharpness > 1/(k+1)")


def _peaked_row(k: int, target: int, sharpness: float) -> list[float]:
    residue = (1.0 - sharpness) / k
    row = [residue] * k
    row[target] = sharpness + residue
    return row


def sample_id(seed: int, index: int) -> str:
    """Deterministic sample id for the given seed and final sample position."""
    return f"synth-{seed}-{index:06d}"


def generate_from_confusion(cm: ConfusionMatrix, seed: int,
                            sharpness: float = DEFAULT_SHARPNESS,
                            ) -> tuple[ProbabilityMatrix, LabelVector]:
    """Emit one sample per confusion count, shuffled deterministically.

    A cell (a, p) contributes cm[a][p] samples with true label a and a
    probability row peaked at column p, so argmax prediction reproduces cm
    exactly. Sample order is the seeded shuffle of the (a, p, repeat) cell
    enumeration; ids encode (seed, final position).
    """
    k = cm.k
    _check_sharpness(sharpness, k)
    if cm.total < 1:
        raise EmptyMatrix("cannot generate samples from an all-zero matrix")
    pairs: list[tuple[int, int]] = []
    for a in range(k):
        for p in range(k):
            pairs.extend([(a, p)] * int(cm.counts[a, p]))
    fisher_yates(pairs, SplitMix64(seed))
    ids = [sample_id(seed, i) for i in range(len(pairs))]
    labels = [a for a, _ in pairs]
    rows = [_peaked_row(k, p, sharpness) for _, p in pairs]
    probs = ProbabilityMatrix.from_rows(ids, rows, cm.catalog)
    truth = LabelVector.from_pairs(ids, labels, cm.catalog)
    return probs, truth


def realize_from_confusion(cm: ConfusionMatrix, truth: LabelVector,
                           sharpness: float = DEFAULT_SHARPNESS,
                           ) -> ProbabilityMatrix:
    """Probability rows over an existing label file that reproduce cm.

    For each class a, that class's samples (in file order) receive peaked
    rows whose targets run through the predicted columns in order, with
    cell multiplicities. The per-class sample counts must equal cm's row
    sums. Useful for building several prediction files that share one label
    file while realizing different confusion matrices.
    """
    k = cm.k
    _check_sharpness(sharpness, k)
    counts = [0] * k
    for v in truth.labels:
        if v >= k:
            raise ShapeMismatch(f"label index {v} out of range for k={k}")
        counts[v] += 1
    if tuple(counts) != cm.row_sums():
        raise ShapeMismatch(
            f"label class counts {tuple(counts)} do not match matrix row "
            f"sums {cm.row_sums()}")
    queues = {a: [p for p in range(k)
                  for _ in range(int(cm.counts[a, p]))] for a in range(k)}
    taken = [0] * k
    rows = []
    for a in truth.labels:
        p = queues[a][taken[a]]
        taken[a] += 1
        rows.append(_peaked_row(k, p, sharpness))
    return ProbabilityMatrix.from_rows(truth.ids, rows, cm.catalog)


def brute_force_metrics(pred: LabelVector, truth: LabelVector,
                        catalog: ClassCatalog,
                        mode: F1Mode = F1Mode.DEFINITION) -> MetricsReport:
    """Independent oracle: every metric by direct per-sample counting.

    Never builds a confusion matrix; each class's tp/fp/fn come from a full
    scan of the sample list, and the aggregates are assembled from scratch.
    Exists solely to cross-check the main metric engine.
    """
    if pred.ids != truth.ids:
        raise IdMismatch("prediction ids do not match truth ids")
    n = truth.n
    if n == 0:
        raise EmptyMatrix("no samples")

    def h(p: float, r: float) -> float:
        return 0.0 if p + r == 0.0 else 2.0 * p * r / (p + r)

    per_class = []
    for c, name in enumerate(catalog.names):
        tp = fp = fn = 0
        for a, p in zip(truth.labels, pred.labels):
            if p == c and a == c:
                tp += 1
            elif p == c:
                fp += 1
            elif a == c:
                fn += 1
        support = tp + fn
        prec = tp / (tp + fp) if tp + fp else 0.0
        rec = tp / support if support else 0.0
        per_class.append(ClassStats(
            name=name, tp=tp, fp=fp, fn=fn, support=support,
            precision=prec, recall=rec, f1=h(prec, rec),
            precision_undefined=(tp + fp == 0),
            recall_undefined=(support == 0)))

    k = catalog.k
    acc = sum(1 for a, p in zip(truth.labels, pred.labels) if a == p) / n
    wp = fsum(s.precision * s.support for s in per_class) / n
    wr = fsum(s.recall * s.support for s in per_class) / n
    mp = fsum(s.precision for s in per_class) / k
    mr = fsum(s.recall for s in per_class) / k
    tp_all = sum(s.tp for s in per_class)
    mip = tp_all / (tp_all + sum(s.fp for s in per_class))
    mir = tp_all / (tp_all + sum(s.fn for s in per_class))
    mif = h(mip, mir)
    if mode is F1Mode.DEFINITION:
        wf = fsum(s.f1 * s.support for s in per_class) / n
        maf = fsum(s.f1 for s in per_class) / k
    else:
        wf = h(wp, wr)
        maf = h(mp, mr)
    return MetricsReport(
        weighted_accuracy=acc,
        weighted_precision=wp, macro_precision=mp, micro_precision=mip,
        weighted_recall=wr, macro_recall=mr, micro_recall=mir,
        weighted_f1=wf, macro_f1=maf, micro_f1=mif,
        f1_mode=mode, per_class=tuple(per_class))
