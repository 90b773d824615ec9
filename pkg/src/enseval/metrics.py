"""Confusion-matrix construction and the ten-metric evaluation family.

Every aggregate comes in three flavours: weighted (by actual-class support),
macro (unweighted mean over classes), and micro (pooled counts). F1 has two
aggregation modes, see :class:`~enseval.core.F1Mode`.

Conventions, fixed for the whole package:

* confusion rows are the actual class, columns the predicted class;
* a rate whose denominator is zero evaluates to 0.0 and the per-class
  record flags it as undefined;
* weighted and macro sums use exact (fsum) accumulation.
"""

from __future__ import annotations

from math import fsum
from typing import Sequence

import numpy as np

from .core import (
    ClassCatalog,
    ClassStats,
    ConfusionMatrix,
    F1Mode,
    LabelVector,
    MetricsReport,
)
from .errors import EmptyMatrix, IdMismatch, UnknownClassName


def harmonic_mean(p: float, r: float) -> float:
    """Harmonic mean of two rates; 0.0 when both inputs are 0."""
    if p + r == 0.0:
        return 0.0
    return 2.0 * p * r / (p + r)


def build_confusion(truth: LabelVector, predicted: Sequence[int],
                    catalog: ClassCatalog) -> ConfusionMatrix:
    """Tally actual x predicted counts.

    ``predicted`` may be a LabelVector (its ids must match ``truth`` exactly,
    in order) or a plain index sequence aligned positionally.
    """
    if isinstance(predicted, LabelVector):
        if predicted.ids != truth.ids:
            raise IdMismatch("prediction ids do not match truth ids")
        pred = predicted.labels
    else:
        pred = tuple(int(v) for v in predicted)
        if len(pred) != truth.n:
            raise IdMismatch(f"{len(pred)} predictions for {truth.n} samples")
    k = catalog.k
    counts = np.zeros((k, k), dtype=np.int64)
    for sid, a, p in zip(truth.ids, truth.labels, pred):
        if not (0 <= a < k):
            raise UnknownClassName(f"actual class index {a} out of range",
                                   row_id=sid)
        if not (0 <= p < k):
            raise UnknownClassName(f"predicted class index {p} out of range",
                                   row_id=sid)
        counts[a, p] += 1
    return ConfusionMatrix(counts=counts, catalog=catalog)


def per_class_stats(cm: ConfusionMatrix) -> tuple[ClassStats, ...]:
    """tp/fp/fn tallies and precision/recall/F1 per class."""
    counts = cm.counts
    stats = []
    for c, name in enumerate(cm.catalog.names):
        tp = int(counts[c, c])
        fp = int(counts[:, c].sum()) - tp
        fn = int(counts[c, :].sum()) - tp
        support = tp + fn
        p_undef = (tp + fp) == 0
        r_undef = support == 0
        precision = 0.0 if p_undef else tp / (tp + fp)
        recall = 0.0 if r_undef else tp / support
        stats.append(ClassStats(
            name=name, tp=tp, fp=fp, fn=fn, support=support,
            precision=precision, recall=recall,
            f1=harmonic_mean(precision, recall),
            precision_undefined=p_undef, recall_undefined=r_undef,
        ))
    return tuple(stats)


def _require_samples(cm: ConfusionMatrix) -> int:
    total = cm.total
    if total == 0:
        raise EmptyMatrix("confusion matrix has zero samples")
    return total


def weighted_accuracy(cm: ConfusionMatrix) -> float:
    """Fraction of samples on the diagonal."""
    return cm.trace / _require_samples(cm)


def precision_family(cm: ConfusionMatrix) -> tuple[float, float, float]:
    """(weighted, macro, micro) precision."""
    total = _require_samples(cm)
    stats = per_class_stats(cm)
    weighted = fsum(s.precision * s.support for s in stats) / total
    macro = fsum(s.precision for s in stats) / cm.k
    micro = cm.trace / total
    return weighted, macro, micro


def recall_family(cm: ConfusionMatrix) -> tuple[float, float, float]:
    """(weighted, macro, micro) recall."""
    total = _require_samples(cm)
    stats = per_class_stats(cm)
    weighted = fsum(s.recall * s.support for s in stats) / total
    macro = fsum(s.recall for s in stats) / cm.k
    micro = cm.trace / total
    return weighted, macro, micro


def f1_family(cm: ConfusionMatrix,
              mode: F1Mode = F1Mode.DEFINITION) -> tuple[float, float, float]:
    """(weighted, micro, macro) F1 under the given aggregation mode."""
    total = _require_samples(cm)
    stats = per_class_stats(cm)
    micro_rate = cm.trace / total
    micro = harmonic_mean(micro_rate, micro_rate)
    if mode is F1Mode.DEFINITION:
        weighted = fsum(s.f1 * s.support for s in stats) / total
        macro = fsum(s.f1 for s in stats) / cm.k
    else:
        wp, map_, mip = precision_family(cm)
        wr, mar, mir = recall_family(cm)
        weighted = harmonic_mean(wp, wr)
        macro = harmonic_mean(map_, mar)
    return weighted, micro, macro


def compute_report(cm: ConfusionMatrix,
                   f1_mode: F1Mode = F1Mode.DEFINITION) -> MetricsReport:
    """All ten metrics plus per-class statistics for one confusion matrix."""
    _require_samples(cm)
    wp, map_, mip = precision_family(cm)
    wr, mar, mir = recall_family(cm)
    wf, mif, maf = f1_family(cm, f1_mode)
    return MetricsReport(
        weighted_accuracy=weighted_accuracy(cm),
        weighted_precision=wp, macro_precision=map_, micro_precision=mip,
        weighted_recall=wr, macro_recall=mar, micro_recall=mir,
        weighted_f1=wf, macro_f1=maf, micro_f1=mif,
        f1_mode=f1_mode, per_class=per_class_stats(cm),
    )
