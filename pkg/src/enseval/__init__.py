"""Batch toolkit for evaluating classifier ensembles built by averaging
per-sample class probabilities, with a ten-metric report family
(weighted / macro / micro precision, recall, F1, plus weighted accuracy)
aimed at imbalanced multiclass problems.
"""

from .combine import (
    SubsetRange,
    argmax_predict,
    average,
    enumerate_subsets,
    evaluate_ensemble,
    exact_mean,
)
from .core import (
    ClassCatalog,
    ClassStats,
    ConfusionMatrix,
    EnsembleSpec,
    F1Mode,
    LabelVector,
    METRIC_NAMES,
    MetricsReport,
    ProbabilityMatrix,
    default_catalog,
    normalize_row,
)
from .errors import (
    AlignmentError,
    CatalogMismatch,
    DomainViolation,
    DuplicateId,
    EmptyEnsemble,
    EmptyFixtureDir,
    EmptyManifest,
    EmptyMatrix,
    EvalError,
    IdMismatch,
    InvalidSharpness,
    MalformedBaselines,
    MalformedFile,
    NegativeCount,
    NonInteger,
    RangeExceedsPool,
    RowSumViolation,
    ShapeMismatch,
    UnknownClassName,
    UnknownModelId,
)
from .ingest import (
    ConfusionFixture,
    ManifestSpec,
    ModelPredictionSet,
    align,
    load_confusion_fixture,
    load_labels,
    load_model_set,
    load_predictions,
    parse_manifest,
    write_labels,
    write_predictions,
)
from .metrics import (
    build_confusion,
    compute_report,
    f1_family,
    harmonic_mean,
    per_class_stats,
    precision_family,
    recall_family,
    weighted_accuracy,
)
from .report import (
    BaselineEntry,
    SweepResult,
    assemble_comparison,
    assemble_report,
    assemble_sweep,
    load_baselines,
    render_bar_chart,
    round_half_up,
)
from .synth import (
    SplitMix64,
    brute_force_metrics,
    generate_from_confusion,
    realize_from_confusion,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentError",
    "BaselineEntry",
    "CatalogMismatch",
    "ClassCatalog",
    "ClassStats",
    "ConfusionFixture",
    "ConfusionMatrix",
    "DomainViolation",
    "DuplicateId",
    "EmptyEnsemble",
    "EmptyFixtureDir",
    "EmptyManifest",
    "EmptyMatrix",
    "EnsembleSpec",
    "EvalError",
    "F1Mode",
    "IdMismatch",
    "InvalidSharpness",
    "LabelVector",
    "METRIC_NAMES",
    "MalformedBaselines",
    "MalformedFile",
    "ManifestSpec",
    "MetricsReport",
    "ModelPredictionSet",
    "NegativeCount",
    "NonInteger",
    "ProbabilityMatrix",
    "RangeExceedsPool",
    "RowSumViolation",
    "ShapeMismatch",
    "SplitMix64",
    "SubsetRange",
    "SweepResult",
    "UnknownClassName",
    "UnknownModelId",
    "align",
    "argmax_predict",
    "assemble_comparison",
    "assemble_report",
    "assemble_sweep",
    "average",
    "brute_force_metrics",
    "build_confusion",
    "compute_report",
    "default_catalog",
    "enumerate_subsets",
    "evaluate_ensemble",
    "exact_mean",
    "f1_family",
    "generate_from_confusion",
    "harmonic_mean",
    "load_baselines",
    "load_confusion_fixture",
    "load_labels",
    "load_model_set",
    "load_predictions",
    "normalize_row",
    "parse_manifest",
    "per_class_stats",
    "precision_family",
    "realize_from_confusion",
    "recall_family",
    "render_bar_chart",
    "round_half_up",
    "weighted_accuracy",
    "write_labels",
    "write_predictions",
]
