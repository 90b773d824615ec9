"""Exception types raised by the toolkit.

Every parsing or validation error carries enough context to locate the
offending input: file path, line number, and/or row id where applicable.
"""

from __future__ import annotations


class EvalError(Exception):
    """Base class for all toolkit errors."""

    def __init__(self, message: str, *, path=None, line: int | None = None,
                 row_id: str | None = None):
        self.message = message
        self.path = path
        self.line = line
        self.row_id = row_id
        super().__init__(message)

    def __str__(self) -> str:
        parts = []
        if self.path is not None:
            parts.append(str(self.path))
        if self.line is not None:
            parts.append(f"line {self.line}")
        if self.row_id is not None:
            parts.append(f"row id {self.row_id!r}")
        prefix = ", ".join(parts)
        return f"{prefix}: {self.message}" if prefix else self.message


# ingest / file parsing

class MalformedFile(EvalError):
    """Bad header, wrong column count, non-numeric cell, or unreadable file."""


class RowSumViolation(EvalError):
    """Probability row sum deviates from 1.0 by more than the tolerance."""


class DomainViolation(EvalError):
    """Probability entry outside [0, 1] (beyond slack) or non-finite."""


class DuplicateId(EvalError):
    """Sample or model id repeated where uniqueness is required."""


class UnknownClassName(EvalError):
    """Label value is neither a catalog class name nor a valid class index."""


class NonInteger(EvalError):
    """Confusion fixture cell is not an integer."""


class NegativeCount(EvalError):
    """Confusion fixture cell is negative."""


class ShapeMismatch(EvalError):
    """Confusion grid is not k x k for the active catalog."""


class IdMismatch(EvalError):
    """Sample ids disagree between two sources that must align."""


class CatalogMismatch(EvalError):
    """Two inputs were built against different class catalogs."""


class EmptyManifest(EvalError):
    """Manifest names no prediction files."""


class EmptyFixtureDir(EvalError):
    """Fixture directory contains no confusion fixture files."""


# ensemble combination

class EmptyEnsemble(EvalError):
    """Averaging requested over zero members."""


class AlignmentError(EvalError):
    """Member matrices do not share ids, order, and catalog."""


class UnknownModelId(EvalError):
    """Ensemble member id not present in the loaded prediction set."""


class RangeExceedsPool(EvalError):
    """Requested subset sizes exceed the model pool."""


# metrics

class EmptyMatrix(EvalError):
    """Metrics requested for a confusion matrix with zero total count."""


# synthesis

class InvalidSharpness(EvalError):
    """Sharpness cannot dominate the uniform residue share for this k."""


# reporting

class MalformedBaselines(EvalError):
    """Baselines file unreadable or contains an out-of-range accuracy."""
