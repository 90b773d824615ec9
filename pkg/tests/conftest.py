"""Shared fixtures: the installed confusion fixtures, the frozen reference
metric table, and a workspace realizing every fixture as prediction files
over one shared label file (so sweep-shaped commands can be driven
end to end).
"""

from __future__ import annotations

import csv
from importlib import resources
from pathlib import Path

import pytest

import enseval as ev

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def catalog() -> ev.ClassCatalog:
    return ev.default_catalog()


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return Path(str(resources.files("enseval") / "fixtures" / "confusion"))


@pytest.fixture(scope="session")
def baselines_path() -> Path:
    return Path(str(resources.files("enseval") / "fixtures"
                    / "baselines.csv"))


@pytest.fixture(scope="session")
def fixtures(fixture_dir, catalog) -> dict[str, ev.ConfusionMatrix]:
    """All shipped confusion fixtures keyed by ensemble display name."""
    out = {}
    for path in sorted(fixture_dir.glob("*.txt")):
        fixture = ev.load_confusion_fixture(path, catalog)
        out[fixture.name] = fixture.matrix
    return out


@pytest.fixture(scope="session")
def reference_table() -> dict[str, dict[str, float]]:
    """Frozen expected 4-decimal metric values keyed by display name."""
    table = {}
    with open(DATA_DIR / "reference_metrics.csv", newline="") as fh:
        for row in csv.DictReader(fh):
            name = row.pop("ensemble")
            table[name] = {k: float(v) for k, v in row.items()}
    return table


@pytest.fixture(scope="session")
def sweep_workspace(tmp_path_factory, fixtures, catalog) -> Path:
    """Directory with one label file, 15 prediction files (each realizing
    one shipped fixture over the shared labels), and a manifest."""
    root = tmp_path_factory.mktemp("sweep_workspace")
    supports = next(iter(fixtures.values())).row_sums()
    ids, labels = [], []
    for c, n in enumerate(supports):
        for j in range(n):
            ids.append(f"t{c}-{j:04d}")
            labels.append(c)
    truth = ev.LabelVector.from_pairs(ids, labels, catalog)
    ev.write_labels(truth, catalog, root / "labels.csv")
    lines = ["labels=labels.csv"]
    for name, cm in sorted(fixtures.items()):
        matrix = ev.realize_from_confusion(cm, truth)
        ev.write_predictions(matrix, root / f"{name}.csv")
        lines.append(f"{name}={name}.csv")
    (root / "manifest.txt").write_text("\n".join(lines) + "\n",
                                       encoding="utf-8")
    return root


@pytest.fixture(scope="session")
def sweep_manifest(sweep_workspace) -> Path:
    return sweep_workspace / "manifest.txt"
