"""Command-line surface: validate, eval, sweep, from-confusion, compare,
synth.

Every command is deterministic given its inputs and flags; report
timestamps can be pinned with --pin-timestamp for byte-identical output.
Exit status is 0 exactly when no error diagnostic was produced.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .combine import SubsetRange, argmax_predict, enumerate_subsets, \
    evaluate_ensemble
from .core import EnsembleSpec, F1Mode, METRIC_NAMES, default_catalog
from .errors import EmptyFixtureDir, EvalError
from .ingest import (
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
from .metrics import build_confusion, compute_report
from .report import (
    COMPARISON_FORMATTERS,
    EPOCH_TIMESTAMP,
    FORMATTERS,
    SweepResult,
    assemble_comparison,
    assemble_report,
    assemble_sweep,
    default_timestamp,
    ensemble_entry,
    load_baselines,
    render_bar_chart,
)
from .synth import generate_from_confusion


def _f1_mode(args) -> F1Mode:
    return F1Mode(args.f1_mode.replace("-", "_"))


def _timestamp(args) -> str:
    return args.pin_timestamp if args.pin_timestamp else default_timestamp()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "csv", "json"),
                   default="text", help="report serialization")
    p.add_argument("--out", help="write the report to this file instead of "
                   "stdout")
    p.add_argument("--pin-timestamp", nargs="?", const=EPOCH_TIMESTAMP,
                   metavar="ISO8601", help="use a fixed generated_at value "
                   "(for reproducible output)")


def _add_f1_flag(p: argparse.ArgumentParser, default: str) -> None:
    p.add_argument("--f1-mode", choices=("definition", "paper-replication"),
                   default=default,
                   help="aggregate F1 combination rule (default: "
                   f"{default})")


def cmd_validate(args) -> int:
    catalog = default_catalog()
    failures = 0
    try:
        spec = parse_manifest(args.manifest)
    except EvalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    labels = None
    if spec.labels_path is None:
        print(f"error: manifest has no labels= entry: {args.manifest}",
              file=sys.stderr)
        failures += 1
    else:
        try:
            labels = load_labels(spec.labels_path, catalog)
            print(f"ok: labels ({labels.n} samples)")
        except EvalError as exc:
            print(f"error: {exc}", file=sys.stderr)
            failures += 1
    loaded = []
    for mid, path in spec.models:
        try:
            matrix = load_predictions(path, catalog)
            loaded.append((mid, matrix))
            print(f"ok: model {mid} ({matrix.n} rows)")
        except EvalError as exc:
            print(f"error: {exc}", file=sys.stderr)
            failures += 1
    if labels is not None and not failures:
        try:
            align(loaded, labels)
            print(f"ok: aligned {len(loaded)} models on {labels.n} samples")
        except EvalError as exc:
            print(f"error: {exc}", file=sys.stderr)
            failures += 1
    return 1 if failures else 0


def _evaluate_one(spec: EnsembleSpec, pset: ModelPredictionSet,
                  mode: F1Mode):
    averaged, predicted = evaluate_ensemble(spec, pset)
    cm = build_confusion(pset.labels, predicted, pset.catalog)
    return spec, cm, compute_report(cm, mode)


def cmd_eval(args) -> int:
    catalog = default_catalog()
    pset = load_model_set(args.manifest, catalog)
    members = frozenset(m for chunk in args.members for m in chunk.split(",")
                        if m)
    spec, cm, report = _evaluate_one(EnsembleSpec(members), pset,
                                     _f1_mode(args))
    entry = ensemble_entry(spec.display_name, list(spec.sorted_members), cm,
                           report)
    doc = assemble_report([entry], catalog, _timestamp(args))
    _emit(FORMATTERS[args.format](doc), args.out)
    return 0


def cmd_sweep(args) -> int:
    catalog = default_catalog()
    pset = load_model_set(args.manifest, catalog)
    pool_size = len(pset.model_ids)
    max_size = args.max_size if args.max_size is not None else pool_size
    size_range = SubsetRange(min_size=args.min_size, max_size=max_size)
    specs = enumerate_subsets(pset.model_ids, size_range)
    mode = _f1_mode(args)

    def run(spec: EnsembleSpec):
        return _evaluate_one(spec, pset, mode)

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(run, specs))
    else:
        results = [run(spec) for spec in specs]
    sweep = SweepResult(
        rows=tuple((spec, report) for spec, _, report in results),
        ranking_metric=args.metric,
        generated_at=_timestamp(args))
    confusions = {spec.display_name: cm for spec, cm, _ in results}
    doc = assemble_sweep(sweep, confusions, catalog)
    _emit(FORMATTERS[args.format](doc), args.out)
    return 0


def cmd_from_confusion(args) -> int:
    catalog = default_catalog()
    root = Path(args.fixture_dir)
    paths = sorted(root.glob("*.txt"))
    if not paths:
        raise EmptyFixtureDir(f"no fixture files in {root}")
    mode = _f1_mode(args)
    entries = []
    for path in paths:
        fixture = load_confusion_fixture(path, catalog)
        report = compute_report(fixture.matrix, mode)
        entries.append(ensemble_entry(fixture.name,
                                      fixture.name.split("+"),
                                      fixture.matrix, report))
    doc = assemble_report(entries, catalog, _timestamp(args))
    _emit(FORMATTERS[args.format](doc), args.out)
    return 0


def cmd_compare(args) -> int:
    baselines = load_baselines(args.baselines)
    sweep = None
    if args.manifest:
        catalog = default_catalog()
        pset = load_model_set(args.manifest, catalog)
        pool_size = len(pset.model_ids)
        max_size = args.max_size if args.max_size is not None else pool_size
        size_range = SubsetRange(min_size=args.min_size, max_size=max_size)
        mode = _f1_mode(args)
        rows = []
        for spec in enumerate_subsets(pset.model_ids, size_range):
            spec, cm, report = _evaluate_one(spec, pset, mode)
            rows.append((spec, report))
        sweep = SweepResult(rows=tuple(rows), ranking_metric=args.metric,
                            generated_at=_timestamp(args))
    doc = assemble_comparison(baselines, sweep, _timestamp(args))
    _emit(COMPARISON_FORMATTERS[args.format](doc), args.out)
    if args.chart:
        rows = [(f"{r['author']}: {r['model']}", r["accuracy"])
                for r in doc["rows"]]
        Path(args.chart).write_text(render_bar_chart(rows), encoding="utf-8")
    return 0


def cmd_synth(args) -> int:
    catalog = default_catalog()
    fixture = load_confusion_fixture(args.fixture, catalog)
    probs, truth = generate_from_confusion(fixture.matrix, args.seed,
                                           args.sharpness)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    pred_path = out_dir / f"{fixture.name}.predictions.csv"
    label_path = out_dir / f"{fixture.name}.labels.csv"
    write_predictions(probs, pred_path)
    write_labels(truth, catalog, label_path)
    # Re-load what was written and confirm it reproduces the fixture.
    reloaded = load_predictions(pred_path, catalog)
    relabels = load_labels(label_path, catalog)
    cm = build_confusion(relabels, argmax_predict(reloaded), catalog)
    if cm == fixture.matrix:
        print(f"wrote {pred_path} and {label_path}: round-trip OK")
        return 0
    print(f"round-trip FAILED for {args.fixture}", file=sys.stderr)
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="enseval",
        description="Evaluate classifier ensembles built by averaging "
                    "per-sample class probabilities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check every file a manifest names")
    p.add_argument("--manifest", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("eval", help="evaluate one ensemble end to end")
    p.add_argument("--manifest", required=True)
    p.add_argument("--members", nargs="+", required=True,
                   help="model ids to average (space or comma separated)")
    _add_f1_flag(p, "definition")
    _add_output_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="evaluate every subset in a size range")
    p.add_argument("--manifest", required=True)
    p.add_argument("--min-size", type=int, default=2)
    p.add_argument("--max-size", type=int, default=None,
                   help="default: the whole pool")
    p.add_argument("--metric", choices=METRIC_NAMES,
                   default="weighted_accuracy", help="ranking metric")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel evaluation threads")
    _add_f1_flag(p, "definition")
    _add_output_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("from-confusion",
                       help="score stored confusion-matrix fixtures")
    p.add_argument("fixture_dir")
    _add_f1_flag(p, "paper-replication")
    _add_output_flags(p)
    p.set_defaults(func=cmd_from_confusion)

    p = sub.add_parser("compare",
                       help="rank reference accuracies against a sweep")
    p.add_argument("--baselines", required=True)
    p.add_argument("--manifest", help="optional: add this sweep's best row")
    p.add_argument("--min-size", type=int, default=2)
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--metric", choices=METRIC_NAMES,
                   default="weighted_accuracy")
    p.add_argument("--chart", help="also write an SVG bar chart here")
    _add_f1_flag(p, "definition")
    _add_output_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("synth",
                       help="generate prediction/label files realizing a "
                            "confusion fixture")
    p.add_argument("fixture")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--sharpness", type=float, default=0.9)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (EvalError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
