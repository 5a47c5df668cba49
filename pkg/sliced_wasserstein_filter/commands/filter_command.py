import argparse
import os
from pathlib import Path
from time import perf_counter

import pandas as pd

from sliced_wasserstein_filter.components.dataset import load_dataset
from sliced_wasserstein_filter.components.outlier_filter import FilterReport
from sliced_wasserstein_filter.components.report_writer import to_csv_text, to_json, write_files_atomic
from sliced_wasserstein_filter.config import (
    DEFAULT_EPSILON,
    DEFAULT_ETA,
    DEFAULT_L,
    DEFAULT_P,
    DEFAULT_T,
    EXIT_OK,
    THRESHOLD_MODES,
    FilterConfig,
)
from sliced_wasserstein_filter.sliced_wasserstein_filter import ALGORITHMS, run_filter

HELP = "flag outliers of a CSV file with SWAD, FEAD or chunked SWAD"


def thread_count(value: str) -> int:
    """argparse type for --threads: a positive integer"""
    try:
        threads = int(value)
    except ValueError:
        threads = 0
    if threads < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value!r}")
    return threads


def add_filter_options(parser) -> None:
    """Hyperparameter flags shared with every command that builds a FilterConfig"""
    parser.add_argument("--t", type=float, default=DEFAULT_T, help="Wasserstein order (>= 1)")
    parser.add_argument("--L", type=int, default=DEFAULT_L, help="number of projection directions")
    parser.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON, help="SWAD vote threshold")
    parser.add_argument("--eta", type=float, default=DEFAULT_ETA, help="FEAD vote threshold")
    parser.add_argument("--p", type=float, default=DEFAULT_P, help="vote fraction needed to flag a sample")
    parser.add_argument("--n", type=int, default=None, help="votes per candidate (default min(30, N-1))")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--chunk-size", type=int, default=None, help="chunk size for swad-chunked")
    parser.add_argument("--threshold-mode", choices=THRESHOLD_MODES, default="raw")


def add_input_options(parser) -> None:
    parser.add_argument("--input", required=True, help="input CSV file")
    parser.add_argument("--no-header", action="store_true", help="the first line holds data, not names")
    parser.add_argument("--label-column", default=None, help="0/1 ground-truth column, excluded from features")
    parser.add_argument("--standardize", action="store_true", help="scale every column to zero mean, unit variance")
    parser.add_argument("--threads", type=thread_count, default=os.cpu_count() or 1, help="worker threads")


def add_arguments(parser) -> None:
    add_input_options(parser)
    parser.add_argument("--algo", choices=ALGORITHMS, default="swad")
    add_filter_options(parser)
    parser.add_argument("--output", required=True, help="per-row result file")
    parser.add_argument("--summary", default=None, help="run summary JSON (default: <output>.summary.json)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv", help="per-row result format")


def config_from_args(args) -> FilterConfig:
    return FilterConfig(
        t=args.t,
        L=args.L,
        epsilon=args.epsilon,
        eta=args.eta,
        p=args.p,
        n=args.n,
        seed=args.seed,
        chunk_size=args.chunk_size,
        threshold_mode=args.threshold_mode,
    )


def rows_frame(report: FilterReport) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "row_index": range(report.n_samples),
            "score": report.scores,
            "is_outlier": report.flags.astype(int),
        }
    )


def summary_path(output: Path, summary) -> Path:
    return Path(summary) if summary else output.with_name(output.name + ".summary.json")


def run(args) -> int:
    cfg = config_from_args(args)
    started = perf_counter()
    data = load_dataset(args.input, has_header=not args.no_header, label_column=args.label_column, scale=args.standardize)
    report = run_filter(data, cfg, args.algo, n_jobs=args.threads)
    wall_time = perf_counter() - started

    output = Path(args.output)
    rows = rows_frame(report)
    rows_text = to_csv_text(rows) if args.format == "csv" else to_json(rows.to_dict(orient="records"))

    summary = {
        "command": "filter",
        "input": str(args.input),
        "algorithm": report.algorithm,
        "config": report.config_echo.as_dict(),
        "standardized": bool(args.standardize),
        "label_column": args.label_column,
        "threads": args.threads,
        "n_samples": report.n_samples,
        "n_features": data.n_features,
        "n_outliers": report.n_outliers,
        "outlier_indices": report.outlier_indices.tolist(),
        "dropped_rows": list(data.dropped_rows),
        "seed": cfg.seed,
        "wall_time_seconds": round(wall_time, 6),
    }
    summary_file = summary_path(output, args.summary)
    write_files_atomic({output: rows_text, summary_file: to_json(summary)})
    print(f"✅ Wrote {report.n_samples} rows ({report.n_outliers} outliers) to {output}")
    print(f"✅ Wrote run summary to {summary_file}")
    return EXIT_OK
