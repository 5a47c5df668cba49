import os
from pathlib import Path
from time import perf_counter

from sliced_wasserstein_filter.commands.filter_command import summary_path, thread_count
from sliced_wasserstein_filter.components.dataset import load_dataset
from sliced_wasserstein_filter.components.evaluation import grid_search, load_grid_spec, results_frame, summary_record
from sliced_wasserstein_filter.components.report_writer import to_csv_text, to_json, write_files_atomic
from sliced_wasserstein_filter.config import EXIT_OK

HELP = "grid-search a filter or baseline against ground-truth labels"


def add_arguments(parser) -> None:
    parser.add_argument("--input", required=True, help="labelled input CSV file")
    parser.add_argument("--no-header", action="store_true")
    parser.add_argument("--label-column", default="label", help="0/1 ground-truth column")
    parser.add_argument("--standardize", action="store_true")
    parser.add_argument("--grid", required=True, help="grid spec JSON file")
    parser.add_argument("--seed", type=int, default=0, help="seed of every filter run without a seed axis")
    parser.add_argument("--threads", type=thread_count, default=os.cpu_count() or 1)
    parser.add_argument("--output", required=True, help="results table CSV (one row per grid point)")
    parser.add_argument("--summary", default=None, help="best-run JSON (default: <output>.summary.json)")


def run(args) -> int:
    # grid errors surface before any data is read
    grid = load_grid_spec(args.grid)
    started = perf_counter()
    data = load_dataset(args.input, has_header=not args.no_header, label_column=args.label_column, scale=args.standardize)
    search = grid_search(data, grid, seed=args.seed, n_jobs=args.threads)

    output = Path(args.output)
    summary = {
        "command": "eval",
        "input": str(args.input),
        "grid": str(args.grid),
        "axes": {name: list(values) for name, values in grid.axes.items()},
        "label_column": args.label_column,
        "standardized": bool(args.standardize),
        "seed": args.seed,
        "threads": args.threads,
        "n_samples": data.n_samples,
        "dropped_rows": list(data.dropped_rows),
        "wall_time_seconds": round(perf_counter() - started, 6),
        **summary_record(search, seed=args.seed),
    }
    summary_file = summary_path(output, args.summary)
    write_files_atomic({output: to_csv_text(results_frame(search.results)), summary_file: to_json(summary)})
    best = search.best
    precision = "undefined" if best.precision is None else f"{best.precision:.4f}"
    print(f"✅ Wrote {len(search.results)} grid result(s) to {output}")
    print(f"✅ Best accuracy {best.accuracy:.4f} (precision {precision}) at {best.params}; summary in {summary_file}")
    return EXIT_OK
