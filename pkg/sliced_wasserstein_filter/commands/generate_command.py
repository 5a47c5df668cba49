from pathlib import Path

from sliced_wasserstein_filter.commands.filter_command import summary_path
from sliced_wasserstein_filter.components.dataset import to_frame
from sliced_wasserstein_filter.components.generators import TOY_KINDS, gen_three_gaussians, gen_toy
from sliced_wasserstein_filter.components.report_writer import to_csv_text, to_json, write_files_atomic
from sliced_wasserstein_filter.config import EXIT_OK

HELP = "write a synthetic labelled dataset as CSV"

KINDS = ("three-gaussians",) + tuple(kind.replace("_", "-") for kind in TOY_KINDS)


def add_arguments(parser) -> None:
    parser.add_argument("--kind", choices=KINDS, required=True)
    parser.add_argument("--output", required=True, help="CSV file to write")
    parser.add_argument("--summary", default=None, help="generation parameters JSON (default: <output>.summary.json)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--n", type=int, default=300, help="number of points (toy kinds)")
    parser.add_argument("--noise", type=float, default=0.05, help="Gaussian noise std (toy kinds)")
    parser.add_argument("--outlier-fraction", type=float, default=0.0, help="uniform contamination (toy kinds)")
    parser.add_argument("--centers", type=int, default=3, help="blob count (blobs, anisotropic)")
    parser.add_argument("--n-major", type=int, default=300, help="majority size (three-gaussians)")
    parser.add_argument("--n-minor", type=int, default=60, help="minority size (three-gaussians)")
    parser.add_argument("--n-outlier", type=int, default=15, help="outlier count (three-gaussians)")
    parser.add_argument("--label-column", default="label")


def generation_params(args) -> dict:
    if args.kind == "three-gaussians":
        return {"n_major": args.n_major, "n_minor": args.n_minor, "n_outlier": args.n_outlier}
    return {"n": args.n, "noise": args.noise, "outlier_fraction": args.outlier_fraction, "centers": args.centers}


def run(args) -> int:
    params = generation_params(args)
    if args.kind == "three-gaussians":
        data = gen_three_gaussians(seed=args.seed, **params)
    else:
        data = gen_toy(args.kind, seed=args.seed, **params)

    output = Path(args.output)
    summary = {
        "command": "generate",
        "kind": args.kind,
        "seed": args.seed,
        "params": params,
        "label_column": args.label_column,
        "n_samples": data.n_samples,
        "n_features": data.n_features,
        "n_outliers": int(data.truth_labels.sum()),
    }
    summary_file = summary_path(output, args.summary)
    write_files_atomic({output: to_csv_text(to_frame(data, args.label_column)), summary_file: to_json(summary)})
    print(f"✅ Wrote {data.n_samples} {args.kind} samples to {output} (seed={args.seed}); parameters in {summary_file}")
    return EXIT_OK
