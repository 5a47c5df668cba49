from pathlib import Path

from sliced_wasserstein_filter.components.dataset import read_csv, spearman_ranking
from sliced_wasserstein_filter.components.lcpr_validator import lcpr_dataset
from sliced_wasserstein_filter.components.report_writer import write_json_atomic
from sliced_wasserstein_filter.config import EXIT_OK

HELP = "rank features by Spearman correlation with a target column"


def add_arguments(parser) -> None:
    parser.add_argument("--input", required=True, help="numeric CSV file, or an LCPR file with --lcpr")
    parser.add_argument("--target", required=True, help="target column, e.g. total_energy_consumed")
    parser.add_argument("--output", required=True, help="ranking JSON")
    parser.add_argument("--lcpr", action="store_true", help="read the input as an LCPR file")
    parser.add_argument("--substation", default=None, help="restrict an LCPR file to one substation")


def run(args) -> int:
    if args.lcpr:
        data = lcpr_dataset(args.input, substation=args.substation)
    else:
        data = read_csv(args.input)
    ranking = spearman_ranking(data, args.target)
    output = write_json_atomic(
        Path(args.output),
        {
            "input": str(args.input),
            "target": args.target,
            "substation": args.substation,
            "n_samples": data.n_samples,
            "ranking": [{"feature": name, "rho": rho} for name, rho in ranking],
        },
    )
    print(f"✅ Wrote Spearman ranking of {len(ranking)} feature(s) against {args.target!r} to {output}")
    return EXIT_OK
