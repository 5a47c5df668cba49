from pathlib import Path

from sliced_wasserstein_filter.components.errors import ConfigError
from sliced_wasserstein_filter.components.lcpr_validator import bundled_schema_path, load_lcpr_schema, validate_lcpr
from sliced_wasserstein_filter.components.report_writer import write_json_atomic
from sliced_wasserstein_filter.config import EXIT_FINDINGS, EXIT_OK

HELP = "check an LCPR CSV file against the bundled feature schema"


def add_arguments(parser) -> None:
    parser.add_argument("--input", required=True, help="LCPR CSV file")
    parser.add_argument("--output", required=True, help="validation report JSON")
    parser.add_argument("--schema", default=None, help="schema JSON (default: bundled version 1)")
    parser.add_argument(
        "--cap",
        action="append",
        default=[],
        metavar="COLUMN=VALUE",
        help="plausibility cap, reported separately from violations (repeatable)",
    )


def parse_caps(items: list[str]) -> dict[str, float]:
    caps = {}
    for item in items:
        name, sep, value = item.partition("=")
        try:
            if not sep or not name.strip():
                raise ValueError(item)
            caps[name.strip()] = float(value)
        except ValueError as e:
            raise ConfigError(f"--cap expects COLUMN=VALUE, got {item!r}", flag="--cap") from e
    return caps


def run(args) -> int:
    caps = parse_caps(args.cap)
    schema = load_lcpr_schema(args.schema)
    report = validate_lcpr(args.input, schema, caps)
    payload = {
        "input": str(args.input),
        "schema": str(args.schema or bundled_schema_path()),
        "schema_version": schema.version,
        "caps": caps,
        **report.to_dict(),
    }
    output = write_json_atomic(Path(args.output), payload)

    for warning in report.consistency_warnings:
        print(f"⚠️ {warning}")
    if report.total_violations:
        print(f"❌ {report.total_violations} violation(s) in {report.n_rows} rows; report in {output}")
        return EXIT_FINDINGS
    print(f"✅ {report.n_rows} rows conform to the schema; report in {output}")
    return EXIT_OK
