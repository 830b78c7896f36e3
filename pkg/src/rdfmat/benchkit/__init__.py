from rdfmat.benchkit.experiment import (
    CellResult,
    ExperimentConfig,
    ExperimentReport,
    GeneratorSpec,
    materialize_once,
    run_experiment,
)
from rdfmat.benchkit.report import CSV_COLUMNS, parse_json_report, render_report
from rdfmat.benchkit.synthetic import (
    GeneratedDataset,
    build_benchmark_map,
    build_benchmark_mapping,
    generate_synthetic_dataset,
)

__all__ = [
    "CSV_COLUMNS",
    "CellResult",
    "ExperimentConfig",
    "ExperimentReport",
    "GeneratedDataset",
    "GeneratorSpec",
    "build_benchmark_map",
    "build_benchmark_mapping",
    "generate_synthetic_dataset",
    "materialize_once",
    "parse_json_report",
    "render_report",
    "run_experiment",
]
