"""Strategy comparison over dataset fractions and attribute counts."""

from __future__ import annotations

import gc
import json
import math
import os
import platform
import statistics
import sys
import tempfile
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from rdfmat.benchkit.synthetic import build_benchmark_map, generate_synthetic_dataset
from rdfmat.errors import ConfigError
from rdfmat.ingestion import load_source, read_header, sample_rows, write_source
from rdfmat.normalization import normalize
from rdfmat.rdfizer.strategies import ExecutionPlan, Strategy, TripleStats, rdfize


@dataclass
class GeneratorSpec:
    rows: int = 10_000
    columns: int = 13
    null_rate: float = 0.0
    seed: int = 0


@dataclass
class ExperimentConfig:
    dataset_path: Optional[str] = None
    generator: Optional[GeneratorSpec] = None
    fractions: list = field(default_factory=lambda: [1.0, 0.5, 0.25])
    attribute_counts: list = field(default_factory=lambda: [5, 12])
    strategies: list = field(default_factory=lambda: [Strategy.CLASS_BASED, Strategy.ATTRIBUTE_BASED])
    repeats: int = 5
    seed: int = 42
    warmup_runs: int = 1
    sink: str = "file"  # "file" or "null"
    scratch_dir: Optional[str] = None

    def __post_init__(self):
        if isinstance(self.generator, dict):
            self.generator = GeneratorSpec(**self.generator)
        try:
            self.strategies = [Strategy.parse(s) for s in self.strategies]
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        self.validate()

    def validate(self):
        if (self.dataset_path is None) == (self.generator is None):
            raise ConfigError("exactly one of dataset_path and generator must be given")
        if not self.fractions or any(not (0.0 < float(f) <= 1.0) for f in self.fractions):
            raise ConfigError(f"fractions must lie in (0, 1]: {self.fractions}")
        if not self.attribute_counts or any(int(a) < 1 for a in self.attribute_counts):
            raise ConfigError(f"attribute counts must be >= 1: {self.attribute_counts}")
        if not self.strategies:
            raise ConfigError("no strategies selected")
        if int(self.repeats) < 1:
            raise ConfigError("repeats must be >= 1")
        if int(self.warmup_runs) < 0:
            raise ConfigError("warmup_runs must be >= 0")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.sink not in ("file", "null"):
            raise ConfigError(f"sink must be 'file' or 'null', got {self.sink!r}")
        if self.generator is not None and (self.generator.rows < 1 or self.generator.columns < 2):
            raise ConfigError("generator needs rows >= 1 and columns >= 2")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config field(s): {sorted(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from None
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: config must be a JSON object")
        return cls.from_dict(data)


@dataclass
class CellResult:
    strategy: str
    fraction: float
    attribute_count: int
    median_seconds: float
    mean_seconds: float
    stddev_seconds: float
    triples_emitted: int
    rows_processed: int
    passes_performed: int
    timings: list = field(default_factory=list)


@dataclass
class ExperimentReport:
    cells: list = field(default_factory=list)
    environment: dict = field(default_factory=dict)

    def cell(self, strategy, fraction, attribute_count) -> CellResult:
        strategy = Strategy.parse(strategy).value
        for c in self.cells:
            if c.strategy == strategy and c.fraction == fraction and c.attribute_count == attribute_count:
                return c
        raise KeyError((strategy, fraction, attribute_count))

    def reductions(self) -> list[dict]:
        """Class-based time saving relative to attribute-based, per (fraction, attributes)."""
        out = []
        keys = sorted({(c.fraction, c.attribute_count) for c in self.cells}, key=lambda k: (-k[0], k[1]))
        for fraction, attrs in keys:
            try:
                cb = self.cell(Strategy.CLASS_BASED, fraction, attrs)
                ab = self.cell(Strategy.ATTRIBUTE_BASED, fraction, attrs)
            except KeyError:
                continue
            ratio = cb.median_seconds / ab.median_seconds if ab.median_seconds > 0 else math.nan
            out.append({"fraction": fraction, "attribute_count": attrs,
                        "time_ratio": ratio, "reduction_percent": 100.0 * (1.0 - ratio)})
        return out

    def to_dict(self) -> dict:
        return {"cells": [asdict(c) for c in self.cells], "environment": dict(self.environment)}

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentReport":
        return cls([CellResult(**c) for c in data.get("cells", [])], dict(data.get("environment", {})))


def machine_descriptor() -> dict:
    return {
        "platform": platform.platform(),
        "machine": platform.machine(),
        "processor": platform.processor() or platform.machine(),
        "cpu_count": os.cpu_count(),
        "python": sys.version.split()[0],
        "implementation": platform.python_implementation(),
    }


def materialize_once(dataset_path, tm, strategy, output_path) -> tuple[float, TripleStats]:
    """One timed read-normalize-rdfize-write run; returns (seconds, stats).

    Mapping construction and header validation happen before this call.
    The attribute-based strategy re-scans the in-memory normalized table on
    each pass rather than re-parsing the file.
    """
    start = time.perf_counter()
    source = load_source(dataset_path, name=tm.source_name)
    table = normalize(source, tm)
    del source
    stats = rdfize(ExecutionPlan(strategy, [(tm, table)], output_path))
    return time.perf_counter() - start, stats


def _summarize(strategy, fraction, attrs, timings, stats: TripleStats) -> CellResult:
    return CellResult(
        strategy=strategy.value,
        fraction=fraction,
        attribute_count=attrs,
        median_seconds=statistics.median(timings),
        mean_seconds=statistics.fmean(timings),
        stddev_seconds=statistics.stdev(timings) if len(timings) > 1 else 0.0,
        triples_emitted=stats.triples_emitted,
        rows_processed=stats.rows_processed,
        passes_performed=stats.passes,
        timings=list(timings),
    )


def _prepare_datasets(config: ExperimentConfig, scratch: Path) -> tuple[dict, str]:
    """Write one TSV per fraction (sampled from the full dataset); returns paths by fraction."""
    if config.generator is not None:
        g = config.generator
        full = generate_synthetic_dataset(g.rows, g.columns, g.null_rate, g.seed, scratch / "full.tsv").path
    else:
        full = Path(config.dataset_path)
    name = full.name
    paths = {}
    table = None
    for fraction in config.fractions:
        fraction = float(fraction)
        if fraction == 1.0:
            paths[fraction] = full
            continue
        if table is None:
            table = load_source(full, name=name)
        sampled = sample_rows(table, fraction, int(config.seed))
        path = scratch / f"sample_{fraction:g}{full.suffix or '.tsv'}"
        write_source(sampled, path)
        paths[fraction] = path
    return paths, name


def run_experiment(config: ExperimentConfig, progress=None) -> ExperimentReport:
    """Time every (strategy, fraction, attribute count) cell.

    Each cell gets ``warmup_runs`` unmeasured runs and ``repeats`` measured
    ones; strategies alternate within a repeat so slow drift hits both.
    Runs are single-threaded with the cyclic garbage collector paused, and
    each run's output file is deleted before the next.
    """
    config.validate()
    report = ExperimentReport(environment={
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "machine": machine_descriptor(),
        "single_thread": True,
        "sink": config.sink,
        "repeats": int(config.repeats),
        "warmup_runs": int(config.warmup_runs),
        "seed": int(config.seed),
    })
    with tempfile.TemporaryDirectory(dir=config.scratch_dir, prefix="rdfmat-bench-") as tmp:
        scratch = Path(tmp)
        paths, name = _prepare_datasets(config, scratch)
        header = read_header(paths[float(config.fractions[0])])
        max_attrs = len(header) - 1
        if max(int(a) for a in config.attribute_counts) > max_attrs:
            raise ConfigError(f"dataset has only {max_attrs} attribute columns")
        output = scratch / "out.nt" if config.sink == "file" else None
        for fraction in config.fractions:
            fraction = float(fraction)
            for attrs in config.attribute_counts:
                attrs = int(attrs)
                tm = build_benchmark_map(name, attrs)
                timings = {s: [] for s in config.strategies}
                last = {}
                for run in range(int(config.warmup_runs) + int(config.repeats)):
                    for strategy in config.strategies:
                        gc.collect()
                        gc.disable()
                        try:
                            seconds, stats = materialize_once(paths[fraction], tm, strategy, output)
                        finally:
                            gc.enable()
                        if output is not None and output.exists():
                            output.unlink()
                        if run >= int(config.warmup_runs):
                            timings[strategy].append(seconds)
                        last[strategy] = stats
                        if progress is not None:
                            progress(strategy, fraction, attrs, run, seconds)
                counts = {s.triples_emitted for s in last.values()}
                if len(counts) != 1:
                    raise AssertionError(f"strategies disagree on triple count at fraction={fraction}, "
                                         f"attributes={attrs}: {counts}")
                for strategy in config.strategies:
                    report.cells.append(_summarize(strategy, fraction, attrs, timings[strategy], last[strategy]))
    return report
