"""Command-line entry point: ``rdfmat {materialize,bench,validate,generate}``.

Exit status: 0 on success, 1 for user errors (bad mapping, missing column
or source, bad config), 2 for I/O failures and internal errors.
Diagnostics go to stderr; data and reports go to stdout or ``--out``.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import replace
from pathlib import Path

from rdfmat.benchkit import ExperimentConfig, generate_synthetic_dataset, render_report, run_experiment
from rdfmat.errors import ConfigError, RdfmatError, SourceError
from rdfmat.ingestion import load_source, read_header
from rdfmat.integration import integrate_by_class
from rdfmat.mapping import parse_mapping_document, validate_against_header
from rdfmat.mapping.model import SourceFormat
from rdfmat.normalization import normalize_all
from rdfmat.rdfizer.strategies import ExecutionPlan, Strategy, rdfize

EXIT_OK, EXIT_USER, EXIT_INTERNAL = 0, 1, 2


class UserError(Exception):
    pass


def _err(*parts):
    print(*parts, file=sys.stderr)


def _load_mapping(path, fmt=None):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise UserError(f"mapping file not found: {path}") from None
    except UnicodeDecodeError as exc:
        raise UserError(f"{path}: mapping is not valid UTF-8 ({exc.reason})") from None
    try:
        return parse_mapping_document(text, SourceFormat(fmt.upper()) if fmt else None)
    except RdfmatError as exc:
        raise UserError(f"{path}: {exc}") from None


def _source_path(source_dir, name) -> Path:
    path = Path(source_dir) / name
    if not path.is_file():
        raise UserError(f"logical source {name!r} not found under {source_dir}")
    return path


def _check_headers(mapping, source_dir) -> list:
    issues = []
    headers = {}
    for tm in mapping.triples_maps:
        if tm.source_name not in headers:
            try:
                headers[tm.source_name] = read_header(_source_path(source_dir, tm.source_name), tm.logical_source.format)
            except SourceError as exc:
                raise UserError(f"{tm.source_name}: {exc}") from None
        issues.extend(validate_against_header(tm, headers[tm.source_name]))
    return issues


def cmd_validate(args) -> int:
    mapping = _load_mapping(args.mapping, args.format)
    issues = _check_headers(mapping, args.source_dir)
    for issue in issues:
        print(issue)
    print(f"{len(issues)} issues")
    return EXIT_OK if not issues else EXIT_USER


def cmd_materialize(args) -> int:
    mapping = _load_mapping(args.mapping, args.format)
    strategy = Strategy.parse(args.strategy)
    issues = _check_headers(mapping, args.source_dir)
    if issues:
        for issue in issues:
            _err(issue)
        raise UserError(f"{len(issues)} unbound column(s): " + ", ".join(sorted({i.column for i in issues})))

    start = time.perf_counter()
    sources = []
    for name in dict.fromkeys(tm.source_name for tm in mapping.triples_maps):
        fmt = next(tm.logical_source.format for tm in mapping.triples_maps if tm.source_name == name)
        # streamed unless the attribute-based baseline needs to re-scan rows in memory
        sources.append(load_source(_source_path(args.source_dir, name), fmt, name=name, materialize=False))
    tables = normalize_all(sources, mapping)
    if strategy is Strategy.ATTRIBUTE_BASED and args.no_integrate:
        tables = [t.materialize() for t in tables]
    if args.dump_normalized:
        for t in tables:
            _err(f"normalized table written to {t.dump(args.dump_normalized)}")

    pairs = list(zip(mapping.triples_maps, tables))
    if args.no_integrate:
        bindings = pairs
    else:
        bindings = []
        for class_iri, maps, integrated, diag in integrate_by_class(pairs):
            combined = replace(maps[0], predicate_object_maps=tuple(p for m in maps for p in m.predicate_object_maps))
            bindings.append((combined, integrated))
            _err(f"integration <{class_iri}>: entities={len(integrated)} entities_merged={diag.entities_merged} "
                 f"rows_skipped={diag.rows_skipped} duplicate_pairs_collapsed={diag.duplicate_pairs_collapsed}")

    stats = rdfize(ExecutionPlan(strategy, bindings, args.output, dedup=not args.no_dedup))
    elapsed = time.perf_counter() - start
    for t in tables:  # streamed tables only know their counts once consumed
        n = t.stats
        _err(f"normalization {t.source_name} -> <{t.class_iri}>: rows_in={n.rows_in} rows_out={n.rows_out} "
             f"null_subject_dropped={n.null_subject_dropped} duplicates_dropped={n.duplicates_dropped}")
    print(f"triples={stats.triples_emitted - stats.duplicates_dropped} elapsed_s={elapsed:.3f} "
          f"rdfize_s={stats.elapsed_seconds:.3f} subjects={stats.subjects_emitted} "
          f"rows_skipped={stats.rows_skipped} duplicates_dropped={stats.duplicates_dropped} "
          f"passes={stats.passes} strategy={strategy.value}")
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        config = ExperimentConfig.from_json(args.config)
    except FileNotFoundError:
        raise UserError(f"config file not found: {args.config}") from None
    if config.dataset_path is not None:
        # relative dataset paths are taken from the config file's directory
        config.dataset_path = str(Path(args.config).parent / config.dataset_path)
        if not Path(config.dataset_path).is_file():
            raise UserError(f"dataset not found: {config.dataset_path}")
    if args.sink:
        config.sink = args.sink
        config.validate()

    def progress(strategy, fraction, attrs, run, seconds):
        _err(f"{strategy.value:9s} fraction={fraction:g} attributes={attrs} run={run} {seconds:.3f}s")

    report = run_experiment(config, progress=progress if args.verbose else None)
    text = render_report(report, args.format)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    for r in report.reductions():
        _err(f"fraction={r['fraction']:g} attributes={r['attribute_count']}: class-based time is "
             f"{100 * r['time_ratio']:.1f}% of attribute-based ({r['reduction_percent']:.1f}% reduction)")
    return EXIT_OK


def cmd_generate(args) -> int:
    try:
        ds = generate_synthetic_dataset(args.rows, args.columns, args.null_rate, args.seed, args.out)
    except ValueError as exc:
        raise UserError(str(exc)) from None
    print(f"wrote {ds.rows} rows x {ds.columns} columns to {ds.path} ({ds.byte_size} bytes)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rdfmat", description="Materialize delimited sources as RDF via RML mappings.")
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("materialize", help="run a mapping over source files and write N-Triples")
    m.add_argument("--mapping", required=True)
    m.add_argument("--source-dir", required=True)
    m.add_argument("--strategy", choices=["class", "attribute"], default="class")
    m.add_argument("--output", required=True)
    m.add_argument("--format", choices=["csv", "tsv"], help="override the source format for every logical source")
    m.add_argument("--no-integrate", action="store_true", help="skip subject-key integration")
    m.add_argument("--no-dedup", action="store_true", help="keep duplicate output triples")
    m.add_argument("--dump-normalized", metavar="DIR", help="also write each normalized table as TSV")
    m.set_defaults(func=cmd_materialize)

    b = sub.add_parser("bench", help="run the strategy benchmark described by a JSON config")
    b.add_argument("--config", required=True)
    b.add_argument("--format", choices=["json", "csv", "md"], default="json")
    b.add_argument("--out")
    b.add_argument("--sink", choices=["file", "null"], help="override the config's output sink")
    b.add_argument("-v", "--verbose", action="store_true", help="log every run to stderr")
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("validate", help="check a mapping against source headers")
    v.add_argument("--mapping", required=True)
    v.add_argument("--source-dir", required=True)
    v.add_argument("--format", choices=["csv", "tsv"])
    v.set_defaults(func=cmd_validate)

    g = sub.add_parser("generate", help="write a synthetic mutation-shaped TSV")
    g.add_argument("--rows", type=int, required=True)
    g.add_argument("--columns", type=int, required=True)
    g.add_argument("--null-rate", type=float, default=0.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USER
    try:
        return args.func(args)
    except (UserError, ConfigError) as exc:
        _err(f"error: {exc}")
        return EXIT_USER
    except RdfmatError as exc:
        _err(f"error: {exc}")
        return EXIT_USER
    except OSError as exc:
        _err(f"I/O error: {exc}")
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001
        _err(f"internal error: {type(exc).__name__}: {exc}")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
