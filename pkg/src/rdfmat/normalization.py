"""Per-class decomposition of sources: column projection plus exact dedup."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from operator import itemgetter
from pathlib import Path
from typing import Iterable, Iterator, Sequence, Union

from rdfmat.errors import MissingSourceError, UnboundColumnError
from rdfmat.ingestion import Row, SourceTable, write_rows
from rdfmat.mapping.model import MappingSet, SourceFormat, TriplesMap
from rdfmat.mapping.validate import validate_against_header

_NULL = "\x00"
_SEP = "\x1f"


def _projector(indices: Sequence[int]):
    if len(indices) == 1:
        i = indices[0]
        return lambda row: (row[i],)
    return itemgetter(*indices)


def row_digest(row: Row) -> bytes:
    """128-bit fingerprint of a row; distinguishes ``None`` from ``""``."""
    key = _SEP.join(_NULL if c is None else c.replace("\\", "\\\\").replace(_SEP, "\\" + _SEP) for c in row)
    return hashlib.blake2b(key.encode("utf-8"), digest_size=16).digest()


@dataclass
class NormalizationStats:
    """Counters from the latest pass over the source; streamed tables refresh them per iteration."""

    rows_in: int = 0
    rows_out: int = 0
    null_subject_dropped: int = 0
    duplicates_dropped: int = 0


def _project_unique(rows: Iterable[Row], indices, subject_pos, fingerprint: bool,
                    stats: NormalizationStats) -> Iterator[Row]:
    project = _projector(indices)
    seen = set()
    add = seen.add
    stats.rows_in = stats.rows_out = stats.null_subject_dropped = stats.duplicates_dropped = 0
    for row in rows:
        stats.rows_in += 1
        out = project(row)
        if all(out[i] is None for i in subject_pos):
            stats.null_subject_dropped += 1
            continue
        key = row_digest(out) if fingerprint else out
        if key in seen:
            stats.duplicates_dropped += 1
            continue
        add(key)
        stats.rows_out += 1
        yield out


class NormalizedRows:
    """Lazily projected, deduplicated rows over a streamed source.

    Exact rows would cost memory proportional to the projected data, so the
    seen-set holds 128-bit BLAKE2b fingerprints instead.
    """

    def __init__(self, source_rows, indices, subject_pos, stats: NormalizationStats):
        self._source_rows = source_rows
        self._indices = tuple(indices)
        self._subject_pos = tuple(subject_pos)
        self.stats = stats

    def __iter__(self):
        return _project_unique(self._source_rows, self._indices, self._subject_pos, True, self.stats)


@dataclass(frozen=True)
class NormalizedTable:
    class_iri: str
    source_name: str
    header: tuple[str, ...]
    rows: Union[tuple[Row, ...], NormalizedRows]
    subject_columns: tuple[str, ...]
    format: SourceFormat = SourceFormat.CSV
    stats: NormalizationStats = field(default_factory=NormalizationStats, compare=False, repr=False)

    @property
    def materialized(self) -> bool:
        return isinstance(self.rows, tuple)

    def materialize(self) -> "NormalizedTable":
        if self.materialized:
            return self
        rows = tuple(self.rows)
        return NormalizedTable(self.class_iri, self.source_name, self.header, rows, self.subject_columns,
                               self.format, self.stats)

    def as_source(self) -> SourceTable:
        return SourceTable(self.source_name, self.header, self.rows, self.format)

    def dump(self, directory) -> Path:
        """Write the table as TSV under ``directory``; returns the file path."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / dump_filename(self.class_iri, self.source_name)
        with open(path, "w", encoding="utf-8", newline="") as out:
            write_rows(out, self.header, self.rows, SourceFormat.TSV)
        return path


def dump_filename(class_iri: str, source_name: str) -> str:
    def clean(text):
        return "".join(c if c.isalnum() or c in "-_." else "_" for c in text).strip("_")

    return f"{clean(class_iri)}__{clean(source_name)}.tsv"


def normalize(source: SourceTable, tm: TriplesMap) -> NormalizedTable:
    """Project ``source`` onto the columns ``tm`` references and drop exact duplicates.

    The first occurrence of each projected row is kept; rows whose subject
    columns are all null are dropped.  A streamed source gives a streamed
    result.
    """
    issues = validate_against_header(tm, source.header)
    if issues:
        raise UnboundColumnError([i.column for i in issues], tm.id)
    header = tuple(tm.referenced_columns())
    position = {name: i for i, name in enumerate(source.header)}
    indices = [position[c] for c in header]
    subject_columns = tuple(dict.fromkeys(tm.subject_map.template.placeholders))
    subject_pos = [header.index(c) for c in subject_columns]
    stats = NormalizationStats()
    if source.materialized:
        rows = tuple(_project_unique(source.rows, indices, subject_pos, False, stats))
    else:
        rows = NormalizedRows(source.rows, indices, subject_pos, stats)
    return NormalizedTable(tm.class_iri, source.name, header, rows, subject_columns, source.format, stats)


def bind_sources(sources: Sequence[SourceTable], mapping: MappingSet) -> list[tuple[TriplesMap, SourceTable]]:
    by_name = {s.name: s for s in sources}
    bindings = []
    for tm in mapping.triples_maps:
        if tm.source_name not in by_name:
            raise MissingSourceError(tm.source_name)
        bindings.append((tm, by_name[tm.source_name]))
    return bindings


def normalize_all(sources: Sequence[SourceTable], mapping: MappingSet) -> list[NormalizedTable]:
    """One normalized table per triples map, in mapping order."""
    return [normalize(src, tm) for tm, src in bind_sources(sources, mapping)]
