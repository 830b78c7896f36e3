"""Delimited source loading, write-back and seeded row sampling.

All cells are strings; an empty cell is read as ``None``.  CSV follows
RFC 4180 quoting via the :mod:`csv` module, TSV is unquoted and may not
contain embedded tabs or line breaks.

Sampling draws from NumPy's PCG64 bit generator seeded with the caller's
64-bit seed and selects indices by partial Fisher-Yates shuffle, so the
same (table, fraction, seed) always yields the same rows.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from rdfmat.errors import (
    EmbeddedDelimiterError,
    HeaderError,
    InvalidFractionError,
    RaggedRowError,
    SourceEncodingError,
    SourceError,
)
from rdfmat.mapping.model import SourceFormat

Row = tuple  # tuple[Optional[str], ...]

AUTO = "auto"


def resolve_format(path, fmt=AUTO) -> SourceFormat:
    if isinstance(fmt, SourceFormat):
        return fmt
    if fmt is None or str(fmt).lower() == AUTO:
        return SourceFormat.from_name(str(path))
    return SourceFormat(str(fmt).upper())


def _check_header(header: list[str], path) -> tuple[str, ...]:
    if len(set(header)) != len(header):
        dupes = sorted({h for h in header if header.count(h) > 1})
        raise HeaderError(f"{path}: duplicate column name(s) {dupes}")
    return tuple(header)


def _lines_tsv(handle) -> Iterator[tuple[int, list[str]]]:
    for lineno, line in enumerate(handle, start=1):
        if line.endswith("\n"):
            line = line[:-2] if line.endswith("\r\n") else line[:-1]
        elif line.endswith("\r"):
            line = line[:-1]
        yield lineno, line.split("\t")


def _lines_csv(handle) -> Iterator[tuple[int, list[str]]]:
    reader = csv.reader(handle, strict=True)
    try:
        for cells in reader:
            yield reader.line_num, cells or [""]
    except csv.Error as exc:
        raise SourceError(f"line {reader.line_num}: malformed CSV ({exc})") from exc


def _iter_file(path, fmt: SourceFormat) -> Iterator[tuple[int, list[str]]]:
    splitter = _lines_tsv if fmt is SourceFormat.TSV else _lines_csv
    try:
        with open(path, encoding="utf-8-sig", newline="") as handle:
            yield from splitter(handle)
    except UnicodeDecodeError as exc:
        raise SourceEncodingError(f"{path}: invalid UTF-8 ({exc.reason} at byte {exc.start})") from exc


def read_header(path, fmt=AUTO) -> tuple[str, ...]:
    fmt = resolve_format(path, fmt)
    for _, cells in _iter_file(path, fmt):
        return _check_header(cells, path)
    raise HeaderError(f"{path}: missing header row")


class StreamedRows:
    """Re-iterable row view that re-reads the file on every iteration."""

    def __init__(self, path, fmt: SourceFormat, width: int):
        self.path = Path(path)
        self.format = fmt
        self.width = width

    def __iter__(self) -> Iterator[Row]:
        width = self.width
        lines = _iter_file(self.path, self.format)
        next(lines, None)
        for lineno, cells in lines:
            if len(cells) != width:
                raise RaggedRowError(lineno, width, len(cells))
            yield tuple([c or None for c in cells])


@dataclass(frozen=True)
class SourceTable:
    name: str
    header: tuple[str, ...]
    rows: Union[tuple[Row, ...], StreamedRows]
    format: SourceFormat = SourceFormat.CSV

    @property
    def materialized(self) -> bool:
        return isinstance(self.rows, tuple)

    def materialize(self) -> "SourceTable":
        if self.materialized:
            return self
        return SourceTable(self.name, self.header, tuple(self.rows), self.format)

    def __len__(self):
        if not self.materialized:
            raise TypeError("row count of a streamed table is unknown; call materialize() first")
        return len(self.rows)


def load_source(path, format=AUTO, *, name: Optional[str] = None, materialize: bool = True) -> SourceTable:
    """Load a CSV or TSV file with a mandatory header row.

    With ``materialize=False`` the rows are streamed from disk on every
    iteration instead of being held in memory.
    """
    fmt = resolve_format(path, format)
    header = read_header(path, fmt)
    rows = StreamedRows(path, fmt, len(header))
    table = SourceTable(name if name is not None else Path(path).name, header, rows, fmt)
    return table.materialize() if materialize else table


def _tsv_cell(value: Optional[str]) -> str:
    if value is None:
        return ""
    if "\t" in value or "\n" in value or "\r" in value:
        raise EmbeddedDelimiterError(f"TSV cell contains a tab or line break: {value!r}")
    return value


def write_rows(out, header: Sequence[str], rows: Iterable[Row], fmt: SourceFormat) -> int:
    """Write header + rows to a text stream; returns the number of data rows."""
    count = 0
    if fmt is SourceFormat.TSV:
        out.write("\t".join(_tsv_cell(h) for h in header) + "\n")
        for row in rows:
            out.write("\t".join([_tsv_cell(c) for c in row]) + "\n")
            count += 1
    else:
        # CRLF terminator so that cells holding a bare CR get quoted too
        writer = csv.writer(out, lineterminator="\r\n")
        try:
            writer.writerow(header)
            for row in rows:
                writer.writerow(["" if c is None else c for c in row])
                count += 1
        except csv.Error as exc:  # NUL characters cannot be written
            raise SourceError(f"cannot write CSV row {count + 1}: {exc}") from exc
    return count


def write_source(table: SourceTable, path) -> int:
    with open(path, "w", encoding="utf-8", newline="") as out:
        return write_rows(out, table.header, table.rows, table.format)


def dumps_source(table: SourceTable) -> str:
    buf = io.StringIO()
    write_rows(buf, table.header, table.rows, table.format)
    return buf.getvalue()


def sample_indices(n: int, k: int, seed: int) -> np.ndarray:
    """Choose ``k`` of ``range(n)`` uniformly without replacement, sorted ascending."""
    rng = np.random.Generator(np.random.PCG64(seed))
    if k == 0:
        return np.empty(0, dtype=np.int64)
    pool = np.arange(n, dtype=np.int64)
    # draw j_i uniform in [i, n) for i in 0..k-1, then swap pool[i] <-> pool[j_i]
    picks = rng.integers(np.arange(k, dtype=np.int64), n).tolist()
    pl = pool.tolist()
    for i, j in enumerate(picks):
        pl[i], pl[j] = pl[j], pl[i]
    chosen = np.array(pl[:k], dtype=np.int64)
    chosen.sort()
    return chosen


def sample_rows(table: SourceTable, fraction: float, seed: int) -> SourceTable:
    """Keep ``floor(fraction * rows)`` rows chosen uniformly without replacement.

    Rows keep their original relative order.  ``fraction`` must lie in (0, 1].
    """
    if not (isinstance(fraction, (int, float)) and 0.0 < fraction <= 1.0) or math.isnan(fraction):
        raise InvalidFractionError(f"fraction must be in (0, 1], got {fraction!r}")
    if not 0 <= int(seed) < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
    table = table.materialize()
    n = len(table.rows)
    if fraction == 1.0:
        return table
    k = math.floor(fraction * n)
    idx = sample_indices(n, k, int(seed))
    rows = table.rows
    return SourceTable(table.name, table.header, tuple(rows[i] for i in idx.tolist()), table.format)
