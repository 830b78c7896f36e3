from __future__ import annotations

from dataclasses import dataclass

from rdfmat.mapping.model import TriplesMap


@dataclass(frozen=True)
class MissingColumn:
    """A column named by a triples map that the bound source does not have."""

    column: str
    map_id: str = ""

    def __str__(self):
        return f"{self.map_id}: missing column {self.column!r}" if self.map_id else f"missing column {self.column!r}"


def validate_against_header(tm: TriplesMap, header) -> list[MissingColumn]:
    """One issue per distinct referenced column absent from ``header``, in first-use order."""
    present = set(header)
    return [MissingColumn(col, tm.id) for col in tm.referenced_columns() if col not in present]
