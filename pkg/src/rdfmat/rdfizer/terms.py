"""RDF terms, triples and IRI template expansion."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Mapping, NamedTuple, Optional, Sequence
from urllib.parse import quote

from rdfmat.errors import UnknownPlaceholderError
from rdfmat.mapping.model import ColumnRef, ConstantIri, IriTemplate, Placeholder, PredicateObjectMap
from rdfmat.mapping.vocab import RDF_TYPE


class TermKind(enum.Enum):
    IRI = "IRI"
    LITERAL = "Literal"


@dataclass(frozen=True)
class RdfTerm:
    kind: TermKind
    lexical: str
    datatype_iri: Optional[str] = None

    @classmethod
    def iri(cls, value: str) -> "RdfTerm":
        return cls(TermKind.IRI, value)

    @classmethod
    def literal(cls, value: str, datatype_iri: Optional[str] = None) -> "RdfTerm":
        return cls(TermKind.LITERAL, value, datatype_iri)

    @property
    def is_iri(self) -> bool:
        return self.kind is TermKind.IRI


class Triple(NamedTuple):
    subject: RdfTerm
    predicate: RdfTerm
    object: RdfTerm


class _SubjectSkipped:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "SubjectSkipped"

    def __bool__(self):
        return False


SubjectSkipped = _SubjectSkipped()

RDF_TYPE_TERM = RdfTerm.iri(RDF_TYPE)


def percent_encode(value: str) -> str:
    """Percent-encode every character outside the RFC 3986 unreserved set."""
    return quote(value, safe="")


def expand_template(template: IriTemplate, values: Mapping[str, Optional[str]]):
    """Substitute percent-encoded column values into ``template``.

    Returns ``SubjectSkipped`` if any placeholder value is null and raises
    ``UnknownPlaceholderError`` if a placeholder has no key in ``values``.
    """
    out = []
    skipped = False
    for seg in template.segments:
        if isinstance(seg, Placeholder):
            if seg.column not in values:
                raise UnknownPlaceholderError(seg.column)
            value = values[seg.column]
            if value is None:
                skipped = True
                continue
            out.append(percent_encode(value))
        else:
            out.append(seg)
    return SubjectSkipped if skipped else "".join(out)


def compile_template(template: IriTemplate, header: Sequence[str]) -> Callable[[tuple], Optional[str]]:
    """Positional version of :func:`expand_template` for rows laid out by ``header``.

    The returned function gives the expanded IRI, or ``None`` when a
    placeholder cell is null.
    """
    position = {name: i for i, name in enumerate(header)}
    parts = []
    for seg in template.segments:
        if isinstance(seg, Placeholder):
            if seg.column not in position:
                raise UnknownPlaceholderError(seg.column)
            parts.append(position[seg.column])
        else:
            parts.append(seg)

    if len(parts) == 2 and isinstance(parts[0], str) and isinstance(parts[1], int):
        prefix, idx = parts

        def expand_prefixed(row):
            v = row[idx]
            if v is None:
                return None
            return prefix + quote(v, safe="")

        return expand_prefixed

    def expand(row):
        out = []
        for p in parts:
            if p.__class__ is int:
                v = row[p]
                if v is None:
                    return None
                out.append(quote(v, safe=""))
            else:
                out.append(p)
        return "".join(out)

    return expand


def object_term(pom: PredicateObjectMap, values: Mapping[str, Optional[str]]) -> Optional[RdfTerm]:
    """The object a predicate-object map yields for one row, or ``None`` if null."""
    ref = pom.object_ref
    if isinstance(ref, ColumnRef):
        if ref.column not in values:
            raise UnknownPlaceholderError(ref.column)
        value = values[ref.column]
        return None if value is None else RdfTerm.literal(value, pom.datatype_iri)
    if isinstance(ref, ConstantIri):
        return RdfTerm.iri(ref.iri)
    iri = expand_template(ref, values)
    return None if iri is SubjectSkipped else RdfTerm.iri(iri)
