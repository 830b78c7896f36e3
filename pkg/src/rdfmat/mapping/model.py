"""Immutable data model for the supported RML subset."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Optional, Union

from rdfmat.errors import DuplicateIdError, MappingSemanticError

_SCHEME = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")


def is_absolute_iri(value: str) -> bool:
    return bool(_SCHEME.match(value))


class SourceFormat(enum.Enum):
    CSV = "CSV"
    TSV = "TSV"

    @classmethod
    def from_name(cls, source_name: str) -> "SourceFormat":
        return cls.TSV if source_name.lower().endswith(".tsv") else cls.CSV


@dataclass(frozen=True)
class Placeholder:
    column: str

    def __post_init__(self):
        if not self.column:
            raise MappingSemanticError("empty template placeholder")


@dataclass(frozen=True)
class IriTemplate:
    """An IRI pattern made of literal text and column placeholders.

    ``{COL}`` marks a placeholder; ``\\{`` and ``\\}`` are literal braces.
    """

    segments: tuple[Union[str, Placeholder], ...]

    @classmethod
    def parse(cls, text: str) -> "IriTemplate":
        segments: list[Union[str, Placeholder]] = []
        buf: list[str] = []
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch == "\\" and i + 1 < n and text[i + 1] in "{}\\":
                buf.append(text[i + 1])
                i += 2
            elif ch == "{":
                end = text.find("}", i + 1)
                if end < 0:
                    raise MappingSemanticError(f"unterminated placeholder in template {text!r}")
                if buf:
                    segments.append("".join(buf))
                    buf = []
                segments.append(Placeholder(text[i + 1:end]))
                i = end + 1
            elif ch == "}":
                raise MappingSemanticError(f"unbalanced '}}' in template {text!r}")
            else:
                buf.append(ch)
                i += 1
        if buf:
            segments.append("".join(buf))
        return cls(tuple(segments))

    @property
    def placeholders(self) -> tuple[str, ...]:
        return tuple(s.column for s in self.segments if isinstance(s, Placeholder))

    def to_string(self) -> str:
        out = []
        for seg in self.segments:
            if isinstance(seg, Placeholder):
                out.append("{" + seg.column + "}")
            else:
                out.append(seg.replace("\\", "\\\\").replace("{", "\\{").replace("}", "\\}"))
        return "".join(out)

    def resolved(self, base_iri: str) -> "IriTemplate":
        """Return the template made absolute against ``base_iri`` if needed."""
        head = self.segments[0] if self.segments else ""
        if isinstance(head, str) and is_absolute_iri(head):
            return self
        if isinstance(head, str):
            return IriTemplate((base_iri + head,) + self.segments[1:])
        return IriTemplate((base_iri,) + self.segments)


@dataclass(frozen=True)
class ColumnRef:
    column: str


@dataclass(frozen=True)
class ConstantIri:
    iri: str


ObjectRef = Union[ColumnRef, ConstantIri, IriTemplate]


@dataclass(frozen=True)
class LogicalSource:
    source_name: str
    format: SourceFormat = SourceFormat.CSV

    def __post_init__(self):
        if not self.source_name:
            raise MappingSemanticError("logical source name is empty")


@dataclass(frozen=True)
class SubjectMap:
    template: IriTemplate
    class_iri: str

    def __post_init__(self):
        if not self.template.placeholders:
            raise MappingSemanticError("subject template has no placeholder")
        if not is_absolute_iri(self.class_iri):
            raise MappingSemanticError(f"class IRI is not absolute: {self.class_iri}")


@dataclass(frozen=True)
class PredicateObjectMap:
    predicate_iri: str
    object_ref: ObjectRef
    datatype_iri: Optional[str] = None

    def __post_init__(self):
        if not is_absolute_iri(self.predicate_iri):
            raise MappingSemanticError(f"predicate IRI is not absolute: {self.predicate_iri}")
        if not isinstance(self.object_ref, (ColumnRef, ConstantIri, IriTemplate)):
            raise MappingSemanticError(f"unsupported object reference {self.object_ref!r}")
        if self.datatype_iri is not None:
            if not isinstance(self.object_ref, ColumnRef):
                raise MappingSemanticError("rr:datatype only applies to rml:reference objects")
            if not is_absolute_iri(self.datatype_iri):
                raise MappingSemanticError(f"datatype IRI is not absolute: {self.datatype_iri}")

    @property
    def columns(self) -> tuple[str, ...]:
        if isinstance(self.object_ref, ColumnRef):
            return (self.object_ref.column,)
        if isinstance(self.object_ref, IriTemplate):
            return self.object_ref.placeholders
        return ()


@dataclass(frozen=True)
class TriplesMap:
    id: str
    logical_source: LogicalSource
    subject_map: SubjectMap
    predicate_object_maps: tuple[PredicateObjectMap, ...] = ()

    @property
    def class_iri(self) -> str:
        return self.subject_map.class_iri

    @property
    def source_name(self) -> str:
        return self.logical_source.source_name

    def referenced_columns(self) -> list[str]:
        """Columns used by the subject template, then by each object map, first use wins."""
        seen: dict[str, None] = {}
        for col in self.subject_map.template.placeholders:
            seen.setdefault(col)
        for pom in self.predicate_object_maps:
            for col in pom.columns:
                seen.setdefault(col)
        return list(seen)


DEFAULT_BASE_IRI = "http://example.org/mapping/"


@dataclass(frozen=True)
class MappingSet:
    triples_maps: tuple[TriplesMap, ...] = ()
    base_iri: str = DEFAULT_BASE_IRI
    _by_id: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {}
        for tm in self.triples_maps:
            if tm.id in index:
                raise DuplicateIdError(tm.id)
            index[tm.id] = tm
        object.__setattr__(self, "_by_id", index)

    def __getitem__(self, map_id: str) -> TriplesMap:
        return self._by_id[map_id]

    def __len__(self):
        return len(self.triples_maps)

    def __iter__(self):
        return iter(self.triples_maps)
