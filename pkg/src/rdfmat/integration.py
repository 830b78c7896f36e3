"""Subject-key merge of one class's normalized tables across sources."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from rdfmat.errors import RdfmatError
from rdfmat.mapping.model import ColumnRef, ConstantIri, PredicateObjectMap, TriplesMap
from rdfmat.normalization import NormalizedTable
from rdfmat.rdfizer.terms import RdfTerm, compile_template


@dataclass
class EntityRecord:
    subject_iri: str
    class_iri: str
    # predicate IRI -> ordered set of object terms (dict keys, values unused)
    attributes: dict[str, dict[RdfTerm, None]] = field(default_factory=dict)

    def add(self, predicate: str, term: RdfTerm) -> bool:
        values = self.attributes.setdefault(predicate, {})
        if term in values:
            return False
        values[term] = None
        return True

    def pairs(self):
        for predicate, values in self.attributes.items():
            for term in values:
                yield predicate, term


@dataclass
class IntegratedClass:
    class_iri: str
    entities: dict[str, EntityRecord] = field(default_factory=dict)

    def __len__(self):
        return len(self.entities)


@dataclass
class IntegrationDiagnostics:
    rows_seen: int = 0
    rows_skipped: int = 0
    entities_merged: int = 0
    duplicate_pairs_collapsed: int = 0

    def __iadd__(self, other: "IntegrationDiagnostics"):
        self.rows_seen += other.rows_seen
        self.rows_skipped += other.rows_skipped
        self.entities_merged += other.entities_merged
        self.duplicate_pairs_collapsed += other.duplicate_pairs_collapsed
        return self


def compile_object(pom: PredicateObjectMap, header: Sequence[str]) -> Callable[[tuple], Optional[RdfTerm]]:
    ref = pom.object_ref
    if isinstance(ref, ColumnRef):
        idx = list(header).index(ref.column)
        datatype = pom.datatype_iri
        return lambda row: None if row[idx] is None else RdfTerm.literal(row[idx], datatype)
    if isinstance(ref, ConstantIri):
        term = RdfTerm.iri(ref.iri)
        return lambda row: term
    expand = compile_template(ref, header)

    def from_template(row):
        iri = expand(row)
        return None if iri is None else RdfTerm.iri(iri)

    return from_template


def integrate(tables: Sequence[NormalizedTable], tm: TriplesMap) -> tuple[IntegratedClass, IntegrationDiagnostics]:
    """Merge rows of ``tables`` whose expanded subject IRIs coincide.

    Attribute values are unioned per predicate and conflicting values are
    all kept.  Rows whose subject cannot be expanded are skipped and
    counted in the returned diagnostics.
    """
    result = IntegratedClass(tm.class_iri)
    diag = IntegrationDiagnostics()
    entities = result.entities
    for table in tables:
        if table.class_iri != tm.class_iri:
            raise RdfmatError(f"table for class <{table.class_iri}> passed to map of <{tm.class_iri}>")
        subject = compile_template(tm.subject_map.template, table.header)
        objects = [(pom.predicate_iri, compile_object(pom, table.header)) for pom in tm.predicate_object_maps]
        for row in table.rows:
            diag.rows_seen += 1
            s = subject(row)
            if s is None:
                diag.rows_skipped += 1
                continue
            entity = entities.get(s)
            if entity is None:
                entity = entities[s] = EntityRecord(s, tm.class_iri)
            else:
                diag.entities_merged += 1
            for predicate, make in objects:
                term = make(row)
                if term is not None and not entity.add(predicate, term):
                    diag.duplicate_pairs_collapsed += 1
    return result, diag


def merge_into(target: IntegratedClass, other: IntegratedClass) -> IntegrationDiagnostics:
    """Union ``other``'s entities into ``target`` (same class); returns merge counters."""
    if target.class_iri != other.class_iri:
        raise RdfmatError(f"cannot merge <{other.class_iri}> into <{target.class_iri}>")
    diag = IntegrationDiagnostics()
    for s, record in other.entities.items():
        entity = target.entities.get(s)
        if entity is None:
            entity = target.entities[s] = EntityRecord(s, target.class_iri)
        else:
            diag.entities_merged += 1
        for predicate, term in record.pairs():
            if not entity.add(predicate, term):
                diag.duplicate_pairs_collapsed += 1
    return diag


def integrate_by_class(bindings) -> list[tuple[str, list[TriplesMap], IntegratedClass, IntegrationDiagnostics]]:
    """Integrate ``(TriplesMap, NormalizedTable)`` pairs, merging maps that share a class.

    Results follow the order in which each class first appears.
    """
    grouped: dict[str, list] = {}
    for tm, table in bindings:
        grouped.setdefault(tm.class_iri, []).append((tm, table))
    results = []
    for class_iri, pairs in grouped.items():
        merged = IntegratedClass(class_iri)
        diag = IntegrationDiagnostics()
        for tm, table in pairs:
            part, part_diag = integrate([table], tm)
            diag += part_diag
            diag += merge_into(merged, part)
        results.append((class_iri, [tm for tm, _ in pairs], merged, diag))
    return results
