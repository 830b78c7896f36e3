"""Canonical Turtle rendering of a :class:`MappingSet`.

Vocabulary terms are written with the standard prefixes; every other IRI
is written in full, so the output does not depend on how the source
document chose its prefixes.
"""

from __future__ import annotations

from rdfmat.mapping import vocab
from rdfmat.mapping.model import ColumnRef, ConstantIri, IriTemplate, MappingSet, TriplesMap

_STRING_ESCAPES = str.maketrans({"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"})


def _string(value: str) -> str:
    return '"' + value.translate(_STRING_ESCAPES) + '"'


def _iri(value: str) -> str:
    return "<" + value + ">"


def prefix_block(base_iri: str) -> str:
    lines = [f"@prefix {name}: <{iri}> ." for name, iri in vocab.STANDARD_PREFIXES]
    lines.append(f"@base <{base_iri}> .")
    return "\n".join(lines) + "\n"


def _triples_map(tm: TriplesMap) -> str:
    out = [f"{_iri(tm.id)} a rr:TriplesMap ;"]
    out.append("    rml:logicalSource [")
    out.append(f"        rml:source {_string(tm.logical_source.source_name)} ;")
    out.append("        rml:referenceFormulation ql:CSV")
    out.append("    ] ;")
    out.append("    rr:subjectMap [")
    out.append(f"        rr:template {_string(tm.subject_map.template.to_string())} ;")
    out.append(f"        rr:class {_iri(tm.subject_map.class_iri)}")
    out.append("    ]")
    for pom in tm.predicate_object_maps:
        out[-1] += " ;"
        ref = pom.object_ref
        if isinstance(ref, ColumnRef):
            body = f"rml:reference {_string(ref.column)}"
            if pom.datatype_iri is not None:
                body += f" ; rr:datatype {_iri(pom.datatype_iri)}"
        elif isinstance(ref, IriTemplate):
            body = f"rr:template {_string(ref.to_string())}"
        elif isinstance(ref, ConstantIri):
            body = f"rr:constant {_iri(ref.iri)}"
        else:  # pragma: no cover - guarded by PredicateObjectMap
            raise TypeError(ref)
        out.append("    rr:predicateObjectMap [")
        out.append(f"        rr:predicate {_iri(pom.predicate_iri)} ;")
        out.append(f"        rr:objectMap [ {body} ]")
        out.append("    ]")
    out[-1] += " ."
    return "\n".join(out) + "\n"


def serialize_mapping(mapping: MappingSet) -> str:
    parts = [prefix_block(mapping.base_iri)]
    parts.extend(_triples_map(tm) for tm in mapping.triples_maps)
    return "\n".join(parts)
