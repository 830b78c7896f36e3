"""Turn Turtle statements into a :class:`MappingSet` (strict mode)."""

from __future__ import annotations

from rdfmat.errors import MappingSemanticError
from rdfmat.mapping import vocab
from rdfmat.mapping.model import (
    ColumnRef,
    ConstantIri,
    IriTemplate,
    LogicalSource,
    MappingSet,
    PredicateObjectMap,
    SourceFormat,
    SubjectMap,
    TriplesMap,
)
from rdfmat.mapping.turtle import BNode, Iri, Literal, read_turtle


def _where(node) -> str:
    return f" (line {node.line}, col {node.col})" if getattr(node, "line", 0) else ""


def _group(props, allowed: dict[str, bool], context: str, anchor) -> dict:
    """Collect properties by predicate, rejecting unknown or repeated ones.

    ``allowed`` maps predicate IRI -> whether it may repeat.
    """
    out: dict[str, list] = {}
    for pred, obj in props:
        if pred.value not in allowed:
            raise MappingSemanticError(f"unsupported property <{pred.value}> in {context}{_where(pred)}")
        if pred.value in out and not allowed[pred.value]:
            raise MappingSemanticError(f"repeated property <{pred.value}> in {context}{_where(pred)}")
        out.setdefault(pred.value, []).append(obj)
    return out


def _one(group: dict, pred: str, context: str, anchor):
    if pred not in group:
        raise MappingSemanticError(f"{context} lacks <{pred}>{_where(anchor)}")
    return group[pred][0]


def _literal(node, what: str) -> str:
    if not isinstance(node, Literal):
        raise MappingSemanticError(f"{what} must be a quoted string{_where(node)}")
    return node.value


def _iri(node, what: str) -> str:
    if not isinstance(node, Iri):
        raise MappingSemanticError(f"{what} must be an IRI{_where(node)}")
    return node.value


def _bnode(node, what: str) -> BNode:
    if not isinstance(node, BNode):
        raise MappingSemanticError(f"{what} must be a nested [ ... ] block{_where(node)}")
    return node


def _logical_source(node, map_id: str, source_format: SourceFormat | None) -> LogicalSource:
    bnode = _bnode(node, "rml:logicalSource")
    group = _group(
        bnode.properties,
        {vocab.RML_SOURCE: False, vocab.RML_REFERENCE_FORMULATION: False},
        "rml:logicalSource",
        bnode,
    )
    name = _literal(_one(group, vocab.RML_SOURCE, f"logical source of <{map_id}>", bnode), "rml:source")
    if vocab.RML_REFERENCE_FORMULATION in group:
        formulation = _iri(group[vocab.RML_REFERENCE_FORMULATION][0], "rml:referenceFormulation")
        if formulation != vocab.QL_CSV:
            raise MappingSemanticError(
                f"only ql:CSV reference formulation is supported, got <{formulation}>{_where(bnode)}"
            )
    return LogicalSource(name, source_format or SourceFormat.from_name(name))


def _subject_map(node, map_id: str, base: str) -> SubjectMap:
    bnode = _bnode(node, "rr:subjectMap")
    group = _group(bnode.properties, {vocab.RR_TEMPLATE: False, vocab.RR_CLASS: False}, "rr:subjectMap", bnode)
    context = f"subject map of <{map_id}>"
    template = IriTemplate.parse(_literal(_one(group, vocab.RR_TEMPLATE, context, bnode), "rr:template"))
    class_iri = _iri(_one(group, vocab.RR_CLASS, context, bnode), "rr:class")
    return SubjectMap(template.resolved(base), class_iri)


def _object_map(node, base: str):
    bnode = _bnode(node, "rr:objectMap")
    group = _group(
        bnode.properties,
        {vocab.RML_REFERENCE: False, vocab.RR_TEMPLATE: False, vocab.RR_CONSTANT: False, vocab.RR_DATATYPE: False},
        "rr:objectMap",
        bnode,
    )
    kinds = [k for k in (vocab.RML_REFERENCE, vocab.RR_TEMPLATE, vocab.RR_CONSTANT) if k in group]
    if len(kinds) != 1:
        raise MappingSemanticError(
            f"rr:objectMap needs exactly one of rml:reference, rr:template, rr:constant{_where(bnode)}"
        )
    kind = kinds[0]
    if kind == vocab.RML_REFERENCE:
        ref = ColumnRef(_literal(group[kind][0], "rml:reference"))
    elif kind == vocab.RR_TEMPLATE:
        ref = IriTemplate.parse(_literal(group[kind][0], "rr:template")).resolved(base)
    else:
        ref = ConstantIri(_iri(group[kind][0], "rr:constant"))
    datatype = None
    if vocab.RR_DATATYPE in group:
        datatype = _iri(group[vocab.RR_DATATYPE][0], "rr:datatype")
    return ref, datatype


def _predicate_object_map(node, base: str) -> PredicateObjectMap:
    bnode = _bnode(node, "rr:predicateObjectMap")
    group = _group(bnode.properties, {vocab.RR_PREDICATE: False, vocab.RR_OBJECT_MAP: False}, "rr:predicateObjectMap", bnode)
    predicate = _iri(_one(group, vocab.RR_PREDICATE, "rr:predicateObjectMap", bnode), "rr:predicate")
    ref, datatype = _object_map(_one(group, vocab.RR_OBJECT_MAP, "rr:predicateObjectMap", bnode), base)
    return PredicateObjectMap(predicate, ref, datatype)


def parse_mapping_document(text: str, source_format: SourceFormat | None = None) -> MappingSet:
    """Parse a mapping document into a :class:`MappingSet`.

    ``source_format`` overrides the CSV/TSV choice that is otherwise made
    from each logical source's file extension.

    Raises ``MappingSyntaxError`` for malformed Turtle, ``MappingSemanticError``
    for unsupported or incomplete maps and ``DuplicateIdError`` when a
    triples map IRI occurs twice.
    """
    statements, base = read_turtle(text)
    maps = []
    for st in statements:
        map_id = st.subject.value
        group = _group(
            st.properties,
            {
                vocab.RDF_TYPE: True,
                vocab.RML_LOGICAL_SOURCE: False,
                vocab.RR_SUBJECT_MAP: False,
                vocab.RR_PREDICATE_OBJECT_MAP: True,
            },
            f"<{map_id}>",
            st.subject,
        )
        for t in group.get(vocab.RDF_TYPE, []):
            if _iri(t, "rdf:type") != vocab.RR_TRIPLES_MAP:
                raise MappingSemanticError(f"<{map_id}> typed as <{t.value}>, expected rr:TriplesMap{_where(t)}")
        context = f"triples map <{map_id}>"
        source = _logical_source(_one(group, vocab.RML_LOGICAL_SOURCE, context, st.subject), map_id, source_format)
        subject = _subject_map(_one(group, vocab.RR_SUBJECT_MAP, context, st.subject), map_id, base)
        poms = tuple(_predicate_object_map(n, base) for n in group.get(vocab.RR_PREDICATE_OBJECT_MAP, []))
        maps.append(TriplesMap(map_id, source, subject, poms))
    return MappingSet(tuple(maps), base)
