from rdfmat.mapping.model import (
    DEFAULT_BASE_IRI,
    ColumnRef,
    ConstantIri,
    IriTemplate,
    LogicalSource,
    MappingSet,
    Placeholder,
    PredicateObjectMap,
    SourceFormat,
    SubjectMap,
    TriplesMap,
)
from rdfmat.mapping.parser import parse_mapping_document
from rdfmat.mapping.serialize import serialize_mapping
from rdfmat.mapping.validate import MissingColumn, validate_against_header

__all__ = [
    "DEFAULT_BASE_IRI",
    "ColumnRef",
    "ConstantIri",
    "IriTemplate",
    "LogicalSource",
    "MappingSet",
    "MissingColumn",
    "Placeholder",
    "PredicateObjectMap",
    "SourceFormat",
    "SubjectMap",
    "TriplesMap",
    "parse_mapping_document",
    "serialize_mapping",
    "validate_against_header",
]
