from rdfmat.rdfizer.terms import (
    RDF_TYPE_TERM,
    RdfTerm,
    SubjectSkipped,
    TermKind,
    Triple,
    compile_template,
    expand_template,
    object_term,
    percent_encode,
)
from rdfmat.rdfizer.ntriples import (
    dedupe_triples,
    escape_literal,
    render_term,
    render_triple,
    write_ntriples,
)
from rdfmat.rdfizer.strategies import (
    ExecutionPlan,
    Strategy,
    TripleStats,
    rdfize,
    rdfize_attribute_based,
    rdfize_class_based,
)

__all__ = [
    "RDF_TYPE_TERM",
    "ExecutionPlan",
    "RdfTerm",
    "Strategy",
    "SubjectSkipped",
    "TermKind",
    "Triple",
    "TripleStats",
    "compile_template",
    "dedupe_triples",
    "escape_literal",
    "expand_template",
    "object_term",
    "percent_encode",
    "rdfize",
    "rdfize_attribute_based",
    "rdfize_class_based",
    "render_term",
    "render_triple",
    "write_ntriples",
]
