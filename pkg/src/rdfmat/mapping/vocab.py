RR = "http://www.w3.org/ns/r2rml#"
RML = "http://semweb.mmlab.be/ns/rml#"
QL = "http://semweb.mmlab.be/ns/ql#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
XSD = "http://www.w3.org/2001/XMLSchema#"

RDF_TYPE = RDF + "type"

RR_TRIPLES_MAP = RR + "TriplesMap"
RR_SUBJECT_MAP = RR + "subjectMap"
RR_TEMPLATE = RR + "template"
RR_CLASS = RR + "class"
RR_PREDICATE_OBJECT_MAP = RR + "predicateObjectMap"
RR_PREDICATE = RR + "predicate"
RR_OBJECT_MAP = RR + "objectMap"
RR_CONSTANT = RR + "constant"
RR_DATATYPE = RR + "datatype"

RML_LOGICAL_SOURCE = RML + "logicalSource"
RML_SOURCE = RML + "source"
RML_REFERENCE_FORMULATION = RML + "referenceFormulation"
RML_REFERENCE = RML + "reference"

QL_CSV = QL + "CSV"

STANDARD_PREFIXES = (
    ("rr", RR),
    ("rml", RML),
    ("ql", QL),
    ("rdf", RDF),
    ("xsd", XSD),
)
