"""Reading, printing and checking a mapping document.

Run: python demos/01_mapping_documents.py
"""

# %%
from rdfmat.mapping import parse_mapping_document, serialize_mapping, validate_against_header

DOC = """
@prefix rr:  <http://www.w3.org/ns/r2rml#> .
@prefix rml: <http://semweb.mmlab.be/ns/rml#> .
@prefix ex:  <http://example.org/ontology/> .
@base <http://example.org/maps/> .

<Mutation> a rr:TriplesMap ;
    rml:logicalSource [ rml:source "mutations.tsv" ] ;
    rr:subjectMap [ rr:template "http://example.org/mutation/{MUTATION_ID}" ; rr:class ex:Mutation ] ;
    rr:predicateObjectMap [ rr:predicate ex:gene ;   rr:objectMap [ rml:reference "GENE" ] ] ;
    rr:predicateObjectMap [ rr:predicate ex:sample ; rr:objectMap [ rml:reference "SAMPLE" ] ] ;
    rr:predicateObjectMap [ rr:predicate ex:site ;   rr:objectMap [ rr:template "site/{SITE}" ] ] .
"""

mapping = parse_mapping_document(DOC)
tm = mapping.triples_maps[0]
print(tm.id)                      # relative <Mutation> resolved against @base
print(tm.logical_source.format)   # .tsv => TSV
print(tm.class_iri)
for pom in tm.predicate_object_maps:
    print(" ", pom.predicate_iri, "<-", pom.object_ref)

# %% canonical form: full IRIs, one block per map; reparsing gives the same structure
text = serialize_mapping(mapping)
print(text)
assert parse_mapping_document(text) == mapping
assert serialize_mapping(parse_mapping_document(text)) == text

# %% plan-time check against a concrete header
print(validate_against_header(tm, ["MUTATION_ID", "GENE", "SAMPLE", "SITE"]))  # []
for issue in validate_against_header(tm, ["MUTATION_ID", "GENE"]):
    print(issue)

# %% strict mode: anything outside the subset is an error, with a position
from rdfmat.errors import MappingSemanticError, MappingSyntaxError

try:
    parse_mapping_document(DOC.replace("rr:class ex:Mutation", "rr:class ex:Mutation ; rr:graphMap ex:G"))
except MappingSemanticError as exc:
    print("rejected:", exc)
try:
    parse_mapping_document(DOC.replace('"GENE"', '"GENE'))
except MappingSyntaxError as exc:
    print("rejected:", exc)
