"""IRI templates, literal escaping and the N-Triples writer.

Run: python demos/02_templates_and_ntriples.py
"""

# %%
import io

from rdfmat.mapping import IriTemplate
from rdfmat.rdfizer import RdfTerm, SubjectSkipped, Triple, dedupe_triples, expand_template, write_ntriples

t = IriTemplate.parse("http://ex.org/mutation/{MUTATION_ID}")
print(expand_template(t, {"MUTATION_ID": "COSM521"}))
print(expand_template(t, {"MUTATION_ID": "A B/C"}))       # data is percent-encoded
print(expand_template(t, {"MUTATION_ID": "p.V600E?x=1"}))
print(expand_template(t, {"MUTATION_ID": None}) is SubjectSkipped)

# literal braces in fixed template text
print(IriTemplate.parse(r"http://ex.org/\{raw\}/{ID}").segments)

# %% literals are stored raw and escaped only when written
s, p = RdfTerm.iri("http://ex.org/s"), RdfTerm.iri("http://ex.org/p")
triples = [
    Triple(s, p, RdfTerm.literal('a"b')),
    Triple(s, p, RdfTerm.literal("two\nlines\tand a tab")),
    Triple(s, p, RdfTerm.literal("42", "http://www.w3.org/2001/XMLSchema#integer")),
    Triple(s, p, RdfTerm.literal('a"b')),
]
out = io.BytesIO()
n = write_ntriples(dedupe_triples(triples), out)
print(n, "lines")
print(out.getvalue().decode("utf-8"))
