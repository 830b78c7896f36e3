"""Class-based and attribute-based execution of triples maps.

Both strategies render N-Triples lines with the same per-value emitters so
that their outputs are set-equal and any timing gap comes from how often
the input is traversed:

* class-based: one pass per class; each row expands its subject once and
  emits ``rdf:type`` plus every mapped attribute together.
* attribute-based: one pass for ``rdf:type`` and one further pass per
  predicate-object map, expanding the subject again on every pass.
"""

from __future__ import annotations

import enum
import functools
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from operator import itemgetter
from pathlib import Path
from typing import Callable, Optional, Sequence, Union

from rdfmat import integration  # module import: integration itself imports rdfizer.terms
from rdfmat.mapping.model import ColumnRef, ConstantIri, PredicateObjectMap, TriplesMap
from rdfmat.mapping.vocab import RDF_TYPE
from rdfmat.normalization import NormalizedTable
from rdfmat.rdfizer.ntriples import DedupSink, NullSink, escape_literal, literal_suffix, render_term
from rdfmat.rdfizer.terms import compile_template

FLUSH_EVERY = 4096


class Strategy(enum.Enum):
    CLASS_BASED = "class"
    ATTRIBUTE_BASED = "attribute"

    @classmethod
    def parse(cls, value) -> "Strategy":
        if isinstance(value, cls):
            return value
        text = str(value).lower().replace("-", "_")
        aliases = {"class": cls.CLASS_BASED, "class_based": cls.CLASS_BASED, "classbased": cls.CLASS_BASED,
                   "attribute": cls.ATTRIBUTE_BASED, "attribute_based": cls.ATTRIBUTE_BASED,
                   "attributebased": cls.ATTRIBUTE_BASED}
        try:
            return aliases[text]
        except KeyError:
            raise ValueError(f"unknown strategy {value!r}") from None


Binding = tuple  # (TriplesMap, IntegratedClass | NormalizedTable)


@dataclass
class ExecutionPlan:
    strategy: Strategy
    bindings: list
    output_path: Optional[Union[str, Path]] = None  # None discards output
    dedup: bool = False

    def __post_init__(self):
        self.strategy = Strategy.parse(self.strategy)
        for tm, data in self.bindings:
            if data.class_iri != tm.class_iri:
                raise ValueError(f"binding for <{tm.id}> carries class <{data.class_iri}>")


@dataclass
class TripleStats:
    triples_emitted: int = 0
    subjects_emitted: int = 0
    rows_skipped: int = 0
    rows_processed: int = 0
    passes: int = 0
    duplicates_dropped: int = 0
    elapsed_seconds: float = 0.0
    passes_per_binding: list = field(default_factory=list)


def _object_renderer(pom: PredicateObjectMap, header: Sequence[str]) -> Callable[[tuple], Optional[str]]:
    """Row -> rendered N-Triples object (``None`` when the value is null)."""
    ref = pom.object_ref
    if isinstance(ref, ColumnRef):
        idx = list(header).index(ref.column)
        suffix = literal_suffix(pom.datatype_iri)

        def literal(row):
            v = row[idx]
            if v is None:
                return None
            return '"' + escape_literal(v) + suffix

        return literal
    if isinstance(ref, ConstantIri):
        constant = "<" + ref.iri + ">"
        return lambda row: constant
    expand = compile_template(ref, header)

    def iri(row):
        v = expand(row)
        return None if v is None else "<" + v + ">"

    return iri


class _Writer:
    """Buffered text writer over a file, a null sink or a dedup wrapper."""

    def __init__(self, path, dedup: bool):
        if path is None:
            self.sink = NullSink()
        else:
            self.sink = open(path, "w", encoding="utf-8", newline="\n")
        if dedup:
            self.sink = DedupSink(self.sink)
        self.buf: list[str] = []

    def flush(self):
        if self.buf:
            self.sink.write("".join(self.buf))
            self.buf = []

    def close(self):
        self.flush()
        self.sink.close()

    @property
    def dropped(self) -> int:
        return getattr(self.sink, "dropped", 0)


@contextmanager
def _timed(stats: TripleStats, plan: ExecutionPlan):
    writer = _Writer(plan.output_path, plan.dedup)
    start = time.perf_counter()
    try:
        yield writer
    finally:
        writer.close()
        stats.elapsed_seconds = time.perf_counter() - start
        stats.duplicates_dropped = writer.dropped


def _type_fragment(class_iri: str) -> str:
    return f" <{RDF_TYPE}> <{class_iri}> .\n"


def _compile_row_renderer(tm: TriplesMap, header: Sequence[str]):
    """Build a single-expression renderer for a whole row of this class.

    Returns ``(getter, render, triples_per_row)`` or ``None`` when an object
    map needs template expansion.  ``render(subject, values, fragments)``
    yields the ``rdf:type`` line and every attribute line in one f-string;
    it is only valid for rows whose referenced values are non-null and need
    no escaping.  Generated code holds indices only, never mapping text.
    """
    fragments = [_type_fragment(tm.class_iri)]
    pieces = ["{s}{C[0]}"]
    columns = []
    for pom in tm.predicate_object_maps:
        ref = pom.object_ref
        pred = " <" + pom.predicate_iri + "> "
        if isinstance(ref, ColumnRef):
            fragments.append(pred + '"')
            fragments.append(literal_suffix(pom.datatype_iri) + " .\n")
            pieces.append("{s}{C[%d]}{v[%d]}{C[%d]}" % (len(fragments) - 2, len(columns), len(fragments) - 1))
            columns.append(list(header).index(ref.column))
        elif isinstance(ref, ConstantIri):
            fragments.append(pred + "<" + ref.iri + "> .\n")
            pieces.append("{s}{C[%d]}" % (len(fragments) - 1))
        else:
            return None
    code = "lambda s, v, C: f'" + "".join(pieces) + "'"
    render = eval(compile(code, f"<row renderer {tm.id}>", "eval"), {})
    if not columns:
        get = lambda row: ()  # noqa: E731
    elif len(columns) == 1:
        idx = columns[0]
        get = lambda row: (row[idx],)  # noqa: E731
    else:
        get = itemgetter(*columns)
    return get, functools.partial(render, C=tuple(fragments)), 1 + len(tm.predicate_object_maps)


def _class_based_table(tm: TriplesMap, table: NormalizedTable, writer: _Writer, stats: TripleStats):
    header = table.header
    subject = compile_template(tm.subject_map.template, header)
    type_frag = _type_fragment(tm.class_iri)
    emitters = [(" <" + pom.predicate_iri + "> ", _object_renderer(pom, header))
                for pom in tm.predicate_object_maps]
    compiled = _compile_row_renderer(tm, header)
    buf = writer.buf
    append = buf.append
    triples = subjects = skipped = rows = 0
    for row in table.rows:
        rows += 1
        s = subject(row)
        if s is None:
            skipped += 1
            continue
        s = "<" + s + ">"
        subjects += 1
        if compiled is not None:
            get, render, per_row = compiled
            values = get(row)
            try:
                joined = "\x1f".join(values)
            except TypeError:  # a null value
                joined = None
            if joined is not None and not (
                '"' in joined or "\\" in joined or "\n" in joined or "\r" in joined or "\t" in joined
            ):
                append(render(s, values))
                triples += per_row
                if len(buf) >= FLUSH_EVERY:
                    writer.flush()
                    buf = writer.buf
                    append = buf.append
                continue
        parts = [s, type_frag]
        for pred, render_object in emitters:
            o = render_object(row)
            if o is not None:
                parts += (s, pred, o, " .\n")
        triples += (len(parts) >> 2) + 1
        append("".join(parts))
        if len(buf) >= FLUSH_EVERY:
            writer.flush()
            buf = writer.buf
            append = buf.append
    stats.triples_emitted += triples
    stats.subjects_emitted += subjects
    stats.rows_skipped += skipped
    stats.rows_processed += rows
    return 1


def _class_based_entities(tm: TriplesMap, data: integration.IntegratedClass, writer: _Writer, stats: TripleStats):
    type_frag = _type_fragment(tm.class_iri)
    predicates = list(dict.fromkeys(pom.predicate_iri for pom in tm.predicate_object_maps))
    pred_frags = [(p, " <" + p + "> ") for p in predicates]
    for entity in data.entities.values():
        stats.rows_processed += 1
        s = "<" + entity.subject_iri + ">"
        parts = [s, type_frag]
        for p, frag in pred_frags:
            for term in entity.attributes.get(p, ()):
                parts += (s, frag, render_term(term), " .\n")
        stats.triples_emitted += (len(parts) >> 2) + 1
        stats.subjects_emitted += 1
        writer.buf.append("".join(parts))
        if len(writer.buf) >= FLUSH_EVERY:
            writer.flush()
    return 1


def _attribute_based_table(tm: TriplesMap, table: NormalizedTable, writer: _Writer, stats: TripleStats):
    header = table.header
    type_frag = _type_fragment(tm.class_iri)
    passes = 0

    # pass 0: rdf:type
    subject = compile_template(tm.subject_map.template, header)
    passes += 1
    for row in table.rows:
        stats.rows_processed += 1
        s = subject(row)
        if s is None:
            stats.rows_skipped += 1
            continue
        stats.subjects_emitted += 1
        stats.triples_emitted += 1
        writer.buf.append("<" + s + ">" + type_frag)
        if len(writer.buf) >= FLUSH_EVERY:
            writer.flush()

    # one further pass per predicate-object map, subject re-expanded each time
    for pom in tm.predicate_object_maps:
        subject = compile_template(tm.subject_map.template, header)
        pred = " <" + pom.predicate_iri + "> "
        render = _object_renderer(pom, header)
        passes += 1
        emitted = 0
        buf = writer.buf
        append = buf.append
        for row in table.rows:
            s = subject(row)
            if s is None:
                continue
            o = render(row)
            if o is None:
                continue
            append("<" + s + ">" + pred + o + " .\n")
            emitted += 1
            if len(buf) >= FLUSH_EVERY:
                writer.flush()
                buf = writer.buf
                append = buf.append
        stats.triples_emitted += emitted
    return passes


def _attribute_based_entities(tm: TriplesMap, data: integration.IntegratedClass, writer: _Writer, stats: TripleStats):
    type_frag = _type_fragment(tm.class_iri)
    passes = 1
    for entity in data.entities.values():
        stats.rows_processed += 1
        stats.subjects_emitted += 1
        stats.triples_emitted += 1
        writer.buf.append("<" + entity.subject_iri + ">" + type_frag)
        if len(writer.buf) >= FLUSH_EVERY:
            writer.flush()
    done = set()
    for pom in tm.predicate_object_maps:
        p = pom.predicate_iri
        passes += 1
        # entity attributes are keyed by predicate; a repeated predicate was
        # already emitted in full by its first map's pass
        repeat = p in done
        done.add(p)
        frag = " <" + p + "> "
        for entity in data.entities.values():
            if repeat:
                continue
            for term in entity.attributes.get(p, ()):
                writer.buf.append("<" + entity.subject_iri + ">" + frag + render_term(term) + " .\n")
                stats.triples_emitted += 1
            if len(writer.buf) >= FLUSH_EVERY:
                writer.flush()
    return passes


def _run(plan: ExecutionPlan, on_table, on_entities) -> TripleStats:
    stats = TripleStats()
    with _timed(stats, plan) as writer:
        for tm, data in plan.bindings:
            if isinstance(data, integration.IntegratedClass):
                n = on_entities(tm, data, writer, stats)
            else:
                n = on_table(tm, data, writer, stats)
            stats.passes += n
            stats.passes_per_binding.append(n)
    return stats


def rdfize_class_based(plan: ExecutionPlan) -> TripleStats:
    """Materialize every binding in a single pass per class."""
    if plan.strategy is not Strategy.CLASS_BASED:
        raise ValueError("plan strategy is not class-based")
    return _run(plan, _class_based_table, _class_based_entities)


def rdfize_attribute_based(plan: ExecutionPlan) -> TripleStats:
    """Materialize every binding with one pass per attribute plus one for ``rdf:type``."""
    if plan.strategy is not Strategy.ATTRIBUTE_BASED:
        raise ValueError("plan strategy is not attribute-based")
    return _run(plan, _attribute_based_table, _attribute_based_entities)


def rdfize(plan: ExecutionPlan) -> TripleStats:
    if plan.strategy is Strategy.CLASS_BASED:
        return rdfize_class_based(plan)
    return rdfize_attribute_based(plan)
