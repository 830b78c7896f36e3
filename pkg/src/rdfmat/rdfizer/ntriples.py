"""N-Triples rendering, writing and triple-level deduplication."""

from __future__ import annotations

import io
from typing import Hashable, Iterable, Iterator, Optional, TypeVar

from rdfmat.rdfizer.terms import RdfTerm, TermKind, Triple

_LITERAL_ESCAPES = str.maketrans({"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"})


def needs_escape(value: str) -> bool:
    # substring tests run at memchr speed, far ahead of a regex scan
    return '"' in value or "\\" in value or "\n" in value or "\r" in value or "\t" in value


def escape_literal(value: str) -> str:
    if '"' in value or "\\" in value or "\n" in value or "\r" in value or "\t" in value:
        return value.translate(_LITERAL_ESCAPES)
    return value


def literal_suffix(datatype_iri: Optional[str]) -> str:
    """Text that closes a literal object: the quote plus an optional ``^^<dt>``."""
    return '"' if datatype_iri is None else '"^^<' + datatype_iri + ">"


def render_term(term: RdfTerm) -> str:
    if term.kind is TermKind.IRI:
        return "<" + term.lexical + ">"
    return '"' + escape_literal(term.lexical) + literal_suffix(term.datatype_iri)


def render_triple(triple: Triple) -> str:
    s, p, o = triple
    return f"{render_term(s)} {render_term(p)} {render_term(o)} .\n"


def write_ntriples(triples: Iterable[Triple], out) -> int:
    """Write one N-Triples line per triple to ``out``; returns the count.

    ``out`` is normally a binary sink (UTF-8 is written); text streams are
    accepted as well.
    """
    text = isinstance(out, io.TextIOBase)
    count = 0
    for t in triples:
        line = render_triple(t)
        out.write(line if text else line.encode("utf-8"))
        count += 1
    return count


T = TypeVar("T", bound=Hashable)


def dedupe_triples(stream: Iterable[T], seen: Optional[set] = None) -> Iterator[T]:
    """Yield the first occurrence of each distinct item, dropping exact repeats."""
    if seen is None:
        seen = set()
    add = seen.add
    for item in stream:
        if item not in seen:
            add(item)
            yield item


class NullSink:
    """Text sink that discards everything written to it."""

    def write(self, text: str) -> int:
        return len(text)

    def close(self):
        pass


class DedupSink:
    """Text sink wrapper that drops N-Triples lines already written."""

    def __init__(self, inner):
        self.inner = inner
        self.seen: set[str] = set()
        self.dropped = 0

    def write(self, text: str) -> int:
        # only LF ends a line: other Unicode breaks may sit unescaped inside literals
        lines = [line + "\n" for line in text.split("\n")[:-1]]
        fresh = list(dedupe_triples(lines, self.seen))
        self.dropped += len(lines) - len(fresh)
        if fresh:
            self.inner.write("".join(fresh))
        return len(text)

    def close(self):
        self.inner.close()
