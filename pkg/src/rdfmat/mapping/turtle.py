"""Recursive-descent reader for the Turtle subset used by mapping documents.

The reader produces a small generic graph (subjects with ordered
predicate/object lists, nested blank nodes inline); ``parser`` turns that
into the mapping model.  Grammar: ``docs/mapping-grammar.ebnf``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union
from urllib.parse import urljoin

from rdfmat.errors import MappingSyntaxError
from rdfmat.mapping.model import DEFAULT_BASE_IRI, is_absolute_iri

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    col: int


@dataclass(frozen=True)
class Iri:
    value: str
    line: int = 0
    col: int = 0


@dataclass(frozen=True)
class Literal:
    value: str
    line: int = 0
    col: int = 0


@dataclass
class BNode:
    properties: list  # [(Iri, Node)]
    line: int = 0
    col: int = 0


Node = Union[Iri, Literal, BNode]


@dataclass
class Statement:
    subject: Iri
    properties: list  # [(Iri, Node)]


_TOKEN_SPEC = [
    ("WS", r"[ \t\r\n]+"),
    ("COMMENT", r"#[^\r\n]*"),
    ("IRIREF", r"<[^<>\"{}|^`\\\x00-\x20]*>"),
    ("LONG_STRING", r'"""(?:[^"\\]|\\.|"(?!""))*"""' + r"|'''(?:[^'\\]|\\.|'(?!''))*'''"),
    ("STRING", r'"(?:[^"\\\r\n]|\\.)*"' + r"|'(?:[^'\\\r\n]|\\.)*'"),
    ("DIRECTIVE", r"@(?:prefix|base)\b"),
    ("SPARQL_DIRECTIVE", r"(?i:PREFIX|BASE)(?=[ \t\r\n])"),
    ("PNAME", r"(?:[A-Za-z][\w\-.]*)?:(?:[\w\-]+(?:[\w\-.]*[\w\-])?)?"),
    ("A", r"a(?=[ \t\r\n<\[\"'])"),
    ("PUNCT", r"\^\^|[.;,\[\]]"),
]
_MASTER = re.compile("|".join(f"(?P<{name}>{pat})" for name, pat in _TOKEN_SPEC))

_ESCAPES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


def _unescape(body: str, line: int, col: int) -> str:
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        nxt = body[i + 1] if i + 1 < len(body) else ""
        if nxt in _ESCAPES:
            out.append(_ESCAPES[nxt])
            i += 2
        elif nxt in ("u", "U"):
            width = 4 if nxt == "u" else 8
            digits = body[i + 2:i + 2 + width]
            if len(digits) != width or not all(c in "0123456789abcdefABCDEF" for c in digits):
                raise MappingSyntaxError(line, col, f"bad \\{nxt} escape")
            out.append(chr(int(digits, 16)))
            i += 2 + width
        elif nxt in "{}":
            # template brace escape, kept verbatim for IriTemplate.parse
            out.append("\\" + nxt)
            i += 2
        else:
            raise MappingSyntaxError(line, col, f"unknown escape \\{nxt}")
    return "".join(out)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        m = _MASTER.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise MappingSyntaxError(line, col, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        value = m.group()
        if kind not in ("WS", "COMMENT"):
            tokens.append(Token(kind, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


class TurtleReader:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.prefixes: dict[str, str] = {}
        self.base = DEFAULT_BASE_IRI

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, value: str | None = None) -> Token:
        tok = self.next()
        if tok.kind != kind or (value is not None and tok.value != value):
            want = value or kind
            got = tok.value or tok.kind
            raise MappingSyntaxError(tok.line, tok.col, f"expected {want!r}, found {got!r}")
        return tok

    def read(self) -> list[Statement]:
        statements = []
        while self.peek().kind != "EOF":
            tok = self.peek()
            if tok.kind == "DIRECTIVE":
                self._directive(turtle_style=True)
            elif tok.kind == "SPARQL_DIRECTIVE":
                self._directive(turtle_style=False)
            else:
                statements.append(self._statement())
        return statements

    def _directive(self, turtle_style: bool):
        tok = self.next()
        keyword = tok.value.lstrip("@").lower()
        if keyword == "prefix":
            name = self.expect("PNAME")
            if not name.value.endswith(":"):
                raise MappingSyntaxError(name.line, name.col, f"bad prefix name {name.value!r}")
            iri = self._iriref(self.expect("IRIREF"))
            self.prefixes[name.value[:-1]] = iri
        else:
            self.base = self._iriref(self.expect("IRIREF"))
        if turtle_style:
            self.expect("PUNCT", ".")

    def _iriref(self, tok: Token) -> str:
        raw = tok.value[1:-1]
        if is_absolute_iri(raw):
            return raw
        return urljoin(self.base, raw)

    def _iri(self, tok: Token) -> Iri:
        if tok.kind == "IRIREF":
            return Iri(self._iriref(tok), tok.line, tok.col)
        if tok.kind == "PNAME":
            prefix, _, local = tok.value.partition(":")
            if prefix not in self.prefixes:
                raise MappingSyntaxError(tok.line, tok.col, f"undeclared prefix {prefix!r}")
            return Iri(self.prefixes[prefix] + local, tok.line, tok.col)
        raise MappingSyntaxError(tok.line, tok.col, f"expected IRI, found {tok.value or tok.kind!r}")

    def _statement(self) -> Statement:
        tok = self.next()
        subject = self._iri(tok)
        props = self._predicate_object_list()
        self.expect("PUNCT", ".")
        return Statement(subject, props)

    def _predicate_object_list(self) -> list:
        props = []
        while True:
            tok = self.next()
            if tok.kind == "A":
                verb = Iri(RDF_TYPE, tok.line, tok.col)
            else:
                verb = self._iri(tok)
            props.append((verb, self._object()))
            while self.peek().value == ",":
                self.next()
                props.append((verb, self._object()))
            if self.peek().value != ";":
                return props
            while self.peek().value == ";":
                self.next()
            nxt = self.peek()
            if nxt.value in (".", "]") and nxt.kind == "PUNCT":
                return props

    def _object(self) -> Node:
        tok = self.next()
        if tok.kind in ("STRING", "LONG_STRING"):
            quote = 3 if tok.kind == "LONG_STRING" else 1
            value = _unescape(tok.value[quote:-quote], tok.line, tok.col)
            if self.peek().value == "^^":
                bad = self.peek()
                raise MappingSyntaxError(bad.line, bad.col, "typed literals are not supported")
            return Literal(value, tok.line, tok.col)
        if tok.kind == "PUNCT" and tok.value == "[":
            props = self._predicate_object_list()
            self.expect("PUNCT", "]")
            return BNode(props, tok.line, tok.col)
        return self._iri(tok)


def read_turtle(text: str) -> tuple[list[Statement], str]:
    """Read ``text`` into statements; returns them with the effective base IRI."""
    reader = TurtleReader(text)
    statements = reader.read()
    return statements, reader.base
