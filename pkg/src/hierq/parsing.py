"""Readers and writers for query, fact and graph files.

Query files hold one datalog-style rule, ``Q :- R(A,B), S(A).``; fact
files hold one fact per line, ``R(1,"x").``, with an ``@ p`` probability
suffix in probabilistic mode; graph files hold one edge ``u v`` per line
(a lone vertex on a line declares an isolated vertex).  ``%`` starts a
comment that runs to the end of the line.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .applications import ProbabilisticDatabase
from .errors import DuplicateFact, ParseError, ProbabilityOutOfRange, SelfLoop
from .hardness import Graph
from .query import (
    Atom,
    Database,
    Fact,
    Query,
    domain_key,
    format_constant,
    validate_query,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r﻿]+)
  | (?P<nl>\n)
  | (?P<comment>%[^\n]*)
  | (?P<neck>:-)
  | (?P<punct>[(),.@])
  | (?P<float>[+-]?(?:\d+\.\d+(?:[eE][+-]?\d+)?|\d+[eE][+-]?\d+))
  | (?P<int>[+-]?\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(line, col, "a token", text[pos])
        kind = m.lastgroup
        if kind == "nl":
            tokens.append(Token("nl", "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Cursor:
    def __init__(self, tokens: list[Token], skip_newlines: bool):
        if skip_newlines:
            tokens = [t for t in tokens if t.kind != "nl"]
        self.tokens = tokens
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, text: str | None = None, what: str | None = None) -> Token:
        tok = self.peek
        if tok.kind != kind or (text is not None and tok.text != text):
            raise ParseError(tok.line, tok.col, what or repr(text or kind), tok.text or "end of input")
        return self.take()

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        tok = self.peek
        if tok.kind == kind and (text is None or tok.text == text):
            return self.take()
        return None


# ---------------------------------------------------------------- queries


def parse_query_file(text: str) -> Query:
    cur = _Cursor(tokenize(text), skip_newlines=True)
    head = cur.expect("ident", what="query head name")
    if cur.accept("punct", "("):
        cur.expect("punct", ")", what="')' (queries are Boolean)")
    cur.expect("neck", what="':-'")
    atoms = [_query_atom(cur)]
    while cur.accept("punct", ","):
        atoms.append(_query_atom(cur))
    cur.expect("punct", ".", what="',' or '.'")
    cur.expect("eof", what="end of input after the rule")
    return validate_query(atoms, name=head.text)


def _query_atom(cur: _Cursor) -> Atom:
    rel = cur.expect("ident", what="relation name")
    cur.expect("punct", "(", what="'('")
    names: list[str] = []
    if not cur.accept("punct", ")"):
        while True:
            tok = cur.peek
            if tok.kind != "ident":
                raise ParseError(tok.line, tok.col, "variable (queries take no constants)", tok.text)
            names.append(cur.take().text)
            if cur.accept("punct", ")"):
                break
            cur.expect("punct", ",", what="',' or ')'")
    return Atom(rel.text, tuple(names))


def format_query(q: Query) -> str:
    return q.to_text() + "\n"


# ------------------------------------------------------------------ facts


def _constant(cur: _Cursor):
    tok = cur.peek
    if tok.kind == "int":
        return int(cur.take().text)
    if tok.kind == "string":
        return json.loads(cur.take().text)
    raise ParseError(tok.line, tok.col, "integer or quoted string constant", tok.text)


def _fact(cur: _Cursor) -> Fact:
    rel = cur.expect("ident", what="relation name")
    cur.expect("punct", "(", what="'('")
    values = []
    if not cur.accept("punct", ")"):
        while True:
            values.append(_constant(cur))
            if cur.accept("punct", ")"):
                break
            cur.expect("punct", ",", what="',' or ')'")
    return Fact(rel.text, tuple(values))


def _fact_lines(text: str, prob: bool) -> Iterator[tuple[Fact, float | None, int]]:
    cur = _Cursor(tokenize(text), skip_newlines=False)
    while True:
        while cur.accept("nl"):
            pass
        if cur.accept("eof"):
            return
        line = cur.peek.line
        fact = _fact(cur)
        p = None
        if prob:
            cur.expect("punct", "@", what="'@ probability'")
            tok = cur.peek
            if tok.kind not in ("int", "float"):
                raise ParseError(tok.line, tok.col, "probability", tok.text)
            p = float(cur.take().text)
            if not 0.0 <= p <= 1.0:
                raise ProbabilityOutOfRange(f"line {tok.line}: probability {p} outside [0, 1]")
        cur.expect("punct", ".", what="'.'" if not prob else "'.' after the probability")
        tok = cur.peek
        if tok.kind not in ("nl", "eof"):
            raise ParseError(tok.line, tok.col, "end of line after a fact", tok.text)
        yield fact, p, line


def parse_facts_file(text: str, mode: str = "plain") -> Database | ProbabilisticDatabase:
    if mode not in ("plain", "prob"):
        raise ValueError(f"unknown mode {mode!r}")
    seen: dict[Fact, float | None] = {}
    for fact, p, line in _fact_lines(text, mode == "prob"):
        if fact in seen:
            raise DuplicateFact(fact, line)
        seen[fact] = p
    if mode == "prob":
        return ProbabilisticDatabase(seen)
    return Database(seen)


def format_fact(f: Fact) -> str:
    return f"{f.relation}({','.join(format_constant(v) for v in f.values)})."


def format_facts(d: Database | Iterable[Fact]) -> str:
    return "".join(format_fact(f) + "\n" for f in sorted(d))


def format_prob_facts(pd: ProbabilisticDatabase) -> str:
    return "".join(
        f"{format_fact(f)[:-1]} @ {pd.facts[f]!r}.\n" for f in sorted(pd.facts)
    )


# ------------------------------------------------------------------ graphs


def _vertex(tok: Token):
    if tok.kind == "int":
        return int(tok.text)
    if tok.kind == "ident":
        return tok.text
    if tok.kind == "string":
        return json.loads(tok.text)
    raise ParseError(tok.line, tok.col, "vertex label", tok.text)


def parse_graph_file(text: str) -> Graph:
    by_line: dict[int, list[Token]] = {}
    for tok in tokenize(text):
        if tok.kind not in ("nl", "eof"):
            by_line.setdefault(tok.line, []).append(tok)
    vertices = set()
    edges = []
    for line in sorted(by_line):
        toks = by_line[line]
        if len(toks) > 2:
            raise ParseError(line, toks[2].col, "end of line after an edge", toks[2].text)
        labels = [_vertex(t) for t in toks]
        vertices.update(labels)
        if len(labels) == 2:
            if labels[0] == labels[1]:
                raise SelfLoop(labels[0])
            edges.append(tuple(labels))
    return Graph.from_edges(edges, vertices)


def format_graph(g: Graph) -> str:
    lines = []
    touched = set()
    for e in sorted(g.edges, key=lambda e: sorted(map(domain_key, e))):
        u, v = sorted(e, key=domain_key)
        touched.update((u, v))
        lines.append(f"{format_constant(u)} {format_constant(v)}")
    for v in g.sorted_vertices():
        if v not in touched:
            lines.append(format_constant(v))
    return "".join(line + "\n" for line in lines)
