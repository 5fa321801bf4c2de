"""Text front end for quivers with relations.

Example::

    # Jordan quiver, truncated
    vertices v;
    arrows x: v -> v;
    relations x^3;
    ring Z;

Relations are kept as source fragments here; :mod:`atomspec.algebra`
resolves them against the quiver and ring.  Composites are written in
composition order, ``b*a`` meaning "first a, then b".
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .quiver import Arrow, Quiver
from .rings import BaseRing

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>#[^\n]*)|(?P<nl>\n)"
    r"|(?P<arrow>->)|(?P<sym>[;:,+\-*^/])|(?P<word>[A-Za-z0-9_.']+)"
)

KEYWORDS = ("vertices", "arrows", "relations", "ring")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int
    offset: int


@dataclass(frozen=True)
class RelationSource:
    text: str
    line: int
    col: int


@dataclass(frozen=True)
class ParsedInput:
    quiver: Quiver
    relations: tuple[RelationSource, ...]
    ring: BaseRing


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("arrow", "sym", "word"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1, pos))
        pos = m.end()
    return tokens


class _Cursor:
    def __init__(self, tokens: list[Token], text: str):
        self.tokens = tokens
        self.text = text
        self.i = 0

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self, what: str) -> Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else Token("eof", "", 1, 1, 0)
            raise ParseError(f"unexpected end of input, expected {what}", last.line, last.col + len(last.text))
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.next(repr(text))
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def ident(self, what: str) -> Token:
        tok = self.next(what)
        if tok.kind != "word" or tok.text in KEYWORDS:
            raise ParseError(f"expected {what}, found {tok.text!r}", tok.line, tok.col)
        return tok


def parse_quiver(text: str) -> ParsedInput:
    """Parse DSL source into the quiver, raw relation fragments and base ring."""
    cur = _Cursor(tokenize(text), text)
    vertices: list[str] = []
    arrows: list[Arrow] = []
    arrow_tokens: list[tuple[Token, Token, Token]] = []
    relations: list[RelationSource] = []
    ring: BaseRing | None = None
    seen: dict[str, Token] = {}

    def claim(tok: Token) -> None:
        if tok.text in seen:
            first = seen[tok.text]
            raise ParseError(
                f"duplicate identifier {tok.text!r} (first declared at line {first.line}, col {first.col})",
                tok.line,
                tok.col,
            )
        seen[tok.text] = tok

    while cur.peek() is not None:
        kw = cur.next("statement")
        if kw.text == "vertices":
            tok = cur.ident("vertex identifier")
            while True:
                claim(tok)
                vertices.append(tok.text)
                if cur.peek() is not None and cur.peek().text == ";":
                    break
                tok = cur.ident("vertex identifier or ';'")
            cur.expect(";")
        elif kw.text == "arrows":
            while True:
                name = cur.ident("arrow identifier")
                if not re.match(r"[A-Za-z_]", name.text):
                    raise ParseError(f"arrow identifier {name.text!r} must start with a letter", name.line, name.col)
                claim(name)
                cur.expect(":")
                src = cur.ident("source vertex")
                cur.expect("->")
                tgt = cur.ident("target vertex")
                arrows.append(Arrow(name.text, src.text, tgt.text))
                arrow_tokens.append((name, src, tgt))
                sep = cur.next("',' or ';'")
                if sep.text == ";":
                    break
                if sep.text != ",":
                    raise ParseError(f"expected ',' or ';', found {sep.text!r}", sep.line, sep.col)
        elif kw.text == "relations":
            start = cur.peek()
            if start is None or start.text == ";":
                raise ParseError("empty relations statement", kw.line, kw.col)
            group: list[Token] = []
            while True:
                tok = cur.next("relation or ';'")
                if tok.kind == "word" and tok.text in KEYWORDS:
                    raise ParseError(f"expected ';' before {tok.text!r}", tok.line, tok.col)
                if tok.text in (",", ";"):
                    if not group:
                        raise ParseError("empty relation", tok.line, tok.col)
                    frag = text[group[0].offset : group[-1].offset + len(group[-1].text)]
                    relations.append(RelationSource(frag, group[0].line, group[0].col))
                    # syntax-check now so errors carry absolute positions
                    parse_expression(frag, group[0].line, group[0].col)
                    group = []
                    if tok.text == ";":
                        break
                else:
                    group.append(tok)
        elif kw.text == "ring":
            if ring is not None:
                raise ParseError("ring declared twice", kw.line, kw.col)
            parts: list[Token] = []
            while cur.peek() is not None and cur.peek().text != ";":
                parts.append(cur.next("ring"))
            cur.expect(";")
            spec = "".join(t.text for t in parts)
            try:
                ring = BaseRing.parse(spec)
            except ParseError as exc:
                raise ParseError(exc.message, kw.line, kw.col) from None
        else:
            raise ParseError(
                f"unknown statement {kw.text!r}; expected one of {', '.join(KEYWORDS)}", kw.line, kw.col
            )

    declared = set(vertices)
    for name, src, tgt in arrow_tokens:
        for end in (src, tgt):
            if end.text not in declared:
                raise ParseError(
                    f"arrow {name.text!r} references undeclared vertex {end.text!r}", end.line, end.col
                )
    trivial_names = {f"e_{v}" for v in vertices}
    for a, (name, _, _) in zip(arrows, arrow_tokens):
        if a.name in trivial_names:
            raise ParseError(f"arrow name {a.name!r} collides with a trivial path name", name.line, name.col)
    if not vertices:
        raise ParseError("no vertices declared", 1, 1)
    if ring is None:
        raise ParseError("missing 'ring' statement", 1, 1)
    return ParsedInput(Quiver(tuple(vertices), tuple(arrows)), tuple(relations), ring)


@dataclass(frozen=True)
class Term:
    """``coeff * f_1 * ... * f_k`` with each factor an (identifier, power) pair."""

    coeff: int
    factors: tuple[tuple[str, int], ...]


def parse_expression(text: str, line: int = 1, col: int = 1) -> tuple[Term, ...]:
    """Syntax of a relation expression; identifiers are not resolved here."""
    toks = tokenize(text)

    def at(tok: Token) -> tuple[int, int]:
        return (line, col + tok.offset) if tok.line == 1 else (line + tok.line - 1, tok.col)

    terms: list[Term] = []
    i = 0
    sign = 1
    if toks and toks[0].text in "+-":
        sign = -1 if toks[0].text == "-" else 1
        i = 1
    while True:
        if i >= len(toks):
            raise ParseError("expected a term", line, col + len(text))
        coeff = 1
        factors: list[tuple[str, int]] = []
        tok = toks[i]
        if tok.kind == "word" and tok.text.isdigit():
            coeff = int(tok.text)
            i += 1
            if i < len(toks) and toks[i].text == "*":
                i += 1
                if i >= len(toks):
                    raise ParseError("expected a path after '*'", line, col + len(text))
            else:
                terms.append(Term(sign * coeff, ()))
                if i >= len(toks):
                    break
                if toks[i].text not in "+-":
                    raise ParseError(f"unexpected {toks[i].text!r}", *at(toks[i]))
                sign = -1 if toks[i].text == "-" else 1
                i += 1
                continue
        while True:
            tok = toks[i]
            if tok.kind != "word" or tok.text.isdigit():
                raise ParseError(f"expected an arrow or trivial path, found {tok.text!r}", *at(tok))
            power = 1
            i += 1
            if i < len(toks) and toks[i].text == "^":
                if i + 1 >= len(toks) or not toks[i + 1].text.isdigit():
                    raise ParseError("expected an exponent after '^'", *at(toks[i]))
                power = int(toks[i + 1].text)
                if power < 1:
                    raise ParseError("exponent must be positive", *at(toks[i + 1]))
                i += 2
            factors.append((tok.text, power))
            if i < len(toks) and toks[i].text == "*":
                i += 1
                if i >= len(toks):
                    raise ParseError("expected a factor after '*'", line, col + len(text))
                continue
            break
        terms.append(Term(sign * coeff, tuple(factors)))
        if i >= len(toks):
            break
        if toks[i].text not in "+-":
            raise ParseError(f"unexpected {toks[i].text!r}", *at(toks[i]))
        sign = -1 if toks[i].text == "-" else 1
        i += 1
    return tuple(terms)


def format_input(parsed: ParsedInput) -> str:
    """Render back to DSL source; ``parse_quiver(format_input(x)) == x`` up to relation positions."""
    q = parsed.quiver
    lines = [f"vertices {' '.join(q.vertices)};"]
    if q.arrows:
        lines.append("arrows " + ", ".join(f"{a.name}: {a.source} -> {a.target}" for a in q.arrows) + ";")
    if parsed.relations:
        lines.append("relations " + ", ".join(r.text for r in parsed.relations) + ";")
    lines.append(f"ring {parsed.ring.name};")
    return "\n".join(lines) + "\n"
