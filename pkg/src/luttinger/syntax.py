"""Text syntax for words and presentations.

    < x1, y1, t | [t,x1], [y1^-1,t]*x1^-1 >

Identifiers name generators, ``^`` takes an integer exponent, ``*`` is
optional between factors, ``[u,v]`` is the commutator ``u v u^-1 v^-1`` and
``1`` is the empty word.  The tokenizer is shared with the script language.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .words import Word, commutator

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_'′]*")

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<string>"[^"\n]*")
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_'′]*)
  | (?P<op>->|==|!=|[<>|,\[\]()^*=.+/\-⊕{}:])
    """,
    re.VERBOSE,
)

_OPEN = {"(": ")", "[": "]", "<": ">", "{": "}"}


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # ident, int, string, op, newline, eof
    text: str
    line: int
    column: int


def tokenize(text: str, newlines: bool = False) -> list[Token]:
    """Split ``text`` into tokens.

    With ``newlines`` set, line breaks outside any bracket are returned as
    ``newline`` tokens (statement separators in scripts).
    """
    tokens: list[Token] = []
    depth: list[str] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "newline":
            if newlines and not depth:
                tokens.append(Token("newline", "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind in ("ws", "comment"):
            pass
        else:
            if kind == "op":
                if value in _OPEN:
                    depth.append(value)
                elif depth and value == _OPEN[depth[-1]]:
                    depth.pop()
            tokens.append(Token(kind, value, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


def describe_token(tok: Token) -> str:
    return {"eof": "end of input", "newline": "end of line"}.get(tok.kind, repr(tok.text))


class TokenStream:
    def __init__(self, tokens: Sequence[Token]):
        self.tokens = list(tokens)
        self.pos = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def lookahead(self, k: int) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek
        return tok.kind in ("op", "ident") and tok.text == text

    def accept(self, text: str) -> Token | None:
        if self.at(text):
            return self.next()
        return None

    def expect(self, text: str) -> Token:
        tok = self.peek
        if not self.at(text):
            shown = describe_token(tok)
            raise ParseError(f"expected {text!r}, found {shown}", tok.line, tok.column)
        return self.next()

    def expect_kind(self, kind: str, what: str) -> Token:
        tok = self.peek
        if tok.kind != kind:
            shown = describe_token(tok)
            raise ParseError(f"expected {what}, found {shown}", tok.line, tok.column)
        return self.next()

    def error(self, message: str) -> ParseError:
        tok = self.peek
        return ParseError(message, tok.line, tok.column)


Resolver = Callable[[Token], int]


def _starts_factor(tok: Token) -> bool:
    return tok.kind == "ident" or (tok.kind == "int" and tok.text == "1") or (
        tok.kind == "op" and tok.text in ("[", "(")
    )


def parse_word_tokens(ts: TokenStream, resolve: Resolver, rank: int) -> Word:
    """word := factor { ['*'] factor }"""
    if not _starts_factor(ts.peek):
        raise ts.error("expected a word")
    w = _parse_factor(ts, resolve, rank)
    while True:
        if ts.at("*"):
            ts.next()
            if not _starts_factor(ts.peek):
                raise ts.error("expected a factor after '*'")
        elif not _starts_factor(ts.peek):
            return w
        w = w * _parse_factor(ts, resolve, rank)


def _parse_factor(ts: TokenStream, resolve: Resolver, rank: int) -> Word:
    tok = ts.next()
    if tok.kind == "ident":
        base = Word.generator(resolve(tok), rank)
    elif tok.kind == "int":
        base = Word.identity(rank)
    elif tok.text == "(":
        base = parse_word_tokens(ts, resolve, rank)
        ts.expect(")")
    else:  # '['
        u = parse_word_tokens(ts, resolve, rank)
        ts.expect(",")
        v = parse_word_tokens(ts, resolve, rank)
        ts.expect("]")
        base = commutator(u, v)
    if ts.accept("^"):
        sign = -1 if ts.accept("-") else 1
        n = int(ts.expect_kind("int", "an integer exponent").text)
        base = base ** (sign * n)
    return base


def name_resolver(names: Sequence[str]) -> Resolver:
    index = {name: i for i, name in enumerate(names)}

    def resolve(tok: Token) -> int:
        try:
            return index[tok.text]
        except KeyError:
            raise ParseError(f"unknown generator {tok.text!r}", tok.line, tok.column) from None

    return resolve


def parse_word(text: str, generators: Sequence[str]) -> Word:
    ts = TokenStream(tokenize(text))
    w = parse_word_tokens(ts, name_resolver(generators), len(generators))
    if ts.peek.kind != "eof":
        raise ts.error(f"unexpected {ts.peek.text!r} after word")
    return w


def parse_presentation_tokens(ts: TokenStream):
    from .presentation import Presentation

    ts.expect("<")
    names: list[str] = []
    seen: set[str] = set()
    if not ts.at("|"):
        while True:
            tok = ts.expect_kind("ident", "a generator name")
            if tok.text in seen:
                raise ParseError(f"duplicate generator {tok.text!r}", tok.line, tok.column)
            seen.add(tok.text)
            names.append(tok.text)
            if not ts.accept(","):
                break
    ts.expect("|")
    relators: list[Word] = []
    resolve = name_resolver(names)
    if not ts.at(">"):
        while True:
            relators.append(parse_word_tokens(ts, resolve, len(names)))
            if not ts.accept(","):
                break
    ts.expect(">")
    return Presentation(tuple(names), tuple(relators))


def parse_presentation(text: str):
    ts = TokenStream(tokenize(text))
    p = parse_presentation_tokens(ts)
    if ts.peek.kind != "eof":
        raise ts.error(f"unexpected {ts.peek.text!r} after presentation")
    return p


def _runs(w: Word) -> Iterator[tuple[int, int]]:
    letters = w.letters
    i = 0
    while i < len(letters):
        g, s = letters[i]
        j = i
        while j < len(letters) and letters[j] == (g, s):
            j += 1
        yield g, s * (j - i)
        i = j


def format_word(w: Word, generators: Sequence[str]) -> str:
    if w.is_identity():
        return "1"
    parts = []
    for g, e in _runs(w):
        parts.append(generators[g] if e == 1 else f"{generators[g]}^{e}")
    return "*".join(parts)


def format_presentation(p) -> str:
    gens = ", ".join(p.generators)
    rels = ", ".join(format_word(r, p.generators) for r in p.relators)
    left = f"< {gens} |" if gens else "< |"
    return f"{left} {rels} >" if rels else f"{left} >"
