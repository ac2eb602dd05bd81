"""Construction scripts.

A script is a sequence of statements, one per line::

    block W = builtin("matsumoto_W")
    block B = builtin("block_B")
    let R = fiber_sum(W.F, B.G, match=[a1->x1, b1->y1, a2->x2, b2->y2])
    assert euler(R) == 8
    assert abelianization(closed_pi1(R)) == Z^2
    assert trivial([x1,t], complement(R))
    set max_cosets = 10000

Bindings are single-assignment and must precede their uses.  Wherever a
group is expected a block may be given; it stands for its closed
fundamental group.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Union

from . import blocks as bk
from .abelian import AbelianInvariants, abelianization
from .coset import EnumerationResult, todd_coxeter
from .homs import count_homomorphisms
from .manifold import (
    BlockError,
    GluingMatch,
    ManifoldBlock,
    MarkedSubmanifold,
    blow_up,
    closed_pi1,
    fiber_sum,
    luttinger,
)
from .presentation import Presentation
from .syntax import (
    ParseError,
    Token,
    TokenStream,
    describe_token,
    format_word,
    parse_presentation_tokens,
    parse_word_tokens,
    tokenize,
)
from .tietze import Effort, tietze_simplify, word_trivial_under
from .words import Word

log = logging.getLogger(__name__)

MAX_WORD_NAMES = 1024
RESERVED = {"block", "let", "assert", "set", "builtin", "trivial", "Z"}
DIRECTIVES = {"max_cosets", "effort"}


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # error | warning
    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"

    def to_json(self) -> dict:
        return {"severity": self.severity, "line": self.line, "column": self.column, "message": self.message}


class ScriptError(Exception):
    def __init__(self, diagnostics: list[Diagnostic]):
        super().__init__("\n".join(map(str, diagnostics)))
        self.diagnostics = diagnostics


# -- syntax tree ----------------------------------------------------------

_pos = dict(compare=False, default=(0, 0), repr=False)


@dataclass(frozen=True)
class Ref:
    name: str
    pos: tuple[int, int] = field(**_pos)


@dataclass(frozen=True)
class SurfaceRef:
    block: str
    label: str
    pos: tuple[int, int] = field(**_pos)


@dataclass(frozen=True)
class Literal:
    value: Any  # int, str, (p, q), Presentation, AbelianInvariants
    pos: tuple[int, int] = field(**_pos)


@dataclass(frozen=True)
class MatchLit:
    pairs: tuple[tuple[str, str, int], ...]
    pos: tuple[int, int] = field(**_pos)


@dataclass(frozen=True)
class WordLit:
    """A word whose letters are resolved by name when it is evaluated."""

    word: Word
    names: tuple[str, ...]
    pos: tuple[int, int] = field(**_pos)


@dataclass(frozen=True)
class Arg:
    key: str | None
    value: "Expr"


@dataclass(frozen=True)
class Call:
    op: str
    args: tuple[Arg, ...]
    pos: tuple[int, int] = field(**_pos)


Expr = Union[Ref, SurfaceRef, Literal, MatchLit, WordLit, Call]


@dataclass(frozen=True)
class Compare:
    lhs: Expr
    op: str
    rhs: Expr


@dataclass(frozen=True)
class Trivial:
    word: WordLit
    group: Expr


@dataclass(frozen=True)
class BlockStmt:
    name: str
    builtin: str
    pos: tuple[int, int] = field(**_pos)


@dataclass(frozen=True)
class LetStmt:
    name: str
    expr: Expr
    pos: tuple[int, int] = field(**_pos)


@dataclass(frozen=True)
class AssertStmt:
    pred: Compare | Trivial
    pos: tuple[int, int] = field(**_pos)


@dataclass(frozen=True)
class SetStmt:
    name: str
    value: int
    pos: tuple[int, int] = field(**_pos)


Stmt = Union[BlockStmt, LetStmt, AssertStmt, SetStmt]


@dataclass(frozen=True)
class Script:
    statements: tuple[Stmt, ...]


# operation name -> parameter names (trailing "=value" entries are optional)
OPS: dict[str, tuple[str, ...]] = {
    "fiber_sum": ("x", "y", "match"),
    "luttinger": ("torus", "dir", "k"),
    "blow_up": ("block", "n=1"),
    "closed_pi1": ("block",),
    "complement": ("block",),
    "simplify": ("group",),
    "abelianization": ("group",),
    "order": ("group",),
    "hom_count": ("group", "target"),
    "euler": ("block",),
    "sigma": ("block",),
}


def _params(op: str) -> list[tuple[str, str | None]]:
    out = []
    for p in OPS[op]:
        name, _, default = p.partition("=")
        out.append((name, default or None))
    return out


# -- parser ---------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.ts = TokenStream(tokenize(text, newlines=True))
        self.bound: set[str] = set()

    def here(self, tok: Token | None = None) -> tuple[int, int]:
        tok = tok or self.ts.peek
        return tok.line, tok.column

    def fail(self, message: str, tok: Token | None = None) -> ParseError:
        line, col = self.here(tok)
        return ParseError(message, line, col)

    def script(self) -> Script:
        stmts: list[Stmt] = []
        diags: list[Diagnostic] = []
        ts = self.ts
        while ts.peek.kind != "eof":
            if ts.peek.kind == "newline":
                ts.next()
                continue
            try:
                stmts.append(self.statement())
                if ts.peek.kind not in ("newline", "eof"):
                    raise self.fail(f"unexpected {ts.peek.text!r} after statement")
            except ParseError as exc:
                diags.append(Diagnostic("error", exc.line, exc.column, exc.message))
                while ts.peek.kind not in ("newline", "eof"):
                    ts.next()
        if diags:
            raise ScriptError(diags)
        return Script(tuple(stmts))

    def bind(self, tok: Token):
        name = tok.text
        if name in RESERVED or name in OPS:
            raise self.fail(f"{name!r} is reserved", tok)
        if name in self.bound:
            raise self.fail(f"{name!r} is already bound (bindings are single-assignment)", tok)
        self.bound.add(name)

    def statement(self) -> Stmt:
        ts = self.ts
        tok = ts.peek
        pos = self.here(tok)
        if ts.accept("block"):
            name = ts.expect_kind("ident", "a block name")
            ts.expect("=")
            ts.expect("builtin")
            ts.expect("(")
            s = ts.expect_kind("string", "a quoted catalog name")
            ts.expect(")")
            self.bind(name)
            return BlockStmt(name.text, s.text[1:-1], pos)
        if ts.accept("let"):
            name = ts.expect_kind("ident", "a binding name")
            ts.expect("=")
            expr = self.expr()
            self.bind(name)
            return LetStmt(name.text, expr, pos)
        if ts.accept("assert"):
            return AssertStmt(self.predicate(), pos)
        if ts.accept("set"):
            name = ts.expect_kind("ident", "a setting name")
            if name.text not in DIRECTIVES:
                raise self.fail(f"unknown setting {name.text!r} (known: {', '.join(sorted(DIRECTIVES))})", name)
            ts.expect("=")
            value = ts.expect_kind("int", "an integer")
            return SetStmt(name.text, int(value.text), pos)
        raise self.fail("expected 'block', 'let', 'assert' or 'set'")

    def predicate(self) -> Compare | Trivial:
        ts = self.ts
        if ts.at("trivial") and ts.lookahead(1).text == "(":
            ts.next()
            ts.expect("(")
            w = self.word()
            ts.expect(",")
            g = self.expr()
            ts.expect(")")
            return Trivial(w, g)
        lhs = self.expr()
        op = ts.peek
        if op.text not in ("==", "!="):
            raise self.fail("expected '==' or '!='")
        ts.next()
        return Compare(lhs, op.text, self.expr())

    def word(self) -> WordLit:
        names: dict[str, int] = {}
        pos = self.here()

        def resolve(tok: Token) -> int:
            if tok.text not in names:
                if len(names) >= MAX_WORD_NAMES:
                    raise self.fail("too many distinct generators in word", tok)
                names[tok.text] = len(names)
            return names[tok.text]

        w = parse_word_tokens(self.ts, resolve, MAX_WORD_NAMES)
        order = list(names)
        # keep only the names that survive free reduction, in first-use order
        used: list[int] = []
        for g, _ in w.letters:
            if g not in used:
                used.append(g)
        w = w.relabel({g: i for i, g in enumerate(used)}, len(used))
        return WordLit(w, tuple(order[g] for g in used), pos)

    def int_value(self) -> int:
        neg = self.ts.accept("-") is not None
        v = int(self.ts.expect_kind("int", "an integer").text)
        return -v if neg else v

    def expr(self) -> Expr:
        ts = self.ts
        tok = ts.peek
        pos = self.here(tok)
        if tok.kind == "int" or tok.text == "-":
            return Literal(self.int_value(), pos)
        if tok.kind == "string":
            ts.next()
            return Literal(tok.text[1:-1], pos)
        if tok.text == "<":
            return Literal(parse_presentation_tokens(ts), pos)
        if tok.text == "(":
            ts.next()
            p = self.int_value()
            ts.expect(",")
            q = self.int_value()
            ts.expect(")")
            return Literal((p, q), pos)
        if tok.text == "[":
            return self.match(pos)
        if tok.kind != "ident":
            raise self.fail(f"expected an expression, found {describe_token(tok)}")
        if tok.text == "Z":
            return Literal(self.abelian(), pos)
        ts.next()
        if ts.at("("):
            return self.call(tok, pos)
        if ts.accept("."):
            label = ts.expect_kind("ident", "a surface label")
            self.check_bound(tok)
            return SurfaceRef(tok.text, label.text, pos)
        self.check_bound(tok)
        return Ref(tok.text, pos)

    def check_bound(self, tok: Token):
        if tok.text not in self.bound:
            raise self.fail(f"unknown name {tok.text!r}", tok)

    def abelian(self) -> AbelianInvariants:
        ts = self.ts
        orders: list[int] = []
        while True:
            ts.expect("Z")
            if ts.accept("^"):
                orders += [0] * int(ts.expect_kind("int", "a rank").text)
            elif ts.accept("/"):
                orders.append(int(ts.expect_kind("int", "a modulus").text))
            else:
                orders.append(0)
            if not (ts.accept("⊕") or ts.accept("+")):
                return AbelianInvariants.from_orders(orders)

    def match(self, pos) -> MatchLit:
        ts = self.ts
        ts.expect("[")
        pairs = []
        while not ts.at("]"):
            a = ts.expect_kind("ident", "a basis curve name")
            ts.expect("->")
            b = ts.expect_kind("ident", "a basis curve name")
            sign = 1
            if ts.accept("^"):
                ts.expect("-")
                one = ts.expect_kind("int", "1")
                if one.text != "1":
                    raise self.fail("gluing exponent must be 1 or -1", one)
                sign = -1
            pairs.append((a.text, b.text, sign))
            if not ts.accept(","):
                break
        ts.expect("]")
        return MatchLit(tuple(pairs), pos)

    def call(self, name: Token, pos) -> Call:
        ts = self.ts
        if name.text not in OPS:
            raise self.fail(f"unknown operation {name.text!r} (known: {', '.join(sorted(OPS))})", name)
        params = _params(name.text)
        ts.expect("(")
        args: list[Arg] = []
        seen_key = False
        while not ts.at(")"):
            tok = ts.peek
            key = None
            if tok.kind == "ident" and ts.lookahead(1).text == "=":
                key = tok.text
                ts.next()
                ts.next()
                seen_key = True
            elif seen_key:
                raise self.fail("positional argument after keyword argument")
            args.append(Arg(key, self.expr()))
            if not ts.accept(","):
                break
        close = ts.expect(")")
        _bind_args(name.text, params, args, close)
        return Call(name.text, tuple(args), pos)


def _bind_args(op, params, args, tok) -> dict[str, Arg]:
    names = [p for p, _ in params]
    out: dict[str, Arg] = {}
    for i, a in enumerate(args):
        if a.key is None:
            if i >= len(names):
                raise ParseError(f"{op}() takes at most {len(names)} arguments", tok.line, tok.column)
            key = names[i]
        elif a.key not in names:
            raise ParseError(f"{op}() has no parameter {a.key!r}", tok.line, tok.column)
        else:
            key = a.key
        if key in out:
            raise ParseError(f"{op}() got {key!r} twice", tok.line, tok.column)
        out[key] = a
    for p, default in params:
        if p not in out and default is None:
            raise ParseError(f"{op}() missing argument {p!r}", tok.line, tok.column)
    return out


def parse(text: str) -> Script:
    """Parse a script; raises ``ScriptError`` carrying positioned diagnostics."""
    try:
        return _Parser(text).script()
    except ParseError as exc:  # tokenizer errors
        raise ScriptError([Diagnostic("error", exc.line, exc.column, exc.message)]) from None


# -- printer --------------------------------------------------------------


def format_expr(e: Expr) -> str:
    if isinstance(e, Ref):
        return e.name
    if isinstance(e, SurfaceRef):
        return f"{e.block}.{e.label}"
    if isinstance(e, WordLit):
        return format_word(e.word, e.names)
    if isinstance(e, MatchLit):
        parts = [f"{a}->{b}" + ("^-1" if s < 0 else "") for a, b, s in e.pairs]
        return "[" + ", ".join(parts) + "]"
    if isinstance(e, Call):
        parts = [(f"{a.key}=" if a.key else "") + format_expr(a.value) for a in e.args]
        return f"{e.op}({', '.join(parts)})"
    v = e.value
    if isinstance(v, str):
        return f'"{v}"'
    if isinstance(v, tuple):
        return f"({v[0]}, {v[1]})"
    if isinstance(v, AbelianInvariants):
        return "Z^0" if v.is_trivial() else str(v)
    return str(v)


def format_statement(s: Stmt) -> str:
    if isinstance(s, BlockStmt):
        return f'block {s.name} = builtin("{s.builtin}")'
    if isinstance(s, LetStmt):
        return f"let {s.name} = {format_expr(s.expr)}"
    if isinstance(s, SetStmt):
        return f"set {s.name} = {s.value}"
    p = s.pred
    if isinstance(p, Trivial):
        return f"assert trivial({format_expr(p.word)}, {format_expr(p.group)})"
    return f"assert {format_expr(p.lhs)} {p.op} {format_expr(p.rhs)}"


def format_script(script: Script) -> str:
    return "".join(format_statement(s) + "\n" for s in script.statements)


# -- evaluation -----------------------------------------------------------


@dataclass
class Options:
    max_cosets: int | None = None
    effort: int = 1
    catalog: Mapping[str, Callable[[], ManifoldBlock]] | None = None


class EvalError(Exception):
    def __init__(self, message: str, pos: tuple[int, int] = (0, 0)):
        super().__init__(message)
        self.pos = pos


class _Failed:
    """Placeholder for a binding whose evaluation failed."""

    def __init__(self, name: str):
        self.name = name


def describe(v: Any) -> Any:
    """JSON-friendly rendering of an evaluated value."""
    if isinstance(v, ManifoldBlock):
        return {
            "block": v.name,
            "euler": v.euler,
            "signature": v.signature,
            "marked": [m.label for m in v.marked],
            "generators": v.complement.rank,
            "relators": len(v.complement.relators),
        }
    if isinstance(v, (Presentation, AbelianInvariants, EnumerationResult)):
        return str(v)
    if isinstance(v, bool) or isinstance(v, (int, str)):
        return v
    return str(v)


class _Evaluator:
    def __init__(self, options: Options):
        self.env: dict[str, Any] = {}
        self.max_cosets = options.max_cosets
        self.effort = Effort.level(options.effort)
        self.catalog = options.catalog
        self.certificates: list[dict] = []
        self.warnings: list[str] = []

    # helpers
    def lookup(self, name: str, pos) -> Any:
        v = self.env[name]
        if isinstance(v, _Failed):
            raise EvalError(f"depends on {name!r}, which failed", pos)
        return v

    def block(self, e: Expr) -> ManifoldBlock:
        v = self.eval(e)
        if not isinstance(v, ManifoldBlock):
            raise EvalError(f"expected a block, got {type(v).__name__}", e.pos)
        return v

    def group(self, e: Expr) -> Presentation:
        v = self.eval(e)
        if isinstance(v, ManifoldBlock):
            return closed_pi1(v)
        if not isinstance(v, Presentation):
            raise EvalError(f"expected a group or block, got {type(v).__name__}", e.pos)
        return v

    def surface(self, e: Expr) -> tuple[ManifoldBlock, MarkedSubmanifold]:
        if not isinstance(e, SurfaceRef):
            raise EvalError("expected a marked surface such as B.G", e.pos)
        b = self.lookup(e.block, e.pos)
        if not isinstance(b, ManifoldBlock):
            raise EvalError(f"{e.block!r} is not a block", e.pos)
        try:
            return b, b.surface(e.label)
        except BlockError as exc:
            raise EvalError(str(exc), e.pos) from None

    def literal(self, e: Expr, kind: type, what: str):
        v = self.eval(e)
        if not isinstance(v, kind) or isinstance(v, bool):
            raise EvalError(f"expected {what}", e.pos)
        return v

    def simplify(self, p: Presentation):
        target, cert = tietze_simplify(p, self.effort)
        self.certificates.append(cert.summary())
        return target, cert

    # expressions
    def eval(self, e: Expr, name: str | None = None) -> Any:
        if isinstance(e, Literal):
            return e.value
        if isinstance(e, Ref):
            return self.lookup(e.name, e.pos)
        if isinstance(e, (SurfaceRef, MatchLit, WordLit)):
            raise EvalError("this value can only be used as an operation argument", e.pos)
        args = _bind_args(e.op, _params(e.op), list(e.args), Token("op", "", *e.pos))
        try:
            return getattr(self, "op_" + e.op)(args, e, name)
        except BlockError as exc:
            raise EvalError(str(exc), e.pos) from None

    def op_fiber_sum(self, a, e, name):
        x, sx = self.surface(a["x"].value)
        y, sy = self.surface(a["y"].value)
        m = a["match"].value
        if not isinstance(m, MatchLit):
            raise EvalError("match must be a list like [a1->x1, b1->y1^-1]", m.pos)
        try:
            match = GluingMatch.from_names(sx, sy, m.pairs)
        except BlockError as exc:
            raise EvalError(str(exc), m.pos) from None
        return fiber_sum(x, sx.label, y, sy.label, match, name=name)

    def op_luttinger(self, a, e, name):
        b, t = self.surface(a["torus"].value)
        d = self.literal(a["dir"].value, tuple, "a direction (p, q)")
        k = self.literal(a["k"].value, int, "an integer k")
        return luttinger(b, t.label, d, k, name=name)

    def op_blow_up(self, a, e, name):
        b = self.block(a["block"].value)
        n = self.literal(a["n"].value, int, "a count") if "n" in a else 1
        return blow_up(b, n)

    def op_closed_pi1(self, a, e, name):
        return closed_pi1(self.block(a["block"].value))

    def op_complement(self, a, e, name):
        return self.block(a["block"].value).complement

    def op_simplify(self, a, e, name):
        return self.simplify(self.group(a["group"].value))[0]

    def op_abelianization(self, a, e, name):
        return abelianization(self.group(a["group"].value))

    def op_order(self, a, e, name):
        return todd_coxeter(self.group(a["group"].value), self.max_cosets)

    def op_hom_count(self, a, e, name):
        target = self.literal(a["target"].value, str, 'a target group such as "S3"')
        try:
            return count_homomorphisms(self.group(a["group"].value), target)
        except ValueError as exc:
            raise EvalError(str(exc), a["target"].value.pos) from None

    def op_euler(self, a, e, name):
        return self.block(a["block"].value).euler

    def op_sigma(self, a, e, name):
        return self.block(a["block"].value).signature

    # predicates
    def check(self, pred) -> tuple[bool, dict]:
        if isinstance(pred, Trivial):
            g = self.group(pred.group)
            idx = {n: i for i, n in enumerate(g.generators)}
            missing = [n for n in pred.word.names if n not in idx]
            if missing:
                raise EvalError(f"unknown generator(s) {', '.join(missing)} in word", pred.word.pos)
            w = pred.word.word.relabel([idx[n] for n in pred.word.names], g.rank)
            _, cert = self.simplify(g)
            ok = word_trivial_under(cert, w)
            return ok, {"word": g.format_word(w), "result": "trivial" if ok else "not shown trivial"}
        lhs, rhs = self.eval(pred.lhs), self.eval(pred.rhs)
        eq = _equal(lhs, rhs)
        ok = eq if pred.op == "==" else not eq
        return ok, {"lhs": describe(lhs), "rhs": describe(rhs)}


def _equal(a: Any, b: Any) -> bool:
    if isinstance(b, EnumerationResult) and not isinstance(a, EnumerationResult):
        a, b = b, a
    if isinstance(a, EnumerationResult):
        if isinstance(b, int):
            return a.finite and a.order == b
        return isinstance(b, EnumerationResult) and a.to_json() == b.to_json()
    if isinstance(b, AbelianInvariants) and not isinstance(a, AbelianInvariants):
        a, b = b, a
    if isinstance(a, AbelianInvariants):
        if isinstance(b, int) and b == 0:
            return a.is_trivial()
        return a == b
    if isinstance(a, Presentation) and isinstance(b, Presentation):
        return a.same_as(b)
    if type(a) is not type(b):
        return False
    return a == b


def run(script: Script, options: Options | None = None) -> tuple[int, dict]:
    """Evaluate ``script``; exit code 0 iff every statement succeeded and
    every assertion held."""
    options = options or Options()
    ev = _Evaluator(options)
    entries = []
    failures = errors = 0
    for stmt in script.statements:
        entry: dict[str, Any] = {"line": stmt.pos[0], "statement": format_statement(stmt)}
        try:
            if isinstance(stmt, SetStmt):
                if stmt.name == "max_cosets":
                    ev.max_cosets = stmt.value
                else:
                    ev.effort = Effort.level(stmt.value)
                entry["status"] = "ok"
            elif isinstance(stmt, BlockStmt):
                try:
                    ev.env[stmt.name] = bk.builtin(stmt.builtin, ev.catalog)
                except bk.UnknownBlock as exc:
                    raise EvalError(str(exc), stmt.pos) from None
                entry.update(status="ok", value=describe(ev.env[stmt.name]))
            elif isinstance(stmt, LetStmt):
                value = ev.eval(stmt.expr, stmt.name)
                ev.env[stmt.name] = value
                entry.update(status="ok", value=describe(value))
                if isinstance(value, ManifoldBlock):
                    warns = [n for n in value.notes if n.startswith("warning")]
                    if warns:
                        entry["warnings"] = warns
            else:
                ok, detail = ev.check(stmt.pred)
                entry.update(status="pass" if ok else "fail", **detail)
                failures += not ok
        except EvalError as exc:
            if isinstance(stmt, (LetStmt, BlockStmt)):
                ev.env[stmt.name] = _Failed(stmt.name)
            line, col = exc.pos if exc.pos != (0, 0) else stmt.pos
            entry.update(status="error", error=str(Diagnostic("error", line, col, str(exc))))
            errors += 1
        entries.append(entry)
    asserts = [e for e in entries if e["statement"].startswith("assert")]
    summary = {
        "assertions": len(asserts),
        "passed": sum(e["status"] == "pass" for e in asserts),
        "failed": failures,
        "errors": errors,
    }
    code = 0 if failures == 0 and errors == 0 else 1
    return code, {"statements": entries, "certificates": ev.certificates, "summary": summary, "exit_code": code}


def format_run_report(report: dict) -> str:
    lines = []
    for e in report["statements"]:
        status = e["status"].upper()
        lines.append(f"{e['line']:4} [{status:5}] {e['statement']}")
        if e["status"] == "error":
            lines.append(f"             {e['error']}")
        elif "lhs" in e:
            lines.append(f"             computed {e['lhs']}, expected {e['rhs']}")
        elif "result" in e:
            lines.append(f"             {e['word']}: {e['result']}")
        for w in e.get("warnings", ()):
            lines.append(f"             {w}")
    s = report["summary"]
    lines.append(
        f"{s['assertions']} assertion(s): {s['passed']} passed, {s['failed']} failed; {s['errors']} error(s)"
    )
    return "\n".join(lines)
