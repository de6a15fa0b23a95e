"""Circuit description language.

::

    # a lossy FIFO
    universe {"foo"}
    l = lossysync(A, M)
    f = fifo(M, B)
    circuit = l * f

Statements are separated by whitespace or newlines; ``#`` starts a comment.
There is exactly one ``universe`` and one ``circuit`` statement.  ``*`` is
left-associative and parentheses group.  The instance name becomes the
instance id of the primitive's indexes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Union

from ..automata import AlphaConnector, compose_alpha_connectors
from ..coloring import EpsilonConnector, compose_epsilon_connectors
from ..constraints import DataUniverse
from ..errors import ArityError, DslError, IncompatibleStructures
from ..primitives import PrimitiveKind, instantiate

_TOKEN = re.compile(
    r"""
    (?P<newline>\n)
  | (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<ident>[A-Za-z_][A-Za-z0-9_.]*)
  | (?P<punct>[{}(),=*])
    """,
    re.VERBOSE,
)

KEYWORDS = ("universe", "circuit")


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    column: int


@dataclass(frozen=True)
class InstanceDecl:
    name: str
    kind: str
    nodes: tuple[str, ...]
    line: int
    column: int


@dataclass(frozen=True)
class Ref:
    name: str
    line: int
    column: int


@dataclass(frozen=True)
class Compose:
    left: "Expr"
    right: "Expr"
    line: int
    column: int


Expr = Union[Ref, Compose]


@dataclass(frozen=True)
class CircuitSpec:
    universe: tuple[str, ...]
    instances: tuple[InstanceDecl, ...]
    circuit: Expr

    def instance(self, name: str) -> InstanceDecl:
        return next(d for d in self.instances if d.name == name)


def _tokenize(text: str) -> list[Token]:
    out = []
    pos, line, start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - start + 1
        if not m:
            raise DslError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "newline":
            line += 1
            start = m.end()
        elif kind == "string":
            out.append(Token("string", json.loads(m.group()), line, col))
        elif kind == "ident":
            out.append(Token("ident", m.group(), line, col))
        elif kind == "punct":
            out.append(Token(m.group(), m.group(), line, col))
        pos = m.end()
    out.append(Token("end", "", line, pos - start + 1))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self, kind: str, what: str | None = None) -> Token:
        tok = self.toks[self.i]
        if tok.kind != kind:
            got = "end of input" if tok.kind == "end" else repr(tok.value)
            raise DslError(f"expected {what or kind}, got {got}", tok.line, tok.column)
        self.i += 1
        return tok

    def spec(self) -> CircuitSpec:
        universe = None
        circuit = None
        decls: dict[str, InstanceDecl] = {}
        if self.peek().kind == "end":
            t = self.peek()
            raise DslError("empty circuit description", t.line, t.column)
        while self.peek().kind != "end":
            head = self.take("ident", "a statement")
            if head.value == "universe":
                if universe is not None:
                    raise DslError("universe declared twice", head.line, head.column)
                universe = self.universe(head)
            elif head.value == "circuit":
                if circuit is not None:
                    raise DslError("circuit defined twice", head.line, head.column)
                self.take("=", "'='")
                circuit = self.expr()
            else:
                if head.value in decls:
                    prev = decls[head.value]
                    raise DslError(
                        f"instance {head.value!r} already declared at {prev.line}:{prev.column}",
                        head.line,
                        head.column,
                    )
                self.take("=", "'='")
                kind = self.take("ident", "a primitive name")
                self.take("(", "'('")
                nodes = [self.take("ident", "a node name").value]
                while self.peek().kind == ",":
                    self.take(",")
                    nodes.append(self.take("ident", "a node name").value)
                self.take(")", "')'")
                decls[head.value] = InstanceDecl(head.value, kind.value, tuple(nodes), head.line, head.column)
        end = self.peek()
        if universe is None:
            raise DslError("missing universe declaration", end.line, end.column)
        if circuit is None:
            raise DslError("missing circuit definition", end.line, end.column)
        seen = set()
        for ref in _refs(circuit):
            if ref.name not in decls:
                raise DslError(f"undeclared instance {ref.name!r}", ref.line, ref.column)
            if ref.name in seen:
                raise DslError(f"instance {ref.name!r} used twice in circuit", ref.line, ref.column)
            seen.add(ref.name)
        return CircuitSpec(universe, tuple(decls.values()), circuit)

    def universe(self, head: Token) -> tuple[str, ...]:
        self.take("{", "'{'")
        items = [self.take("string", "a quoted data item").value]
        while self.peek().kind == ",":
            self.take(",")
            items.append(self.take("string", "a quoted data item").value)
        self.take("}", "'}'")
        if len(set(items)) != len(items):
            raise DslError("duplicate data item in universe", head.line, head.column)
        return tuple(items)

    def expr(self) -> Expr:
        e = self.term()
        while self.peek().kind == "*":
            star = self.take("*")
            e = Compose(e, self.term(), star.line, star.column)
        return e

    def term(self) -> Expr:
        t = self.peek()
        if t.kind == "(":
            self.take("(")
            e = self.expr()
            self.take(")", "')'")
            return e
        t = self.take("ident", "an instance name or '('")
        if t.value in KEYWORDS:
            raise DslError(f"{t.value!r} is a keyword", t.line, t.column)
        return Ref(t.value, t.line, t.column)


def _refs(e: Expr):
    if isinstance(e, Ref):
        yield e
    else:
        yield from _refs(e.left)
        yield from _refs(e.right)


def parse_circuit(text: str) -> CircuitSpec:
    return _Parser(text).spec()


@dataclass(frozen=True)
class Elaborated:
    universe: DataUniverse
    epsilon: EpsilonConnector
    alpha: AlphaConnector


def elaborate(spec: CircuitSpec) -> Elaborated:
    """Instantiate the referenced primitives and fold the composition tree in both models."""
    u = DataUniverse(spec.universe)

    def build(e: Expr):
        if isinstance(e, Ref):
            d = spec.instance(e.name)
            try:
                kind = PrimitiveKind(d.kind)
            except ValueError:
                known = ", ".join(k.value for k in PrimitiveKind)
                raise DslError(f"unknown primitive {d.kind!r}; known: {known}", d.line, d.column) from None
            try:
                return instantiate(kind, d.nodes, d.name, u)
            except ArityError as exc:
                raise DslError(str(exc), d.line, d.column) from None
        e1, a1 = build(e.left)
        e2, a2 = build(e.right)
        try:
            return compose_epsilon_connectors(e1, e2), compose_alpha_connectors(a1, a2)
        except IncompatibleStructures as exc:
            raise DslError(str(exc), e.line, e.column) from None

    eps, alpha = build(spec.circuit)
    return Elaborated(u, eps, alpha)


def compile_circuit(text: str) -> Elaborated:
    return elaborate(parse_circuit(text))
