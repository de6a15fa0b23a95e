"""Data constraints over a finite data universe.

Core grammar: ``Conj(g, g) | Neg(g) | Top | AtomEq(node, item)``.  ``Or``,
``Implies`` and ``NodeEq`` are sugar and only exist until :func:`desugar`.

Surface syntax (used in model files, DOT labels and the circuit DSL)::

    true    A=="foo"    A==B    !g    g & g    g | g    g -> g    (g)

``!`` binds tightest, then ``&``, then ``|``, then ``->``.  ``&`` and ``|``
associate to the left, ``->`` to the right.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Union

from .errors import ResourceLimit

Node = str
DataItem = str
DataAssignment = Mapping[Node, DataItem]

DEFAULT_MAX_ASSIGNMENTS = 10**6


@dataclass(frozen=True)
class DataUniverse:
    items: tuple[DataItem, ...]

    def __init__(self, items: Iterable[DataItem]):
        items = tuple(sorted(set(items)))
        if not items:
            raise ValueError("data universe must be nonempty")
        for d in items:
            if not isinstance(d, str):
                raise TypeError(f"data items are strings, got {d!r}")
        object.__setattr__(self, "items", items)

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def __contains__(self, d):
        return d in self.items


# --- core AST ---------------------------------------------------------------


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Constraint"


@dataclass(frozen=True)
class Conj:
    left: "Constraint"
    right: "Constraint"


@dataclass(frozen=True)
class AtomEq:
    node: Node
    item: DataItem


# --- sugar -------------------------------------------------------------------


@dataclass(frozen=True)
class Or:
    left: "Sugared"
    right: "Sugared"


@dataclass(frozen=True)
class Implies:
    left: "Sugared"
    right: "Sugared"


@dataclass(frozen=True)
class NodeEq:
    a: Node
    b: Node


Constraint = Union[Top, Neg, Conj, AtomEq]
Sugared = Union[Top, Neg, Conj, AtomEq, Or, Implies, NodeEq]

TOP = Top()


def conj_all(gs: Iterable[Constraint]) -> Constraint:
    """Left-nested conjunction; ``TOP`` for an empty sequence."""
    gs = list(gs)
    if not gs:
        return TOP
    out = gs[0]
    for g in gs[1:]:
        out = Conj(out, g)
    return out


def disj_all(gs: Iterable[Sugared]) -> Sugared:
    gs = list(gs)
    if not gs:
        return Neg(TOP)
    out = gs[0]
    for g in gs[1:]:
        out = Or(out, g)
    return out


def desugar(expr: Sugared, u: DataUniverse) -> Constraint:
    if isinstance(expr, (Top, AtomEq)):
        return expr
    if isinstance(expr, Neg):
        return Neg(desugar(expr.arg, u))
    if isinstance(expr, Conj):
        return Conj(desugar(expr.left, u), desugar(expr.right, u))
    if isinstance(expr, Or):
        return Neg(Conj(Neg(desugar(expr.left, u)), Neg(desugar(expr.right, u))))
    if isinstance(expr, Implies):
        return Neg(Conj(desugar(expr.left, u), Neg(desugar(expr.right, u))))
    if isinstance(expr, NodeEq):
        return desugar(
            disj_all(Conj(AtomEq(expr.a, d), AtomEq(expr.b, d)) for d in u), u
        )
    raise TypeError(f"not a constraint: {expr!r}")


def node_eq(a: Node, b: Node, u: DataUniverse) -> Constraint:
    """``#a = #b`` expanded over ``u``."""
    return desugar(NodeEq(a, b), u)


def is_core(g) -> bool:
    return all(isinstance(x, (Top, Neg, Conj, AtomEq)) for x in walk(g))


def walk(g) -> Iterator:
    stack = [g]
    while stack:
        x = stack.pop()
        yield x
        if isinstance(x, Neg):
            stack.append(x.arg)
        elif isinstance(x, (Conj, Or, Implies)):
            stack.append(x.right)
            stack.append(x.left)


def free_nodes(g) -> frozenset[Node]:
    out = set()
    for x in walk(g):
        if isinstance(x, AtomEq):
            out.add(x.node)
        elif isinstance(x, NodeEq):
            out.update((x.a, x.b))
    return frozenset(out)


def data_items(g) -> frozenset[DataItem]:
    return frozenset(x.item for x in walk(g) if isinstance(x, AtomEq))


def rename(g: Constraint, mapping: Mapping[Node, Node]) -> Constraint:
    if isinstance(g, Top):
        return g
    if isinstance(g, AtomEq):
        return AtomEq(mapping.get(g.node, g.node), g.item)
    if isinstance(g, Neg):
        return Neg(rename(g.arg, mapping))
    if isinstance(g, Conj):
        return Conj(rename(g.left, mapping), rename(g.right, mapping))
    raise TypeError(f"not a core constraint: {g!r}")


# --- evaluation --------------------------------------------------------------


def evaluate(g: Constraint, a: DataAssignment) -> bool:
    """Truth of ``g`` under the partial assignment ``a``.

    An atom on a node that ``a`` leaves unassigned is false: no item flows there.
    """
    if isinstance(g, Top):
        return True
    if isinstance(g, AtomEq):
        return a.get(g.node) == g.item
    if isinstance(g, Neg):
        return not evaluate(g.arg, a)
    if isinstance(g, Conj):
        return evaluate(g.left, a) and evaluate(g.right, a)
    raise TypeError(f"not a core constraint: {g!r}")


def compile_constraint(g: Constraint) -> Callable[[DataAssignment], bool]:
    """Closure equivalent to ``lambda a: evaluate(g, a)``; faster in tight loops."""
    if isinstance(g, Top):
        return lambda a: True
    if isinstance(g, AtomEq):
        n, d = g.node, g.item
        return lambda a: a.get(n) == d
    if isinstance(g, Neg):
        f = compile_constraint(g.arg)
        return lambda a: not f(a)
    if isinstance(g, Conj):
        f1, f2 = compile_constraint(g.left), compile_constraint(g.right)
        return lambda a: f1(a) and f2(a)
    raise TypeError(f"not a core constraint: {g!r}")


def _check_bound(needed: int, bound: int | None):
    bound = DEFAULT_MAX_ASSIGNMENTS if bound is None else bound
    if needed > bound:
        raise ResourceLimit(needed, bound)


def total_assignments(nodes: Iterable[Node], u: DataUniverse) -> Iterator[dict]:
    nodes = sorted(nodes)
    for values in itertools.product(u.items, repeat=len(nodes)):
        yield dict(zip(nodes, values))


def partial_assignments(nodes: Iterable[Node], u: DataUniverse) -> Iterator[dict]:
    nodes = sorted(nodes)
    for values in itertools.product((None,) + u.items, repeat=len(nodes)):
        yield {n: v for n, v in zip(nodes, values) if v is not None}


def satisfiable(
    g: Constraint,
    flow_nodes: Iterable[Node],
    u: DataUniverse,
    max_assignments: int | None = None,
) -> bool:
    """Is there a total assignment ``flow_nodes -> u`` satisfying ``g``?

    Flowing nodes that ``g`` never mentions cannot change the verdict, so only
    the mentioned ones are enumerated.
    """
    relevant = frozenset(flow_nodes) & free_nodes(g)
    _check_bound(len(u) ** len(relevant), max_assignments)
    f = compile_constraint(g)
    return any(f(a) for a in total_assignments(relevant, u))


def equivalent(
    g1: Constraint,
    g2: Constraint,
    nodes: Iterable[Node],
    u: DataUniverse,
    max_assignments: int | None = None,
) -> bool:
    """Do ``g1`` and ``g2`` agree on every partial assignment over ``nodes``?"""
    nodes = frozenset(nodes)
    used = free_nodes(g1) | free_nodes(g2)
    if not used <= nodes:
        raise ValueError(f"constraints mention nodes outside {sorted(nodes)}: {sorted(used - nodes)}")
    if g1 == g2:
        return True
    _check_bound((len(u) + 1) ** len(used), max_assignments)
    f1, f2 = compile_constraint(g1), compile_constraint(g2)
    return all(f1(a) == f2(a) for a in partial_assignments(used, u))


def canonical_form(
    g: Constraint, u: DataUniverse, max_assignments: int | None = None
) -> tuple[tuple[Node, ...], tuple[bool, ...]]:
    """Semantic normal form: ``(essential nodes, truth table over them)``.

    Two constraints are equivalent over any node set containing their free
    nodes iff their canonical forms are equal.  Table rows enumerate partial
    assignments in :func:`partial_assignments` order.
    """
    nodes = sorted(free_nodes(g))
    base = len(u) + 1
    _check_bound(base ** len(nodes), max_assignments)
    f = compile_constraint(g)
    table = [f(a) for a in partial_assignments(nodes, u)]
    # drop nodes whose value never changes the outcome, last digit first
    k = len(nodes)
    for pos in reversed(range(k)):
        stride = base ** (k - 1 - pos)
        block = stride * base
        rows = [table[i : i + block] for i in range(0, len(table), block)]
        if all(r[j] == r[v * stride + j] for r in rows for v in range(1, base) for j in range(stride)):
            table = [x for r in rows for x in r[:stride]]
            nodes.pop(pos)
            k -= 1
    return tuple(nodes), tuple(table)


# --- surface syntax ----------------------------------------------------------

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_.]*\Z")

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<arrow>->)
  | (?P<eq>==)
  | (?P<op>[!&|()])
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<ident>[A-Za-z_][A-Za-z0-9_.]*)
    """,
    re.VERBOSE,
)


class ConstraintSyntaxError(ValueError):
    def __init__(self, message, pos):
        self.pos = pos
        super().__init__(f"{message} at offset {pos}")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ConstraintSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if kind == "string":
                value = json.loads(value)
            elif kind in ("op", "arrow", "eq"):
                kind = value
            out.append((kind, value, pos))
        pos = m.end()
    out.append(("end", None, pos))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = kind if kind != "end" else "end of input"
            got = tok[1] if tok[0] != "end" else "end of input"
            raise ConstraintSyntaxError(f"expected {want}, got {got!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        g = self.implication()
        self.take("end")
        return g

    def implication(self):
        left = self.disjunction()
        if self.peek()[0] == "->":
            self.take()
            return Implies(left, self.implication())
        return left

    def disjunction(self):
        g = self.conjunction()
        while self.peek()[0] == "|":
            self.take()
            g = Or(g, self.conjunction())
        return g

    def conjunction(self):
        g = self.unary()
        while self.peek()[0] == "&":
            self.take()
            g = Conj(g, self.unary())
        return g

    def unary(self):
        kind, value, pos = self.peek()
        if kind == "!":
            self.take()
            return Neg(self.unary())
        if kind == "(":
            self.take()
            g = self.implication()
            self.take(")")
            return g
        if kind == "ident":
            self.take()
            if value == "true" and self.peek()[0] != "==":
                return TOP
            self.take("==")
            kind2, value2, pos2 = self.take()
            if kind2 == "string":
                return AtomEq(value, value2)
            if kind2 == "ident":
                return NodeEq(value, value2)
            raise ConstraintSyntaxError("expected data item or node after ==", pos2)
        got = value if kind != "end" else "end of input"
        raise ConstraintSyntaxError(f"unexpected {got!r}", pos)


def parse_sugared(text: str) -> Sugared:
    return _Parser(text).parse()


def parse_constraint(text: str, u: DataUniverse | None = None) -> Constraint:
    """Parse surface syntax. Sugar requires ``u`` for expansion."""
    g = parse_sugared(text)
    if is_core(g):
        return g
    if u is None:
        raise ValueError(f"constraint {text!r} uses sugar; a data universe is required")
    return desugar(g, u)


def format_node(n: Node) -> str:
    if not _IDENT.match(n) or n == "true":
        raise ValueError(f"node {n!r} has no surface-syntax spelling")
    return n


def format_constraint(g: Sugared) -> str:
    """Inverse of :func:`parse_sugared`: ``parse_sugared(format_constraint(g)) == g``."""
    return _fmt(g, 0)


# precedence levels: 0 implication, 1 disjunction, 2 conjunction, 3 unary/atom
def _fmt(g, ctx: int) -> str:
    if isinstance(g, Top):
        return "true"
    if isinstance(g, AtomEq):
        return f"{format_node(g.node)}=={json.dumps(g.item, ensure_ascii=False)}"
    if isinstance(g, NodeEq):
        return f"{format_node(g.a)}=={format_node(g.b)}"
    if isinstance(g, Neg):
        return "!" + _fmt(g.arg, 3)
    if isinstance(g, Conj):
        s, level = f"{_fmt(g.left, 2)} & {_fmt(g.right, 3)}", 2
    elif isinstance(g, Or):
        s, level = f"{_fmt(g.left, 1)} | {_fmt(g.right, 2)}", 1
    elif isinstance(g, Implies):
        s, level = f"{_fmt(g.left, 1)} -> {_fmt(g.right, 0)}", 0
    else:
        raise TypeError(f"not a constraint: {g!r}")
    return f"({s})" if level < ctx else s


def sort_key(g):
    """Total order on core constraints by pre-order traversal."""
    if isinstance(g, Top):
        return (0,)
    if isinstance(g, AtomEq):
        return (1, g.node, g.item)
    if isinstance(g, Neg):
        return (2, sort_key(g.arg))
    if isinstance(g, Conj):
        return (3, sort_key(g.left), sort_key(g.right))
    raise TypeError(f"not a core constraint: {g!r}")
