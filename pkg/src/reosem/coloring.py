"""Data-aware 2-coloring models and their composition operators.

The constraint-free coloring model is the special case where every coloring
carries ``Top``; see :func:`lift`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .constraints import TOP, Conj, Constraint, sort_key as constraint_key
from .core import ConnectorStructure, Node, Report, compose_structures, validate_structure
from .errors import IncompatibleColorings


class Color(enum.Enum):
    FLOW = "flow"
    NO_FLOW = "no-flow"


@dataclass(frozen=True)
class Coloring:
    """Total map from a node set to colors, stored as sorted pairs."""

    pairs: tuple[tuple[Node, Color], ...]

    def __init__(self, colors: Mapping[Node, Color] | Iterable[tuple[Node, Color]]):
        items = colors.items() if isinstance(colors, Mapping) else colors
        object.__setattr__(self, "pairs", tuple(sorted(items)))

    @property
    def nodes(self) -> frozenset[Node]:
        return frozenset(n for n, _ in self.pairs)

    def __getitem__(self, n: Node) -> Color:
        for m, c in self.pairs:
            if m == n:
                return c
        raise KeyError(n)

    def as_dict(self) -> dict[Node, Color]:
        return dict(self.pairs)

    def __repr__(self):
        flow = ",".join(n for n, c in self.pairs if c is Color.FLOW)
        idle = ",".join(n for n, c in self.pairs if c is Color.NO_FLOW)
        return f"Coloring(flow={{{flow}}}, noflow={{{idle}}})"


def compose_colorings(c1: Coloring, c2: Coloring) -> Coloring:
    d1, d2 = c1.as_dict(), c2.as_dict()
    clash = [n for n in d1.keys() & d2.keys() if d1[n] != d2[n]]
    if clash:
        raise IncompatibleColorings(clash)
    return Coloring({**d2, **d1})


def compatible(c1: Coloring, c2: Coloring) -> bool:
    d2 = c2.as_dict()
    return all(d2.get(n, c) == c for n, c in c1.pairs)


def flow_set(c: Coloring) -> frozenset[Node]:
    return frozenset(n for n, col in c.pairs if col is Color.FLOW)


def coloring_from_flow_set(nodes: Iterable[Node], firing: Iterable[Node]) -> Coloring:
    nodes, firing = frozenset(nodes), frozenset(firing)
    if not firing <= nodes:
        raise ValueError(f"firing nodes {sorted(firing - nodes)} not in node set")
    return Coloring({n: Color.FLOW if n in firing else Color.NO_FLOW for n in nodes})


col = coloring_from_flow_set


@dataclass(frozen=True)
class ConstraintColoring:
    coloring: Coloring
    constraint: Constraint = TOP

    @property
    def flow(self) -> frozenset[Node]:
        return flow_set(self.coloring)


def lift(c: Coloring) -> ConstraintColoring:
    """Plain coloring as a constraint coloring carrying ``Top``."""
    return ConstraintColoring(c, TOP)


def compose_constraint_colorings(x1: ConstraintColoring, x2: ConstraintColoring) -> ConstraintColoring:
    return ConstraintColoring(
        compose_colorings(x1.coloring, x2.coloring), Conj(x1.constraint, x2.constraint)
    )


def compose_constraint_tables(t1, t2, n1=None, n2=None) -> frozenset[ConstraintColoring]:
    """Pairwise compositions of compatible constraint colorings.

    Incompatible pairs are skipped.  ``n1``/``n2`` are accepted for symmetry
    with the definition; colorings already carry their domains.
    """
    out = set()
    for x1 in t1:
        for x2 in t2:
            if compatible(x1.coloring, x2.coloring):
                out.add(compose_constraint_colorings(x1, x2))
    return frozenset(out)


# --- indexes -----------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    name: str
    instance: str

    def __post_init__(self):
        if not self.instance:
            raise ValueError("index instance id must be nonempty")

    def __str__(self):
        return f"{self.name}[{self.instance}]"


@dataclass(frozen=True)
class Pair:
    left: "Index"
    right: "Index"

    def __str__(self):
        return f"<{self.left}, {self.right}>"


Index = Union[Atom, Pair]


def index_key(i: Index):
    if isinstance(i, Atom):
        return (0, i.name, i.instance)
    return (1, index_key(i.left), index_key(i.right))


def coloring_key(x: ConstraintColoring):
    return (tuple(sorted(x.coloring.nodes)), tuple(sorted(x.flow)), constraint_key(x.constraint))


# --- CTMs and next functions -------------------------------------------------


@dataclass(frozen=True)
class ConstraintCTM:
    nodes: frozenset[Node]
    indexes: frozenset[Index]
    table: Mapping[Index, frozenset[ConstraintColoring]]

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "indexes", frozenset(self.indexes))
        object.__setattr__(self, "table", {k: frozenset(v) for k, v in self.table.items()})


def compose_ctms(m1: ConstraintCTM, m2: ConstraintCTM) -> ConstraintCTM:
    table = {
        Pair(l1, l2): compose_constraint_tables(m1.table[l1], m2.table[l2])
        for l1 in m1.indexes
        for l2 in m2.indexes
    }
    return ConstraintCTM(m1.nodes | m2.nodes, frozenset(table), table)


@dataclass(frozen=True)
class InitializedConstraintNextFunction:
    ctm: ConstraintCTM
    next: Mapping[tuple[Index, ConstraintColoring], Index]
    initial: Index

    def __post_init__(self):
        object.__setattr__(self, "next", dict(self.next))

    def entries(self):
        """Yield ``(index, constraint coloring, successor)`` triples."""
        for (lam, x), succ in self.next.items():
            yield lam, x, succ


@dataclass(frozen=True)
class EpsilonConnector:
    structure: ConnectorStructure
    behavior: InitializedConstraintNextFunction

    @property
    def nodes(self) -> frozenset[Node]:
        return self.structure.nodes

    @property
    def ctm(self) -> ConstraintCTM:
        return self.behavior.ctm


def compose_next_functions(e1: InitializedConstraintNextFunction, e2: InitializedConstraintNextFunction):
    shared = e1.ctm.nodes & e2.ctm.nodes
    # colorings agree on shared nodes iff their flow sets do
    rows1 = {l1: [(x, x.flow & shared) for x in e1.ctm.table[l1]] for l1 in e1.ctm.indexes}
    rows2 = {l2: [(x, x.flow & shared) for x in e2.ctm.table[l2]] for l2 in e2.ctm.indexes}
    table = {}
    nxt = {}
    for l1 in e1.ctm.indexes:
        for l2 in e2.ctm.indexes:
            lam = Pair(l1, l2)
            rows = set()
            for x1, s1 in rows1[l1]:
                for x2, s2 in rows2[l2]:
                    if s1 != s2:
                        continue
                    x = compose_constraint_colorings(x1, x2)
                    rows.add(x)
                    nxt[(lam, x)] = Pair(e1.next[(l1, x1)], e2.next[(l2, x2)])
            table[lam] = frozenset(rows)
    ctm = ConstraintCTM(e1.ctm.nodes | e2.ctm.nodes, frozenset(table), table)
    return InitializedConstraintNextFunction(ctm, nxt, Pair(e1.initial, e2.initial))


def compose_epsilon_connectors(e1: EpsilonConnector, e2: EpsilonConnector) -> EpsilonConnector:
    structure = compose_structures(e1.structure, e2.structure)
    return EpsilonConnector(structure, compose_next_functions(e1.behavior, e2.behavior))


def validate_epsilon(e: EpsilonConnector) -> Report:
    violations = list(validate_structure(e.structure).violations)
    ctm = e.behavior.ctm
    if ctm.nodes != e.structure.nodes:
        violations.append(
            f"CTM nodes {sorted(ctm.nodes)} differ from structure nodes {sorted(e.structure.nodes)}"
        )
    missing = ctm.indexes - set(ctm.table)
    extra = set(ctm.table) - ctm.indexes
    for lam in sorted(missing, key=index_key):
        violations.append(f"index {lam} has no coloring table")
    for lam in sorted(extra, key=index_key):
        violations.append(f"table entry for unknown index {lam}")
    for lam in sorted(ctm.indexes & set(ctm.table), key=index_key):
        for x in ctm.table[lam]:
            if x.coloring.nodes != ctm.nodes:
                violations.append(f"coloring {x.coloring!r} at {lam} does not cover nodes {sorted(ctm.nodes)}")
    if e.behavior.initial not in ctm.indexes:
        violations.append(f"initial index {e.behavior.initial} not in index set")
    for (lam, x), succ in e.behavior.next.items():
        if x not in ctm.table.get(lam, ()):
            violations.append(
                f"domain condition: next entry ({lam}, {x.coloring!r}) not in table of {lam}"
            )
        if succ not in ctm.indexes:
            violations.append(f"next entry ({lam}, {x.coloring!r}) targets unknown index {succ}")
    for lam, rows in ctm.table.items():
        for x in rows:
            if (lam, x) not in e.behavior.next:
                violations.append(f"domain condition: table coloring {x.coloring!r} at {lam} has no next entry")
    return Report(tuple(violations))
