"""Primitive connectors in both semantic models.

Each primitive is written once as an epsilon-connector; its automaton is
obtained with :func:`~reosem.transform.l_transform`.  ``syncdrain``,
``merger`` and ``replicator`` are standard Reo channels added for circuit
building and are not among the three worked primitives (Sync, LossySync,
FIFO) that the golden tests pin.

A SyncDrain has two source ends, which a flow relation cannot express on two
nodes without a self-loop; it is given the structure ``{(A, B)}`` here, so
``B`` classifies as an output node.
"""

from __future__ import annotations

import enum
from typing import Mapping, Sequence, Union

from .automata import AlphaConnector, ConstraintAutomaton, Transition
from .coloring import (
    Atom,
    ConstraintCTM,
    ConstraintColoring,
    EpsilonConnector,
    InitializedConstraintNextFunction,
    coloring_from_flow_set,
)
from .constraints import TOP, AtomEq, Conj, DataUniverse, node_eq, rename as rename_constraint
from .core import ConnectorStructure, Node
from .errors import ArityError, NonInjectiveMapping
from .transform import l_transform


class PrimitiveKind(enum.Enum):
    SYNC = "sync"
    LOSSYSYNC = "lossysync"
    FIFO = "fifo"
    SYNCDRAIN = "syncdrain"
    MERGER = "merger"
    REPLICATOR = "replicator"

    @property
    def arity(self) -> int:
        return 3 if self in (PrimitiveKind.MERGER, PrimitiveKind.REPLICATOR) else 2

    @property
    def roles(self) -> tuple[str, ...]:
        """Structural role ("in"/"out") of each positional node."""
        if self is PrimitiveKind.MERGER:
            return ("in", "in", "out")
        if self is PrimitiveKind.REPLICATOR:
            return ("in", "out", "out")
        return ("in", "out")

    @property
    def is_basic(self) -> bool:
        return self in (PrimitiveKind.SYNC, PrimitiveKind.LOSSYSYNC, PrimitiveKind.FIFO)


def _structure(kind: PrimitiveKind, nodes: Sequence[Node]) -> ConnectorStructure:
    if kind is PrimitiveKind.MERGER:
        a, b, c = nodes
        return ConnectorStructure.of([(a, c), (b, c)])
    if kind is PrimitiveKind.REPLICATOR:
        a, b, c = nodes
        return ConnectorStructure.of([(a, b), (a, c)])
    a, b = nodes
    return ConnectorStructure.of([(a, b)])


def fifo_full_state(item: str, u: DataUniverse) -> str:
    return "FIFO-F" if len(u) == 1 else f"FIFO-F:{item}"


def _rows(kind: PrimitiveKind, nodes: Sequence[Node], u: DataUniverse):
    """``(state name, firing set, constraint, successor name)`` rows and the initial name."""
    idle = lambda s: (s, (), TOP, s)  # noqa: E731
    if kind is PrimitiveKind.SYNC:
        a, b = nodes
        return [("Sync", (a, b), node_eq(a, b, u), "Sync"), idle("Sync")], "Sync"
    if kind is PrimitiveKind.LOSSYSYNC:
        a, b = nodes
        return [
            ("LSync", (a, b), node_eq(a, b, u), "LSync"),
            ("LSync", (a,), TOP, "LSync"),
            idle("LSync"),
        ], "LSync"
    if kind is PrimitiveKind.FIFO:
        a, b = nodes
        rows = [idle("FIFO-E")]
        for d in u:
            full = fifo_full_state(d, u)
            rows += [
                ("FIFO-E", (a,), AtomEq(a, d), full),
                (full, (b,), AtomEq(b, d), "FIFO-E"),
                idle(full),
            ]
        return rows, "FIFO-E"
    if kind is PrimitiveKind.SYNCDRAIN:
        a, b = nodes
        return [("SyncDrain", (a, b), TOP, "SyncDrain"), idle("SyncDrain")], "SyncDrain"
    if kind is PrimitiveKind.MERGER:
        a, b, c = nodes
        return [
            ("Merger", (a, c), node_eq(a, c, u), "Merger"),
            ("Merger", (b, c), node_eq(b, c, u), "Merger"),
            idle("Merger"),
        ], "Merger"
    if kind is PrimitiveKind.REPLICATOR:
        a, b, c = nodes
        g = Conj(node_eq(a, b, u), node_eq(a, c, u))
        return [("Repl", (a, b, c), g, "Repl"), idle("Repl")], "Repl"
    raise ValueError(kind)


def epsilon_primitive(kind, nodes: Sequence[Node], instance: str, u: DataUniverse) -> EpsilonConnector:
    kind = PrimitiveKind(kind)
    nodes = list(nodes)
    if len(nodes) != kind.arity:
        raise ArityError(f"{kind.value} takes {kind.arity} nodes, got {len(nodes)}")
    if len(set(nodes)) != len(nodes):
        raise ArityError(f"{kind.value} needs distinct nodes, got {nodes}")
    if not instance:
        raise ValueError("instance id must be nonempty")
    if not isinstance(u, DataUniverse):
        u = DataUniverse(u)
    structure = _structure(kind, nodes)
    rows, init = _rows(kind, nodes, u)
    table = {}
    nxt = {}
    for src, firing, g, dst in rows:
        lam = Atom(src, instance)
        x = ConstraintColoring(coloring_from_flow_set(structure.nodes, firing), g)
        table.setdefault(lam, set()).add(x)
        nxt[(lam, x)] = Atom(dst, instance)
    ctm = ConstraintCTM(structure.nodes, frozenset(table), table)
    return EpsilonConnector(structure, InitializedConstraintNextFunction(ctm, nxt, Atom(init, instance)))


def instantiate(kind, nodes: Sequence[Node], instance: str, u) -> tuple[EpsilonConnector, AlphaConnector]:
    e = epsilon_primitive(kind, nodes, instance, u)
    return e, l_transform(e)


Model = Union[EpsilonConnector, AlphaConnector]


def rename_nodes(model: Model, mapping: Mapping[Node, Node]) -> Model:
    nodes = model.structure.nodes
    missing = nodes - set(mapping)
    if missing:
        raise ValueError(f"mapping does not cover nodes {sorted(missing)}")
    images = [mapping[n] for n in nodes]
    if len(set(images)) != len(images):
        raise NonInjectiveMapping(f"mapping is not injective on {sorted(nodes)}")
    m = dict(mapping)
    structure = ConnectorStructure(
        frozenset(m[n] for n in nodes), frozenset((m[a], m[b]) for a, b in model.structure.flow)
    )
    if isinstance(model, AlphaConnector):
        a = model.automaton
        transitions = frozenset(
            Transition(t.source, frozenset(m[n] for n in t.firing), rename_constraint(t.constraint, m), t.target)
            for t in a.transitions
        )
        return AlphaConnector(structure, ConstraintAutomaton(a.states, transitions, a.initial))

    def rx(x: ConstraintColoring) -> ConstraintColoring:
        return ConstraintColoring(
            coloring_from_flow_set(structure.nodes, (m[n] for n in x.flow)),
            rename_constraint(x.constraint, m),
        )

    beh = model.behavior
    table = {lam: frozenset(rx(x) for x in rows) for lam, rows in beh.ctm.table.items()}
    nxt = {(lam, rx(x)): succ for (lam, x), succ in beh.next.items()}
    ctm = ConstraintCTM(structure.nodes, beh.ctm.indexes, table)
    return EpsilonConnector(structure, InitializedConstraintNextFunction(ctm, nxt, beh.initial))
