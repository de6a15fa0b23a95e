"""Constraint automata, alpha-connectors and their product."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .coloring import Index, Pair, index_key
from .constraints import (
    Conj,
    Constraint,
    DataUniverse,
    data_items,
    free_nodes,
    format_constraint,
    satisfiable,
    sort_key as constraint_key,
)
from .core import ConnectorStructure, Node, Report, compose_structures, validate_structure


class Transition(NamedTuple):
    source: Index
    firing: frozenset
    constraint: Constraint
    target: Index

    def __str__(self):
        fs = "{" + ", ".join(sorted(self.firing)) + "}"
        return f"({self.source}, {fs}, {format_constraint(self.constraint)}, {self.target})"


def transition(source, firing: Iterable[Node], constraint, target) -> Transition:
    return Transition(source, frozenset(firing), constraint, target)


def transition_key(t: Transition):
    return (index_key(t.source), tuple(sorted(t.firing)), constraint_key(t.constraint), index_key(t.target))


@dataclass(frozen=True)
class ConstraintAutomaton:
    states: frozenset[Index]
    transitions: frozenset[Transition]
    initial: Index

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(
            self,
            "transitions",
            frozenset(Transition(t[0], frozenset(t[1]), t[2], t[3]) for t in self.transitions),
        )

    def outgoing(self) -> dict[Index, list[Transition]]:
        out = defaultdict(list)
        for t in self.transitions:
            out[t.source].append(t)
        return out


@dataclass(frozen=True)
class AlphaConnector:
    structure: ConnectorStructure
    automaton: ConstraintAutomaton

    @property
    def nodes(self) -> frozenset[Node]:
        return self.structure.nodes


@dataclass(frozen=True)
class CAReport(Report):
    deterministic: bool | None = None
    nondeterministic_pairs: tuple[tuple[Transition, Transition], ...] = ()


def nondeterministic_pairs(
    a: ConstraintAutomaton, nodes, u: DataUniverse, max_assignments=None
) -> list[tuple[Transition, Transition]]:
    """Pairs of distinct transitions from one state, with equal firing sets,
    whose constraints can hold together."""
    groups = defaultdict(list)
    for t in a.transitions:
        groups[(t.source, t.firing)].append(t)
    bad = []
    for (_, firing), ts in groups.items():
        ts.sort(key=transition_key)
        for i, t1 in enumerate(ts):
            for t2 in ts[i + 1:]:
                if satisfiable(Conj(t1.constraint, t2.constraint), firing, u, max_assignments):
                    bad.append((t1, t2))
    return sorted(bad, key=lambda p: (transition_key(p[0]), transition_key(p[1])))


def is_deterministic(a: ConstraintAutomaton, nodes, u: DataUniverse, max_assignments=None) -> bool:
    return not nondeterministic_pairs(a, nodes, u, max_assignments)


def validate_ca(c: AlphaConnector, u: DataUniverse | None = None, max_assignments=None) -> CAReport:
    """Structural checks, data items against ``u``, and the determinism verdict.

    Determinism is only decided when ``u`` is given.
    """
    violations = list(validate_structure(c.structure).violations)
    a = c.automaton
    n = c.structure.nodes
    if a.initial not in a.states:
        violations.append(f"initial state {a.initial} not in state set")
    for t in sorted(a.transitions, key=transition_key):
        if t.source not in a.states:
            violations.append(f"transition {t} leaves unknown state {t.source}")
        if t.target not in a.states:
            violations.append(f"transition {t} enters unknown state {t.target}")
        if not t.firing <= n:
            violations.append(f"transition {t} fires nodes outside the structure: {sorted(t.firing - n)}")
        stray = free_nodes(t.constraint) - n
        if stray:
            violations.append(f"transition {t} constrains nodes outside the structure: {sorted(stray)}")
        if u is not None:
            unknown = data_items(t.constraint) - set(u)
            if unknown:
                violations.append(f"transition {t} uses data items outside the universe: {sorted(unknown)}")
    if u is None:
        return CAReport(tuple(violations))
    pairs = tuple(nondeterministic_pairs(a, n, u, max_assignments))
    for t1, t2 in pairs:
        violations.append(f"nondeterministic: {t1} and {t2} can both fire")
    return CAReport(tuple(violations), deterministic=not pairs, nondeterministic_pairs=pairs)


def compose_ca(a1: ConstraintAutomaton, a2: ConstraintAutomaton, n1, n2) -> ConstraintAutomaton:
    n1, n2 = frozenset(n1), frozenset(n2)
    out1, out2 = a1.outgoing(), a2.outgoing()
    # F1 ∩ N2 = F2 ∩ N1; both sides live inside the shared node set
    rows1 = {q: [(t, t.firing & n2) for t in ts] for q, ts in out1.items()}
    rows2 = {q: [(t, t.firing & n1) for t in ts] for q, ts in out2.items()}
    transitions = set()
    for q1 in a1.states:
        for q2 in a2.states:
            src = Pair(q1, q2)
            for t1, s1 in rows1.get(q1, ()):
                for t2, s2 in rows2.get(q2, ()):
                    if s1 == s2:
                        transitions.add(
                            Transition(
                                src,
                                t1.firing | t2.firing,
                                Conj(t1.constraint, t2.constraint),
                                Pair(t1.target, t2.target),
                            )
                        )
    states = frozenset(Pair(q1, q2) for q1 in a1.states for q2 in a2.states)
    return ConstraintAutomaton(states, frozenset(transitions), Pair(a1.initial, a2.initial))


def compose_alpha_connectors(c1: AlphaConnector, c2: AlphaConnector) -> AlphaConnector:
    structure = compose_structures(c1.structure, c2.structure)
    return AlphaConnector(
        structure, compose_ca(c1.automaton, c2.automaton, c1.structure.nodes, c2.structure.nodes)
    )


def prune_unreachable(a: ConstraintAutomaton) -> ConstraintAutomaton:
    """Drop states not reachable from the initial state. Never applied implicitly."""
    out = a.outgoing()
    seen = {a.initial}
    stack = [a.initial]
    while stack:
        q = stack.pop()
        for t in out.get(q, ()):
            if t.target not in seen:
                seen.add(t.target)
                stack.append(t.target)
    return ConstraintAutomaton(
        frozenset(seen), frozenset(t for t in a.transitions if t.source in seen), a.initial
    )
