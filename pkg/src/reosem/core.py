"""Connector structures: nodes, flow relation, classification, composition."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from .errors import IncompatibleStructures, InvalidModel

Node = str


class NodeClass(enum.Enum):
    INPUT = "input"
    OUTPUT = "output"
    INTERNAL = "internal"


@dataclass(frozen=True)
class Report:
    """Outcome of a report-style validation. Empty ``violations`` means ok."""

    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def raise_if_invalid(self, what="model"):
        if self.violations:
            raise InvalidModel(self.violations, what=what)


@dataclass(frozen=True)
class ConnectorStructure:
    nodes: frozenset[Node]
    flow: frozenset[tuple[Node, Node]] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "flow", frozenset(tuple(p) for p in self.flow))

    @classmethod
    def of(cls, flow: Iterable[tuple[Node, Node]], nodes: Iterable[Node] = ()):
        """Build from flow pairs; nodes default to the pair endpoints."""
        flow = frozenset(tuple(p) for p in flow)
        ns = set(nodes)
        for a, b in flow:
            ns.update((a, b))
        return cls(frozenset(ns), flow)

    def inputs(self) -> frozenset[Node]:
        targets = {b for _, b in self.flow}
        return frozenset(n for n in self.nodes if n not in targets)

    def outputs(self) -> frozenset[Node]:
        sources = {a for a, _ in self.flow}
        return frozenset(n for n in self.nodes if n not in sources)

    def internals(self) -> frozenset[Node]:
        sources = {a for a, _ in self.flow}
        targets = {b for _, b in self.flow}
        return frozenset(n for n in self.nodes if n in sources and n in targets)


def validate_structure(s: ConnectorStructure) -> Report:
    violations = []
    for n in sorted(s.nodes):
        if not isinstance(n, str) or not n or any(ch.isspace() for ch in n):
            violations.append(f"bad node name {n!r}")
    for a, b in sorted(s.flow):
        for end in (a, b):
            if end not in s.nodes:
                violations.append(f"flow pair ({a}, {b}) uses unknown node {end}")
    touched = {a for a, _ in s.flow} | {b for _, b in s.flow}
    for n in sorted(s.nodes - touched):
        violations.append(f"node {n} is isolated (no incoming or outgoing flow)")
    return Report(tuple(violations))


def classify_nodes(s: ConnectorStructure) -> dict[Node, NodeClass]:
    validate_structure(s).raise_if_invalid("connector structure")
    sources = {a for a, _ in s.flow}
    targets = {b for _, b in s.flow}
    classes = {}
    for n in s.nodes:
        if n not in targets:
            classes[n] = NodeClass.INPUT
        elif n not in sources:
            classes[n] = NodeClass.OUTPUT
        else:
            classes[n] = NodeClass.INTERNAL
    return classes


def composable(s1: ConnectorStructure, s2: ConnectorStructure) -> frozenset[Node]:
    """Shared nodes that break the input/output pairing (empty when composable)."""
    shared = s1.nodes & s2.nodes
    paired = (s1.inputs() & s2.outputs()) | (s2.inputs() & s1.outputs())
    return frozenset(shared - paired)


def compose_structures(s1: ConnectorStructure, s2: ConnectorStructure) -> ConnectorStructure:
    bad = composable(s1, s2)
    if bad:
        raise IncompatibleStructures(bad)
    return ConnectorStructure(s1.nodes | s2.nodes, s1.flow | s2.flow)
