"""Random well-formed circuits built from primitives.

Used by the property suites and the sweep script.  Every new primitive either
gets fresh nodes or plugs into a boundary node of the circuit so far with the
opposite role, so each fold step is a legal composition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import reduce

from .automata import AlphaConnector, compose_alpha_connectors
from .coloring import EpsilonConnector, compose_epsilon_connectors
from .constraints import DataUniverse
from .core import ConnectorStructure, compose_structures
from .primitives import PrimitiveKind, instantiate

ITEMS = ("foo", "bar", "baz")


@dataclass
class Part:
    kind: PrimitiveKind
    nodes: tuple[str, ...]
    instance: str
    epsilon: EpsilonConnector = field(repr=False)
    alpha: AlphaConnector = field(repr=False)


@dataclass
class Circuit:
    universe: DataUniverse
    parts: list[Part]

    def epsilon(self, parts=None) -> EpsilonConnector:
        return reduce(compose_epsilon_connectors, [p.epsilon for p in (parts or self.parts)])

    def alpha(self, parts=None) -> AlphaConnector:
        return reduce(compose_alpha_connectors, [p.alpha for p in (parts or self.parts)])

    def describe(self) -> str:
        return " * ".join(f"{p.kind.value}{p.nodes}" for p in self.parts)


def random_universe(rng: random.Random, max_size=2) -> DataUniverse:
    return DataUniverse(ITEMS[: rng.randint(1, max_size)])


def random_circuit(
    rng: random.Random,
    max_primitives=5,
    max_universe=2,
    kinds=tuple(PrimitiveKind),
    attach_prob=0.6,
    universe: DataUniverse | None = None,
    prefix="n",
) -> Circuit:
    u = universe or random_universe(rng, max_universe)
    count = rng.randint(1, max_primitives)
    structure = None
    fresh = 0
    parts = []
    for i in range(count):
        kind = rng.choice(list(kinds))
        inputs = set(structure.inputs()) if structure else set()
        outputs = set(structure.outputs()) if structure else set()
        chosen = []
        for role in kind.roles:
            # a new input end may join a circuit output and vice versa
            pool = sorted((outputs if role == "in" else inputs) - set(chosen))
            if pool and rng.random() < attach_prob:
                chosen.append(rng.choice(pool))
            else:
                chosen.append(f"{prefix}{fresh}")
                fresh += 1
        e, a = instantiate(kind, chosen, f"p{i}", u)
        structure = e.structure if structure is None else compose_structures(structure, e.structure)
        parts.append(Part(kind, tuple(chosen), f"p{i}", e, a))
    return Circuit(u, parts)


def random_pair(rng: random.Random, max_primitives=5, max_universe=2, kinds=tuple(PrimitiveKind)):
    """Two composable circuits over one universe, as ``(Circuit, parts1, parts2)``."""
    c = random_circuit(rng, max_primitives, max_universe, kinds)
    if len(c.parts) == 1:
        extra = random_circuit(rng, 1, universe=c.universe, kinds=kinds, prefix="m")
        extra.parts[0] = _reinstance(extra.parts[0], "q0", c.universe)
        c = Circuit(c.universe, c.parts + extra.parts)
        return c, c.parts[:1], c.parts[1:]
    k = rng.randint(1, len(c.parts) - 1)
    return c, c.parts[:k], c.parts[k:]


def _reinstance(p: Part, instance: str, u: DataUniverse) -> Part:
    e, a = instantiate(p.kind, p.nodes, instance, u)
    return Part(p.kind, p.nodes, instance, e, a)


def structure_of(parts) -> ConnectorStructure:
    return reduce(compose_structures, [p.epsilon.structure for p in parts])
