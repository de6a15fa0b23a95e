"""Bi-simulation between an alpha-connector and an epsilon-connector.

Both models are read as labelled graphs over one shared label alphabet: a
label is a firing set plus a constraint class.  In syntactic mode a class is
a single constraint term; in semantic mode it is everything with the same
canonical truth table (see :func:`~reosem.constraints.canonical_form`).

Two engines compute the same greatest relation.

``refine`` (default)
    Signature-based partition refinement on the disjoint union of states and
    indexes.  Cross pairs that end up in one block form the greatest relation
    satisfying both transfer conditions.
``delete``
    Start from ``Q x Lambda`` and delete violating pairs with a worklist
    until nothing changes.  Quadratic in the product and kept as a
    cross-check; ``rng`` shuffles its deletion order.

``verify_relation`` re-checks a given relation directly with
:func:`~reosem.constraints.equivalent` and shares no code with either engine.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Literal

from .automata import AlphaConnector, transition_key
from .coloring import EpsilonConnector, Index, coloring_key, index_key
from .constraints import DataUniverse, canonical_form, equivalent, format_constraint
from .errors import NodeSetMismatch

Mode = Literal["syntactic", "semantic"]
MODES = ("syntactic", "semantic")
ENGINES = ("refine", "delete")


@dataclass(frozen=True)
class BisimRelation:
    pairs: frozenset[tuple[Index, Index]]

    def __contains__(self, pair):
        return pair in self.pairs

    def __len__(self):
        return len(self.pairs)

    def sorted_pairs(self):
        return sorted(self.pairs, key=lambda p: (index_key(p[0]), index_key(p[1])))


@dataclass(frozen=True)
class Bisimilar:
    witness: BisimRelation

    bisimilar = True


@dataclass(frozen=True)
class NotBisimilar:
    culprit: tuple[Index, Index]
    reason: str

    bisimilar = False


def _label(firing, g):
    return "{" + ", ".join(sorted(firing)) + "}, " + format_constraint(g)


def _check_args(a, e, mode, u):
    if a.structure.nodes != e.structure.nodes:
        raise NodeSetMismatch(
            f"node sets differ: {sorted(a.structure.nodes)} vs {sorted(e.structure.nodes)}"
        )
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if mode == "semantic" and u is None:
        raise ValueError("semantic mode needs a data universe")


class _Graph:
    """Both models as one integer-labelled graph.

    Vertices ``0..nq-1`` are automaton states, the rest are indexes.  Each
    out-edge is ``(label id, target vertex, printable origin)``.
    """

    def __init__(self, a, e, mode, u, max_assignments):
        ca, beh = a.automaton, e.behavior
        self.states = sorted(ca.states, key=index_key)
        self.indexes = sorted(beh.ctm.indexes, key=index_key)
        self.nq = len(self.states)
        vid = {("q", q): i for i, q in enumerate(self.states)}
        vid.update({("e", lam): self.nq + i for i, lam in enumerate(self.indexes)})
        self.vid = vid
        n = self.nq + len(self.indexes)
        self.out = [[] for _ in range(n)]
        self.pred = [set() for _ in range(n)]

        classes = {}
        labels = {}

        def label(firing, g):
            c = classes.get(g)
            if c is None:
                key = canonical_form(g, u, max_assignments) if mode == "semantic" else g
                c = classes[g] = labels.setdefault(("c", key), len(labels))
            return labels.setdefault((firing, c), len(labels))

        for t in sorted(ca.transitions, key=transition_key):
            s, d = vid[("q", t.source)], vid[("q", t.target)]
            self.out[s].append((label(t.firing, t.constraint), d, t))
            self.pred[d].add(s)
        rows = sorted(beh.next.items(), key=lambda kv: (index_key(kv[0][0]), coloring_key(kv[0][1])))
        for (lam, x), succ in rows:
            s, d = vid[("e", lam)], vid[("e", succ)]
            self.out[s].append((label(x.flow, x.constraint), d, (lam, x, succ)))
            self.pred[d].add(s)

    def describe(self, v, edge):
        if v < self.nq:
            return f"transition {edge[2]}"
        lam, x, succ = edge[2]
        return f"next entry ({lam}, {_label(x.flow, x.constraint)}) -> {succ}"

    def violation(self, qv, ev, related):
        """Why ``(qv, ev)`` breaks a transfer condition w.r.t. ``related``, or None."""
        for me, other in ((qv, ev), (ev, qv)):
            theirs = defaultdict(list)
            for lab, d, _ in self.out[other]:
                theirs[lab].append(d)
            for edge in self.out[me]:
                lab, d = edge[0], edge[1]
                if not any(related(d, d2) if me == qv else related(d2, d) for d2 in theirs.get(lab, ())):
                    where = "index" if me == qv else "state"
                    name = (self.indexes[ev - self.nq] if me == qv else self.states[qv])
                    return f"{self.describe(me, edge)} has no match at {where} {name}"
        return None


def _refine(g: _Graph, rng):
    n = len(g.out)
    block = [0] * n
    count = 1
    order = list(range(n))
    if rng is not None:
        rng.shuffle(order)
    while True:
        sigs = {}
        new = [0] * n
        for v in order:
            sig = (block[v], frozenset((lab, block[d]) for lab, d, _ in g.out[v]))
            new[v] = sigs.setdefault(sig, len(sigs))
        block = new
        if len(sigs) == count:
            return block
        count = len(sigs)


def _delete(g: _Graph, rng):
    nq = g.nq
    ne = len(g.out) - nq
    alive = [[True] * ne for _ in range(nq)]

    def related(qv, ev):
        return alive[qv][ev - nq]

    work = [(q, nq + i) for q in range(nq) for i in range(ne)]
    if rng is not None:
        rng.shuffle(work)
    while work:
        if rng is not None:
            k = rng.randrange(len(work))
            work[k], work[-1] = work[-1], work[k]
        qv, ev = work.pop()
        if not alive[qv][ev - nq] or g.violation(qv, ev, related) is None:
            continue
        alive[qv][ev - nq] = False
        for p in g.pred[qv]:
            for m in g.pred[ev]:
                if alive[p][m - nq]:
                    work.append((p, m))
    return related


def check_bisim(
    a: AlphaConnector,
    e: EpsilonConnector,
    mode: Mode = "semantic",
    u: DataUniverse | None = None,
    max_assignments: int | None = None,
    rng: random.Random | None = None,
    engine: str = "refine",
):
    """Return :class:`Bisimilar` with the largest witness, or :class:`NotBisimilar`.

    ``rng`` randomises the processing order of either engine; the result does
    not depend on it.
    """
    _check_args(a, e, mode, u)
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    g = _Graph(a, e, mode, u, max_assignments)
    if engine == "refine":
        block = _refine(g, rng)
        related = lambda qv, ev: block[qv] == block[ev]  # noqa: E731
    else:
        related = _delete(g, rng)

    q0 = g.vid[("q", a.automaton.initial)]
    e0 = g.vid[("e", e.behavior.initial)]
    init = (a.automaton.initial, e.behavior.initial)
    if related(q0, e0):
        pairs = frozenset(
            (q, lam)
            for qi, q in enumerate(g.states)
            for ei, lam in enumerate(g.indexes)
            if related(qi, g.nq + ei)
        )
        return Bisimilar(BisimRelation(pairs))
    # Prefer a move with no equally labelled counterpart at all; otherwise the
    # initial pair, lying outside a greatest fixed point, violates a transfer
    # condition against that fixed point.
    why = g.violation(q0, e0, lambda *_: True) or g.violation(q0, e0, related)
    return NotBisimilar(init, why)


def verify_relation(
    a: AlphaConnector,
    e: EpsilonConnector,
    r: BisimRelation,
    mode: Mode = "semantic",
    u: DataUniverse | None = None,
    max_assignments: int | None = None,
) -> bool:
    """Check that ``r`` contains the initial pair and meets both transfer conditions."""
    _check_args(a, e, mode, u)
    nodes = a.structure.nodes

    def same(g1, g2):
        if mode == "syntactic":
            return g1 == g2
        return equivalent(g1, g2, nodes, u, max_assignments)

    ca = a.automaton
    beh = e.behavior
    by_state = defaultdict(list)
    for t in ca.transitions:
        by_state[t.source].append(t)
    by_index = defaultdict(list)
    for (src, x), succ in beh.next.items():
        by_index[src].append((x, succ))
    pairs = set(r.pairs)
    if (ca.initial, beh.initial) not in pairs:
        return False
    for q, lam in pairs:
        if q not in ca.states or lam not in beh.ctm.indexes:
            return False
        for t in by_state[q]:
            if not any(
                x.flow == t.firing and same(t.constraint, x.constraint) and (t.target, succ) in pairs
                for x, succ in by_index[lam]
            ):
                return False
        for x, succ in by_index[lam]:
            if not any(
                x.flow == t.firing and same(t.constraint, x.constraint) and (t.target, succ) in pairs
                for t in by_state[q]
            ):
                return False
    return True
