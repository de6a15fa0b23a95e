"""Translations between the coloring model and constraint automata.

``l_transform`` reads every next-function entry as a transition whose firing
set is the coloring's flow set.  ``inv_l_transform`` goes back by coloring
exactly the firing nodes with the flow color.
"""

from __future__ import annotations

from .automata import AlphaConnector, ConstraintAutomaton, Transition, transition_key, validate_ca
from .coloring import (
    ConstraintCTM,
    ConstraintColoring,
    EpsilonConnector,
    InitializedConstraintNextFunction,
    coloring_from_flow_set,
    validate_epsilon,
)
from .errors import NondeterministicAutomaton


def l_transform(e: EpsilonConnector) -> AlphaConnector:
    validate_epsilon(e).raise_if_invalid("epsilon-connector")
    beh = e.behavior
    transitions = frozenset(
        Transition(lam, x.flow, x.constraint, succ) for (lam, x), succ in beh.next.items()
    )
    return AlphaConnector(
        e.structure, ConstraintAutomaton(beh.ctm.indexes, transitions, beh.initial)
    )


def derived_ctm(a: AlphaConnector) -> ConstraintCTM:
    """The CTM induced by an automaton: one table per state, one row per transition."""
    nodes = a.structure.nodes
    table = {q: set() for q in a.automaton.states}
    for t in a.automaton.transitions:
        table[t.source].add(ConstraintColoring(coloring_from_flow_set(nodes, t.firing), t.constraint))
    return ConstraintCTM(nodes, a.automaton.states, table)


def inv_l_transform(a: AlphaConnector) -> EpsilonConnector:
    """Raises :class:`NondeterministicAutomaton` when two transitions share
    source, firing set and constraint but lead to different targets."""
    validate_ca(a).raise_if_invalid("alpha-connector")
    nodes = a.structure.nodes
    nxt = {}
    owner = {}
    collisions = []
    for t in sorted(a.automaton.transitions, key=transition_key):
        key = (t.source, ConstraintColoring(coloring_from_flow_set(nodes, t.firing), t.constraint))
        if key in nxt:
            collisions.append((owner[key], t))
            continue
        nxt[key] = t.target
        owner[key] = t
    if collisions:
        raise NondeterministicAutomaton(collisions)
    ctm = derived_ctm(a)
    return EpsilonConnector(
        a.structure, InitializedConstraintNextFunction(ctm, nxt, a.automaton.initial)
    )
