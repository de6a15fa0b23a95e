"""Graphviz DOT export for both model kinds."""

from __future__ import annotations

from ..automata import AlphaConnector, transition_key
from ..coloring import EpsilonConnector, coloring_key, index_key
from ..constraints import Conj, Neg, Top, format_constraint


def simplify_display(g):
    """Drop ``true`` conjuncts and double negations.  For labels only."""
    if isinstance(g, Neg):
        inner = simplify_display(g.arg)
        if isinstance(inner, Neg):
            return inner.arg
        return Neg(inner)
    if isinstance(g, Conj):
        left, right = simplify_display(g.left), simplify_display(g.right)
        if isinstance(left, Top):
            return right
        if isinstance(right, Top):
            return left
        return Conj(left, right)
    return g


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def edge_label(firing, g, simplify: bool) -> str:
    shown = simplify_display(g) if simplify else g
    return "{" + ", ".join(sorted(firing)) + "}, " + format_constraint(shown)


def export_dot(model, simplify: bool = False, name: str = "connector") -> str:
    if isinstance(model, AlphaConnector):
        a = model.automaton
        vertices, initial = a.states, a.initial
        edges = [
            (t.source, t.firing, t.constraint, t.target)
            for t in sorted(a.transitions, key=transition_key)
        ]
    elif isinstance(model, EpsilonConnector):
        beh = model.behavior
        vertices, initial = beh.ctm.indexes, beh.initial
        rows = sorted(beh.next.items(), key=lambda kv: (index_key(kv[0][0]), coloring_key(kv[0][1])))
        edges = [(lam, x.flow, x.constraint, succ) for (lam, x), succ in rows]
    else:
        raise TypeError(f"cannot render {type(model).__name__}")

    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;"]
    for v in sorted(vertices, key=index_key):
        shape = "doublecircle" if v == initial else "circle"
        lines.append(f"  {_quote(str(v))} [shape={shape}];")
    for src, firing, g, dst in edges:
        label = edge_label(firing, g, simplify)
        lines.append(f"  {_quote(str(src))} -> {_quote(str(dst))} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
