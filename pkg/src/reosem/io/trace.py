"""Runs of an epsilon-connector as explicit step lists."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from ..coloring import ConstraintColoring, EpsilonConnector, Index, coloring_from_flow_set, coloring_key
from ..constraints import evaluate, format_constraint, parse_constraint
from ..errors import NotAdmitted
from .serialize import canonical_json, index_to_json


@dataclass(frozen=True)
class Step:
    before: Index
    choice: ConstraintColoring
    after: Index
    data: Mapping[str, str] | None = None


@dataclass(frozen=True)
class Trace:
    initial: Index
    steps: tuple[Step, ...]

    def indexes(self) -> list[Index]:
        return [self.initial] + [s.after for s in self.steps]


def export_trace(e: EpsilonConnector, steps: Sequence, data: Sequence | None = None) -> Trace:
    """Thread ``steps`` through the next function from the initial index.

    ``data`` optionally gives one assignment per step (or None); it must cover
    exactly the flowing nodes and satisfy the step's constraint.
    """
    beh = e.behavior
    current = beh.initial
    out = []
    for i, x in enumerate(steps):
        if x not in beh.ctm.table.get(current, ()):
            raise NotAdmitted(
                f"step {i}: coloring with flow {sorted(x.flow)} and constraint "
                f"{format_constraint(x.constraint)} is not in the table of {current}"
            )
        d = data[i] if data is not None else None
        if d is not None:
            if set(d) != x.flow:
                raise NotAdmitted(f"step {i}: data given for {sorted(d)} but flow is {sorted(x.flow)}")
            if not evaluate(x.constraint, d):
                raise NotAdmitted(f"step {i}: data {dict(sorted(d.items()))} violates the constraint")
        succ = beh.next[(current, x)]
        out.append(Step(current, x, succ, dict(d) if d is not None else None))
        current = succ
    return Trace(beh.initial, tuple(out))


def resolve_steps(e: EpsilonConnector, raw: Sequence[Mapping]) -> tuple[list, list]:
    """Turn step requests ``{"flow": [...], "constraint"?: str, "data"?: {...}}``
    into constraint colorings.

    Without a constraint the flow set must pick out a unique coloring of the
    current table; the walk follows the next function to know which table.
    """
    beh = e.behavior
    nodes = e.structure.nodes
    current = beh.initial
    chosen, data = [], []
    for i, req in enumerate(raw):
        flow = frozenset(req.get("flow", ()))
        if not flow <= nodes:
            raise NotAdmitted(f"step {i}: unknown nodes {sorted(flow - nodes)}")
        table = beh.ctm.table.get(current, frozenset())
        if "constraint" in req:
            x = ConstraintColoring(coloring_from_flow_set(nodes, flow), parse_constraint(req["constraint"]))
        else:
            cands = sorted((x for x in table if x.flow == flow), key=coloring_key)
            if len(cands) != 1:
                how = "no" if not cands else f"{len(cands)}"
                raise NotAdmitted(
                    f"step {i}: {how} colorings with flow {sorted(flow)} at {current}; give a constraint"
                )
            x = cands[0]
        if x not in table:
            raise NotAdmitted(f"step {i}: coloring with flow {sorted(flow)} is not in the table of {current}")
        chosen.append(x)
        data.append(req.get("data"))
        current = beh.next[(current, x)]
    return chosen, data


def trace_to_json(t: Trace) -> str:
    steps = []
    for s in t.steps:
        row = {
            "before": index_to_json(s.before),
            "flow": sorted(s.choice.flow),
            "constraint": format_constraint(s.choice.constraint),
            "after": index_to_json(s.after),
        }
        if s.data is not None:
            row["data"] = dict(s.data)
        steps.append(row)
    doc = {"initial": index_to_json(t.initial), "steps": steps}
    return canonical_json(doc) + "\n"

