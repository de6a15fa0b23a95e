"""Model files, the circuit DSL, DOT rendering and traces."""

from .dot import export_dot, simplify_display
from .dsl import CircuitSpec, Elaborated, compile_circuit, elaborate, parse_circuit
from .serialize import deserialize, dump, load, loads, serialize
from .trace import Step, Trace, export_trace, resolve_steps, trace_to_json

__all__ = [
    "CircuitSpec",
    "Elaborated",
    "Step",
    "Trace",
    "compile_circuit",
    "deserialize",
    "dump",
    "elaborate",
    "export_dot",
    "export_trace",
    "load",
    "loads",
    "parse_circuit",
    "resolve_steps",
    "serialize",
    "simplify_display",
    "trace_to_json",
]
