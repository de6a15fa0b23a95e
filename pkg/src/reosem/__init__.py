"""Reo connector semantics: data-aware 2-coloring models, constraint
automata, the transformations between them, and a bi-simulation checker."""

from .automata import (
    AlphaConnector,
    ConstraintAutomaton,
    Transition,
    compose_alpha_connectors,
    compose_ca,
    is_deterministic,
    prune_unreachable,
    validate_ca,
)
from .bisim import BisimRelation, Bisimilar, NotBisimilar, check_bisim, verify_relation
from .coloring import (
    Atom,
    Color,
    Coloring,
    ConstraintColoring,
    ConstraintCTM,
    EpsilonConnector,
    InitializedConstraintNextFunction,
    Pair,
    col,
    compose_colorings,
    compose_constraint_colorings,
    compose_ctms,
    compose_epsilon_connectors,
    compose_next_functions,
    flow_set,
    validate_epsilon,
)
from .constraints import (
    TOP,
    AtomEq,
    Conj,
    DataUniverse,
    Neg,
    Top,
    equivalent,
    evaluate,
    node_eq,
    parse_constraint,
    format_constraint,
    satisfiable,
)
from .core import ConnectorStructure, NodeClass, classify_nodes, compose_structures, validate_structure
from .primitives import PrimitiveKind, epsilon_primitive, instantiate, rename_nodes
from .transform import inv_l_transform, l_transform

__all__ = [name for name in dir() if not name.startswith("_")]
