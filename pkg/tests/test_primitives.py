import pytest
from hypothesis import given
from hypothesis import strategies as st

from reosem.automata import is_deterministic
from reosem.coloring import Atom, validate_epsilon
from reosem.constraints import TOP, DataUniverse
from reosem.errors import ArityError, NonInjectiveMapping
from reosem.primitives import PrimitiveKind, epsilon_primitive, instantiate, rename_nodes
from reosem.transform import inv_l_transform, l_transform

from .conftest import FOO

ITEMS = ("foo", "bar", "baz")


def nodes_for(kind):
    return ["A", "B", "C"][: kind.arity]


def test_arity_and_instance_checks():
    with pytest.raises(ArityError):
        instantiate(PrimitiveKind.FIFO, ["A"], "1", FOO)
    with pytest.raises(ArityError):
        instantiate(PrimitiveKind.SYNC, ["A", "A"], "1", FOO)
    with pytest.raises(ValueError):
        instantiate(PrimitiveKind.SYNC, ["A", "B"], "", FOO)
    with pytest.raises(ValueError):
        instantiate(PrimitiveKind.SYNC, ["A", "B"], "1", [])


def test_kind_accepts_dsl_names():
    assert {k.value for k in PrimitiveKind} == {"sync", "lossysync", "fifo", "syncdrain", "merger", "replicator"}
    e = epsilon_primitive("merger", ["A", "B", "C"], "m", FOO)
    assert e.structure.flow == {("A", "C"), ("B", "C")}


def test_fifo_state_names_track_items():
    _, a = instantiate(PrimitiveKind.FIFO, ["A", "B"], "7", DataUniverse(["foo", "bar"]))
    assert a.automaton.states == {Atom("FIFO-E", "7"), Atom("FIFO-F:foo", "7"), Atom("FIFO-F:bar", "7")}


def test_rename_fifo_to_internal_node():
    e, a = instantiate(PrimitiveKind.FIFO, ["A", "B"], "2", FOO)
    want_e, want_a = instantiate(PrimitiveKind.FIFO, ["M", "B"], "2", FOO)
    assert rename_nodes(e, {"A": "M", "B": "B"}) == want_e
    assert rename_nodes(a, {"A": "M", "B": "B"}) == want_a


def test_rename_identity_and_errors():
    e, a = instantiate(PrimitiveKind.LOSSYSYNC, ["A", "B"], "1", FOO)
    assert rename_nodes(e, {"A": "A", "B": "B"}) == e
    assert rename_nodes(a, {"A": "A", "B": "B"}) == a
    with pytest.raises(NonInjectiveMapping):
        rename_nodes(e, {"A": "X", "B": "X"})
    with pytest.raises(ValueError):
        rename_nodes(e, {"A": "X"})


@given(st.sampled_from(list(PrimitiveKind)), st.integers(1, 3), st.text("abc123", min_size=1, max_size=4))
def test_primitive_invariants(kind, k, inst):
    u = DataUniverse(ITEMS[:k])
    e, a = instantiate(kind, nodes_for(kind), inst, u)
    assert validate_epsilon(e).ok
    assert l_transform(e) == a
    assert inv_l_transform(a) == e
    assert is_deterministic(a.automaton, a.nodes, u)
    assert all(lam.instance == inst for lam in e.ctm.indexes)
    if kind is PrimitiveKind.FIFO:
        assert len(a.automaton.states) == k + 1
    # an explicit idle step at every state
    for q in a.automaton.states:
        assert any(t.source == q == t.target and not t.firing and t.constraint == TOP for t in a.automaton.transitions)


@given(st.sampled_from(list(PrimitiveKind)), st.permutations(["P", "Q", "R", "S"]))
def test_rename_round_trip(kind, perm):
    e, a = instantiate(kind, nodes_for(kind), "1", FOO)
    fwd = dict(zip(nodes_for(kind), perm))
    back = {v: k for k, v in fwd.items()}
    assert rename_nodes(rename_nodes(e, fwd), back) == e
    assert rename_nodes(rename_nodes(a, fwd), back) == a
    assert rename_nodes(e, fwd) == instantiate(kind, [fwd[n] for n in nodes_for(kind)], "1", FOO)[0]
