import pytest
from hypothesis import given
from hypothesis import strategies as st

from reosem.coloring import (
    Atom,
    Color,
    Coloring,
    ConstraintColoring,
    ConstraintCTM,
    EpsilonConnector,
    InitializedConstraintNextFunction,
    Pair,
    col,
    compatible,
    compose_colorings,
    compose_constraint_colorings,
    compose_constraint_tables,
    compose_ctms,
    compose_epsilon_connectors,
    flow_set,
    lift,
    validate_epsilon,
)
from reosem.constraints import TOP, AtomEq, Conj, node_eq
from reosem.core import ConnectorStructure
from reosem.errors import IncompatibleColorings, IncompatibleStructures
from reosem.primitives import PrimitiveKind, instantiate

from .conftest import FOO

F, N = Color.FLOW, Color.NO_FLOW


def test_compose_colorings_c12():
    c1 = Coloring({"A": F, "M": F})
    c2 = Coloring({"M": F, "B": N})
    assert compose_colorings(c1, c2) == Coloring({"A": F, "M": F, "B": N})


def test_compose_colorings_clash():
    with pytest.raises(IncompatibleColorings) as exc:
        compose_colorings(Coloring({"A": F, "M": F}), Coloring({"M": N, "B": N}))
    assert exc.value.nodes == ("M",)


def test_compose_colorings_disjoint():
    assert compose_colorings(Coloring({"A": F}), Coloring({"B": N})) == Coloring({"A": F, "B": N})


def test_flow_set_examples():
    assert flow_set(col("AMB", "AM")) == {"A", "M"}
    assert flow_set(col("AMB", "")) == frozenset()
    assert flow_set(col("AMB", "AMB")) == {"A", "M", "B"}


def test_col_examples():
    assert col("AB", "A") == Coloring({"A": F, "B": N})
    assert col("AB", ()) == Coloring({"A": N, "B": N})
    with pytest.raises(ValueError):
        col("AB", "C")


def test_compose_constraint_colorings_verbatim():
    g1, g2 = node_eq("A", "M", FOO), AtomEq("M", "foo")
    x = compose_constraint_colorings(
        ConstraintColoring(col("AM", "AM"), g1), ConstraintColoring(col("MB", "M"), g2)
    )
    assert x == ConstraintColoring(col("AMB", "AM"), Conj(g1, g2))
    idle = compose_constraint_colorings(lift(col("AM", "A")), lift(col("MB", "")))
    assert idle.constraint == Conj(TOP, TOP)


def test_compose_with_itself():
    x = ConstraintColoring(col("AB", "A"), AtomEq("A", "foo"))
    y = compose_constraint_colorings(x, x)
    assert y.coloring == x.coloring and y.constraint == Conj(x.constraint, x.constraint)


def test_table_composition_drops_incompatible_and_empty():
    lossy = {ConstraintColoring(col("AM", f), TOP) for f in ("AM", "A", "")}
    assert compose_constraint_tables(lossy, set()) == frozenset()
    disjoint = {ConstraintColoring(col("XY", f), TOP) for f in ("X", "")}
    assert len(compose_constraint_tables(lossy, disjoint)) == 6


def test_lossyfifo_next_function(lossyfifo):
    el, _, ef, _ = lossyfifo
    e = compose_epsilon_connectors(el, ef)
    lfe, lff = Pair(Atom("LSync", "1"), Atom("FIFO-E", "2")), Pair(Atom("LSync", "1"), Atom("FIFO-F", "2"))
    assert e.ctm.indexes == {lfe, lff}
    by_flow = {x.flow: succ for (lam, x), succ in e.behavior.next.items() if lam == lfe}
    assert by_flow[frozenset("AM")] == lff
    assert by_flow[frozenset()] == lfe
    assert e.behavior.initial == lfe
    assert validate_epsilon(e).ok


def test_compose_incompatible_structures(lossyfifo):
    el, _, _, _ = lossyfifo
    other, _ = instantiate(PrimitiveKind.SYNC, ["A", "Z"], "9", FOO)
    with pytest.raises(IncompatibleStructures):
        compose_epsilon_connectors(el, other)


def test_compose_with_idle_connector_keeps_shape():
    ef, _ = instantiate(PrimitiveKind.FIFO, ["A", "B"], "1", FOO)
    structure = ConnectorStructure.of([("X", "Y")])
    z = Atom("Idle", "z")
    x = lift(col("XY", ""))
    idle = EpsilonConnector(
        structure, InitializedConstraintNextFunction(ConstraintCTM(structure.nodes, {z}, {z: {x}}), {(z, x): z}, z)
    )
    e = compose_epsilon_connectors(ef, idle)
    edges = {(lam.left, frozenset(x.flow), succ.left) for (lam, x), succ in e.behavior.next.items()}
    expected = {(lam, frozenset(x.flow), succ) for (lam, x), succ in ef.behavior.next.items()}
    assert edges == expected
    assert all(lam.right == z for lam in e.ctm.indexes)


def test_validate_epsilon_catches_domain_and_initial(lossyfifo):
    ef = lossyfifo[2]
    beh = ef.behavior
    lam = beh.initial
    stray = ConstraintColoring(col(ef.nodes, "B"), TOP)
    broken = EpsilonConnector(
        ef.structure,
        InitializedConstraintNextFunction(beh.ctm, {**beh.next, (lam, stray): lam}, Atom("nowhere", "2")),
    )
    r = validate_epsilon(broken)
    assert any("domain condition" in v for v in r.violations)
    assert any("initial index" in v for v in r.violations)


# --- properties ------------------------------------------------------------

node_sets = st.frozensets(st.sampled_from("ABCDEFG"), min_size=1, max_size=7)


@given(node_sets, st.data())
def test_flow_set_col_bijection(nodes, data):
    firing = data.draw(st.frozensets(st.sampled_from(sorted(nodes))))
    assert flow_set(col(nodes, firing)) == firing
    c = Coloring({n: data.draw(st.sampled_from([F, N])) for n in nodes})
    assert col(nodes, flow_set(c)) == c


@given(node_sets, node_sets, st.data())
def test_flow_set_of_union(n1, n2, data):
    c1 = col(n1, data.draw(st.frozensets(st.sampled_from(sorted(n1)))))
    c2 = col(n2, data.draw(st.frozensets(st.sampled_from(sorted(n2)))))
    if compatible(c1, c2):
        c = compose_colorings(c1, c2)
        assert flow_set(c) == flow_set(c1) | flow_set(c2)
        assert c.nodes == n1 | n2
    else:
        with pytest.raises(IncompatibleColorings):
            compose_colorings(c1, c2)


def test_ctm_composition_counts(lossyfifo):
    el, _, ef, _ = lossyfifo
    m = compose_ctms(el.ctm, ef.ctm)
    assert len(m.indexes) == len(el.ctm.indexes) * len(ef.ctm.indexes)
    assert all(x.coloring.nodes == {"A", "M", "B"} for rows in m.table.values() for x in rows)
