import pytest
from hypothesis import given
from hypothesis import strategies as st

from reosem.core import (
    ConnectorStructure,
    NodeClass,
    classify_nodes,
    compose_structures,
    validate_structure,
)
from reosem.errors import IncompatibleStructures, InvalidModel

S = ConnectorStructure.of


def test_primitive_structure_is_valid():
    assert validate_structure(S([("A", "B")])).ok


def test_isolated_node_reported():
    r = validate_structure(ConnectorStructure(frozenset("ABC"), frozenset({("A", "B")})))
    assert not r.ok
    assert any("C" in v and "isolated" in v for v in r.violations)


def test_self_loop_allowed_and_internal():
    s = S([("A", "A")])
    assert validate_structure(s).ok
    assert classify_nodes(s) == {"A": NodeClass.INTERNAL}


def test_unknown_endpoint_and_bad_names():
    r = validate_structure(ConnectorStructure(frozenset({"A", "B c"}), frozenset({("A", "Z")})))
    assert any("unknown node Z" in v for v in r.violations)
    assert any("bad node name" in v for v in r.violations)


def test_classify_sync_and_lossyfifo():
    assert classify_nodes(S([("A", "B")])) == {"A": NodeClass.INPUT, "B": NodeClass.OUTPUT}
    assert classify_nodes(S([("A", "M"), ("M", "B")])) == {
        "A": NodeClass.INPUT,
        "M": NodeClass.INTERNAL,
        "B": NodeClass.OUTPUT,
    }


def test_classify_rejects_invalid():
    with pytest.raises(InvalidModel):
        classify_nodes(ConnectorStructure(frozenset("AB"), frozenset()))


def test_compose_lossyfifo_structure():
    got = compose_structures(S([("A", "M")]), S([("M", "B")]))
    assert got == ConnectorStructure(frozenset("AMB"), frozenset({("A", "M"), ("M", "B")}))


def test_compose_disjoint_is_union():
    got = compose_structures(S([("A", "B")]), S([("C", "D")]))
    assert got.nodes == frozenset("ABCD") and len(got.flow) == 2


def test_compose_shared_input_rejected():
    with pytest.raises(IncompatibleStructures) as exc:
        compose_structures(S([("A", "B")]), S([("A", "C")]))
    assert exc.value.nodes == ("A",)


# structures over a small alphabet
names = st.sampled_from("ABCDEF")
structures = st.frozensets(st.tuples(names, names), min_size=1, max_size=6).map(S)


@given(structures)
def test_classes_partition_nodes(s):
    cls = classify_nodes(s)
    assert set(cls) == s.nodes
    groups = [s.inputs(), s.outputs(), s.internals()]
    assert frozenset().union(*groups) == s.nodes
    assert sum(map(len, groups)) == len(s.nodes)
    for n, c in cls.items():
        assert n in {NodeClass.INPUT: s.inputs(), NodeClass.OUTPUT: s.outputs(), NodeClass.INTERNAL: s.internals()}[c]


@given(structures, structures)
def test_compose_commutative_and_valid(s1, s2):
    try:
        a = compose_structures(s1, s2)
    except IncompatibleStructures:
        with pytest.raises(IncompatibleStructures):
            compose_structures(s2, s1)
        return
    assert a == compose_structures(s2, s1)
    assert validate_structure(a).ok


@given(structures, structures, structures)
def test_compose_associative_when_defined(s1, s2, s3):
    try:
        left = compose_structures(compose_structures(s1, s2), s3)
        right = compose_structures(s1, compose_structures(s2, s3))
    except IncompatibleStructures:
        return
    assert left == right
