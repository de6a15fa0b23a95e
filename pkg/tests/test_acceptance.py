"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the verdict lines are written
straight to the terminal regardless of output capture.
"""

import itertools
import random
import time

import pytest

from reosem.bisim import check_bisim
from reosem.coloring import Atom, compose_epsilon_connectors
from reosem.automata import compose_alpha_connectors
from reosem.constraints import TOP, AtomEq, Conj, DataUniverse, Neg, equivalent, satisfiable
from reosem.generate import random_circuit, random_pair
from reosem.io.serialize import serialize
from reosem.primitives import PrimitiveKind, instantiate
from reosem.transform import inv_l_transform, l_transform

from . import invariant_suites
from .worked_examples import check_worked_examples
from .oracles import models, oracle_satisfiable

POPULATION_SEEDS = range(250)
PAIR_SEEDS = range(250)


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")

    return emit


def population():
    """Every primitive kind over two universes, then seeded random circuits."""
    out = []
    for kind in PrimitiveKind:
        nodes = [f"x{i}" for i in range(len(kind.roles))]
        for items in (["foo"], ["foo", "bar"]):
            u = DataUniverse(items)
            e, a = instantiate(kind, nodes, "1", u)
            out.append((f"{kind.value}/{len(items)}", u, e, a))
    for seed in POPULATION_SEEDS:
        c = random_circuit(random.Random(seed), max_primitives=5, max_universe=2)
        out.append((f"seed {seed}: {c.describe()}", c.universe, c.epsilon(), c.alpha()))
    return out


def test_criterion_1_worked_examples(report):
    start = time.perf_counter()
    bad = check_worked_examples()
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 1.0
    report(1, ok, f"worked examples match ({len(bad)} mismatches, {elapsed:.3f}s, limit 1s) {bad or ''}")
    assert not bad
    assert elapsed < 1.0


def test_criterion_2_bisimilarity(report):
    pop = population()
    start = time.perf_counter()
    failures = []
    for name, u, e, a in pop:
        r1 = check_bisim(l_transform(e), e, u=u)
        if not r1.bisimilar:
            failures.append(f"{name}: L(e) vs e: {r1.reason}")
        elif not {(lam, lam) for lam in e.behavior.ctm.indexes} <= r1.witness.pairs:
            failures.append(f"{name}: witness misses the diagonal")
        r2 = check_bisim(a, inv_l_transform(a), u=u)
        if not r2.bisimilar:
            failures.append(f"{name}: a vs 1/L(a): {r2.reason}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    report(2, ok, f"{len(pop)} models bisimilar both ways, {len(failures)} failures, {elapsed:.1f}s (limit 60s)")
    assert not failures, failures[:5]
    assert elapsed < 60


def test_criterion_3_inverse_round_trips(report):
    pop = population()
    failures = []
    for name, u, e, a in pop:
        if serialize(inv_l_transform(l_transform(e)), u) != serialize(e, u):
            failures.append(f"{name}: 1/L(L(e)) != e")
        if serialize(l_transform(inv_l_transform(a)), u) != serialize(a, u):
            failures.append(f"{name}: L(1/L(a)) != a")
    report(3, not failures, f"{len(pop)} models round-trip byte-equal, {len(failures)} failures")
    assert not failures, failures[:5]


def test_criterion_4_distributivity(report):
    failures = []
    for seed in PAIR_SEEDS:
        c, left, right = random_pair(random.Random(seed))
        e1, e2, a1, a2 = c.epsilon(left), c.epsilon(right), c.alpha(left), c.alpha(right)
        if l_transform(compose_epsilon_connectors(e1, e2)) != compose_alpha_connectors(
            l_transform(e1), l_transform(e2)
        ):
            failures.append(f"seed {seed}: L does not distribute")
        if inv_l_transform(compose_alpha_connectors(a1, a2)) != compose_epsilon_connectors(
            inv_l_transform(a1), inv_l_transform(a2)
        ):
            failures.append(f"seed {seed}: 1/L does not distribute")
    n = len(PAIR_SEEDS)
    report(4, not failures, f"{n} compatible pairs, exact equality in both directions, {len(failures)} failures")
    assert not failures, failures[:5]


def test_criterion_5_invariant_suites(report):
    counts, errors = {}, {}
    for name, suite in invariant_suites.SUITES.items():
        key = invariant_suites.RUN_KEYS[name]
        invariant_suites.RUNS[key] = 0
        try:
            suite()
        except Exception as exc:  # noqa: BLE001 - reported below
            errors[name] = exc
        counts[name] = invariant_suites.RUNS[key]
    short = {n: c for n, c in counts.items() if c < invariant_suites.EXAMPLES}
    ok = not errors and not short
    summary = ", ".join(f"{n}={c}" for n, c in counts.items())
    report(5, ok, f"invariant suites ({summary}); {len(errors)} falsified")
    assert not errors, errors
    assert not short, short


def _trees(leaves, depth):
    """Every core constraint of nesting depth at most ``depth`` over ``leaves``."""
    level = list(leaves)
    for _ in range(depth):
        level = list(leaves) + [Neg(g) for g in level] + [Conj(x, y) for x, y in itertools.product(level, level)]
    return list(dict.fromkeys(level))


def test_criterion_6_constraint_decisions(report):
    checked_sat = checked_eq = 0
    failures = []
    for items in (["foo"], ["foo", "bar"]):
        u = DataUniverse(items)
        for nodes in (("A",), ("A", "B")):
            leaves = [TOP] + [AtomEq(n, d) for n in nodes for d in items]
            deep = _trees(leaves, 2)
            shallow = _trees(leaves, 1) if len(nodes) == 2 else deep
            meaning = {g: models(g, nodes, items) for g in deep}
            for g in deep:
                for k in range(len(nodes) + 1):
                    for flow in itertools.combinations(nodes, k):
                        checked_sat += 1
                        if satisfiable(g, flow, u) != oracle_satisfiable(g, flow, nodes, items):
                            failures.append(f"satisfiable({g}, {flow}) over {items}")
            for g1 in deep:
                for g2 in shallow:
                    checked_eq += 1
                    if equivalent(g1, g2, nodes, u) != (meaning[g1] == meaning[g2]):
                        failures.append(f"equivalent({g1}, {g2}) over {items}")
    report(
        6,
        not failures,
        f"{checked_sat} satisfiable and {checked_eq} equivalent checks agree with truth tables, "
        f"{len(failures)} disagreements",
    )
    assert not failures, failures[:5]
