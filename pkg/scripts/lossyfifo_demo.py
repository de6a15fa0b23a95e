"""Build LossySync(A, M) * FIFO(M, B) over {"foo"} in both models and print them.

Shows the composed coloring tables, the product automaton, L of the coloring
model, and the bi-simulation witness between the two.

    python3 scripts/lossyfifo_demo.py
"""

from reosem import (
    DataUniverse,
    PrimitiveKind,
    check_bisim,
    compose_alpha_connectors,
    compose_epsilon_connectors,
    format_constraint,
    instantiate,
    l_transform,
)
from reosem.coloring import coloring_key, flow_set, index_key
from reosem.automata import transition_key
from reosem.io.dot import simplify_display


def main():
    u = DataUniverse(["foo"])
    el, al = instantiate(PrimitiveKind.LOSSYSYNC, ["A", "M"], "1", u)
    ef, af = instantiate(PrimitiveKind.FIFO, ["M", "B"], "2", u)
    e = compose_epsilon_connectors(el, ef)
    a = compose_alpha_connectors(al, af)

    print("coloring tables")
    for lam in sorted(e.behavior.ctm.indexes, key=index_key):
        print(f"  {lam}")
        for x in sorted(e.behavior.ctm.table[lam], key=coloring_key):
            succ = e.behavior.next[(lam, x)]
            flow = "{" + ",".join(sorted(flow_set(x.coloring))) + "}"
            print(f"    {flow:9} {format_constraint(simplify_display(x.constraint)):32} -> {succ}")

    print("\nproduct automaton")
    for t in sorted(a.automaton.transitions, key=transition_key):
        flow = "{" + ",".join(sorted(t.firing)) + "}"
        print(f"  {t.source} --{flow} {format_constraint(simplify_display(t.constraint))}--> {t.target}")

    print(f"\nL(coloring model) equals product automaton: {l_transform(e) == a}")
    verdict = check_bisim(a, e, u=u)
    print(f"bisimilar: {verdict.bisimilar}")
    for q, lam in verdict.witness.sorted_pairs():
        print(f"  {q} ~ {lam}")


if __name__ == "__main__":
    main()
