"""Sweep random circuits and check the transform laws on each one.

For every circuit this checks bi-similarity of L(e) with e and of a with
1/L(a), both inverse round trips (byte-equal serializations), and
distributivity of L and 1/L over a random split of the circuit.  Prints a
summary table and optionally writes per-circuit rows as JSON lines.

    python3 scripts/law_sweep.py --count 500 --max-primitives 5 --max-universe 2
"""

import argparse
import json
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass

from reosem.automata import compose_alpha_connectors
from reosem.bisim import check_bisim
from reosem.coloring import compose_epsilon_connectors
from reosem.generate import random_pair
from reosem.io.serialize import serialize
from reosem.transform import inv_l_transform, l_transform


@dataclass
class SweepConfig:
    count: int = 200
    seed: int = 0
    max_primitives: int = 5
    max_universe: int = 2
    mode: str = "semantic"
    engine: str = "refine"


@dataclass
class Row:
    seed: int
    circuit: str
    states: int
    transitions: int
    bisim_l: bool
    bisim_inv: bool
    round_trip_e: bool
    round_trip_a: bool
    distributes_l: bool
    distributes_inv: bool
    seconds: float


def check_one(seed: int, cfg: SweepConfig) -> Row:
    start = time.perf_counter()
    c, left, right = random_pair(random.Random(seed), cfg.max_primitives, cfg.max_universe)
    u = c.universe
    e, a = c.epsilon(), c.alpha()
    e1, e2, a1, a2 = c.epsilon(left), c.epsilon(right), c.alpha(left), c.alpha(right)
    kw = dict(mode=cfg.mode, u=u, engine=cfg.engine)
    return Row(
        seed=seed,
        circuit=c.describe(),
        states=len(a.automaton.states),
        transitions=len(a.automaton.transitions),
        bisim_l=check_bisim(l_transform(e), e, **kw).bisimilar,
        bisim_inv=check_bisim(a, inv_l_transform(a), **kw).bisimilar,
        round_trip_e=serialize(inv_l_transform(l_transform(e)), u) == serialize(e, u),
        round_trip_a=serialize(l_transform(inv_l_transform(a)), u) == serialize(a, u),
        distributes_l=l_transform(compose_epsilon_connectors(e1, e2))
        == compose_alpha_connectors(l_transform(e1), l_transform(e2)),
        distributes_inv=inv_l_transform(compose_alpha_connectors(a1, a2))
        == compose_epsilon_connectors(inv_l_transform(a1), inv_l_transform(a2)),
        seconds=time.perf_counter() - start,
    )


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in SweepConfig.__dataclass_fields__.values():
        p.add_argument("--" + f.name.replace("_", "-"), type=type(f.default), default=f.default)
    p.add_argument("--jsonl", help="write one JSON row per circuit here")
    args = p.parse_args(argv)
    cfg = SweepConfig(**{k: getattr(args, k) for k in SweepConfig.__dataclass_fields__})

    rows = [check_one(cfg.seed + i, cfg) for i in range(cfg.count)]
    if args.jsonl:
        with open(args.jsonl, "w", encoding="utf-8") as fh:
            for r in rows:
                fh.write(json.dumps(asdict(r)) + "\n")

    checks = [k for k in Row.__dataclass_fields__ if k.startswith(("bisim", "round", "distributes"))]
    held = Counter({k: sum(getattr(r, k) for r in rows) for k in checks})
    print(f"{cfg}")
    for k in checks:
        print(f"  {k:16} {held[k]}/{len(rows)}")
    sizes = [r.states for r in rows]
    print(f"  states: max {max(sizes)}, mean {sum(sizes) / len(sizes):.1f}")
    print(f"  total {sum(r.seconds for r in rows):.2f}s, slowest {max(r.seconds for r in rows):.3f}s")
    return 0 if all(held[k] == len(rows) for k in checks) else 1


if __name__ == "__main__":
    raise SystemExit(main())
