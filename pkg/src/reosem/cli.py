"""``reosem`` command line.

Exit codes: 0 success or bisimilar, 1 not bisimilar or invalid model,
2 usage or parse error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .automata import AlphaConnector, validate_ca
from .bisim import ENGINES, MODES, check_bisim
from .coloring import EpsilonConnector, validate_epsilon
from .constraints import ConstraintSyntaxError, DataUniverse
from .errors import (
    DslError,
    FormatError,
    InvalidModel,
    ModelViolation,
    NodeSetMismatch,
    NotAdmitted,
    ResourceLimit,
)
from .io.dot import export_dot
from .io.dsl import compile_circuit
from .io.serialize import loads, serialize
from .io.trace import export_trace, resolve_steps, trace_to_json
from .transform import inv_l_transform, l_transform

OK, FAIL, USAGE, LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str, kind=None):
    model, u = loads(_read(path))
    if kind is not None and not isinstance(model, kind):
        want = "epsilon" if kind is EpsilonConnector else "alpha"
        raise UsageError(f"{path}: expected an {want} model file")
    return model, u


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _universe(args, *found):
    given = [u for u in found if u is not None]
    if getattr(args, "universe", None):
        given.insert(0, DataUniverse(args.universe))
    if any(u != given[0] for u in given[1:]):
        raise UsageError("model files and --universe disagree on the data universe")
    return given[0] if given else None


def cmd_compose(args) -> int:
    built = compile_circuit(_read(args.circuit))
    name = args.name or Path(args.circuit).stem
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    for suffix, model in (("eps", built.epsilon), ("ca", built.alpha)):
        path = outdir / f"{name}.{suffix}.reoml"
        path.write_text(serialize(model, built.universe), encoding="utf-8", newline="\n")
        print(path)
    return OK


def cmd_to_ca(args) -> int:
    e, u = _load(args.file, EpsilonConnector)
    _emit(serialize(l_transform(e), u), args.output)
    return OK


def cmd_to_col(args) -> int:
    a, u = _load(args.file, AlphaConnector)
    _emit(serialize(inv_l_transform(a), u), args.output)
    return OK


def cmd_bisim(args) -> int:
    a, ua = _load(args.ca, AlphaConnector)
    e, ue = _load(args.eps, EpsilonConnector)
    u = _universe(args, ua, ue)
    if args.mode == "semantic" and u is None:
        raise UsageError("semantic mode needs a data universe: add one to the files or pass --universe")
    verdict = check_bisim(a, e, mode=args.mode, u=u, max_assignments=args.max_assignments, engine=args.engine)
    if verdict.bisimilar:
        pairs = verdict.witness.sorted_pairs()
        print(f"bisimilar ({len(pairs)} related pairs)")
        for q, lam in pairs:
            print(f"  {q} ~ {lam}")
        return OK
    q, lam = verdict.culprit
    print("not bisimilar")
    print(f"  culprit: {q} ~ {lam}")
    print(f"  reason: {verdict.reason}")
    return FAIL


def cmd_check(args) -> int:
    try:
        model, u = _load(args.file)
    except ModelViolation as exc:
        print("invalid")
        for v in exc.violations:
            print(f"  {v}")
        return FAIL
    u = _universe(args, u)
    if isinstance(model, EpsilonConnector):
        report = validate_epsilon(model)
        kind = "epsilon"
    else:
        report = validate_ca(model, u, args.max_assignments)
        kind = "alpha"
    print(f"{kind} model: {'valid' if report.ok else 'invalid'}")
    for v in report.violations:
        print(f"  {v}")
    if kind == "alpha":
        if report.deterministic is None:
            print("determinism: unknown (no data universe)")
        else:
            print(f"determinism: {'deterministic' if report.deterministic else 'nondeterministic'}")
            for t1, t2 in report.nondeterministic_pairs:
                print(f"  {t1}")
                print(f"  {t2}")
    return OK if report.ok else FAIL


def cmd_render(args) -> int:
    model, _ = _load(args.file)
    _emit(export_dot(model, simplify=args.simplify, name=Path(args.file).name), args.output)
    return OK


def cmd_trace(args) -> int:
    e, _ = _load(args.file, EpsilonConnector)
    try:
        raw = json.loads(_read(args.steps))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.steps}: invalid JSON: {exc}") from None
    if not isinstance(raw, list) or not all(isinstance(r, dict) for r in raw):
        raise UsageError(f"{args.steps}: expected a JSON list of step objects")
    chosen, data = resolve_steps(e, raw)
    _emit(trace_to_json(export_trace(e, chosen, data)), args.output)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reosem", description="Reo connector semantics toolkit")
    p.add_argument(
        "--max-assignments",
        type=int,
        default=None,
        metavar="N",
        help="bound on data assignments enumerated per constraint check",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("compose", help="elaborate a circuit file into both model files")
    s.add_argument("circuit")
    s.add_argument("--out-dir", default=".")
    s.add_argument("--name", help="output base name (default: circuit file stem)")
    s.set_defaults(run=cmd_compose)

    for name, fn, help_ in (
        ("to-ca", cmd_to_ca, "coloring model to constraint automaton"),
        ("to-col", cmd_to_col, "constraint automaton to coloring model"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file")
        s.add_argument("-o", "--output")
        s.set_defaults(run=fn)

    s = sub.add_parser("bisim", help="check bi-simulation between an automaton and a coloring model")
    s.add_argument("ca")
    s.add_argument("eps")
    s.add_argument("--mode", choices=MODES, default="semantic")
    s.add_argument("--engine", choices=ENGINES, default="refine")
    s.add_argument("--universe", nargs="+", metavar="ITEM")
    s.set_defaults(run=cmd_bisim)

    s = sub.add_parser("check", help="validate a model file; reports determinism for automata")
    s.add_argument("file")
    s.add_argument("--universe", nargs="+", metavar="ITEM")
    s.set_defaults(run=cmd_check)

    s = sub.add_parser("render", help="emit Graphviz DOT")
    s.add_argument("file")
    s.add_argument("--simplify", action="store_true", help="hide true conjuncts and double negations")
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_render)

    s = sub.add_parser("trace", help="run a coloring model along chosen steps")
    s.add_argument("file")
    s.add_argument("--steps", required=True, help="JSON list of {flow, constraint?, data?}")
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_trace)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.run(args)
    except ResourceLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return LIMIT
    except (InvalidModel, NotAdmitted) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL
    except (UsageError, FormatError, DslError, ConstraintSyntaxError, NodeSetMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def main():
    sys.exit(run())
