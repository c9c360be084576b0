"""Command-line frontend: orthosefe <check|oracle|transform|generate|draw|spqr|validate>.

Exit codes: 0 feasible or valid, 1 infeasible or invalid, 2 usage or input
error, 3 internal error (a produced witness failed its re-check).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

import networkx as nx

from .constraints import (
    CapExceeded,
    NotSefeError,
    Verdict,
    check_assignment,
    check_sefe_orthogonality,
    dump_witness,
    load_witness,
    oracle,
    rotation_from_assignment,
)
from .cyclesolver import InternalError, lemma7_transform, outerplanarize, reduce_degree, solve_cycle_detailed
from .drawing import DrawingError, draw, export_svg, validate_drawing
from .embedding import SearchTooLarge, rotation_search
from .gadgets import generate_random, generate_theorem3, generate_theorem4, parse_nae3sat
from .instance import CycleInstance, InstanceError, SunflowerInstance, as_cycle, dump_instance, load_instance
from .naesat import dump_dimacs
from .spqr import NotEmbeddable, build_spqr, normalize_attachments, solve_biconnected

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

TRANSFORMS = {"2": outerplanarize, "3": reduce_degree, "7": lemma7_transform}
TRANSFORM_HELP = (
    "2: make graph 1 outerplanar (graph-1 degree at most 3); "
    "3: reduce graph-1 degree to 3; "
    "7: separate graph-1 degree-4 vertices, then make graph 1 outerplanar"
)


class UsageError(Exception):
    pass


def _read_instance(path: str) -> CycleInstance | SunflowerInstance:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return load_instance(data)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def _report(inst, verdict: Verdict) -> int:
    print("feasible" if verdict.feasible else "infeasible", end="")
    print(f": {verdict.reason}" if verdict.reason else "")
    for v in verdict.violations:
        print("  " + v.describe(inst))
    return EXIT_OK if verdict.feasible else EXIT_NO


def _shape(inst) -> tuple[str, CycleInstance | SunflowerInstance]:
    c = as_cycle(inst)
    if c is not None:
        return "cycle", c
    g = nx.Graph(list(inst.shared))
    g.add_nodes_from(range(inst.n))
    if inst.n >= 3 and nx.is_biconnected(g):
        return "biconnected", inst
    return "other", inst


def rotations_to_json(inst, rot) -> str:
    names = inst.names
    doc = {names[v]: [names[w] for w in rot[v]] for v in sorted(rot, key=lambda v: names[v])}
    return json.dumps({"rotations": doc}, indent=1)


def rotations_from_json(inst, text: str) -> dict[int, tuple[int, ...]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"parse error: {exc}") from None
    raw = doc.get("rotations") if isinstance(doc, dict) else None
    if not isinstance(raw, dict):
        raise InstanceError("embedding must contain a 'rotations' object")
    index = inst.index
    out = {}
    for v, ring in raw.items():
        if v not in index or not isinstance(ring, list) or any(w not in index for w in ring):
            raise InstanceError(f"rotation of {v!r} names unknown vertices")
        out[index[v]] = tuple(index[w] for w in ring)
    for v in range(inst.n):
        out.setdefault(v, ())
    return out


def _rotation_witness(inst, shape: str, cycle_witness=None):
    """A rotation system passing the orthogonality check, or None if infeasible."""
    if shape == "cycle" and cycle_witness is not None:
        return rotation_from_assignment(inst, cycle_witness)
    v = rotation_search(inst)
    return v.witness if v.feasible else None


# ---------------------------------------------------------------------------
# Subcommands


def cmd_check(args) -> int:
    inst = _read_instance(args.file)
    shape, inst = _shape(inst)
    if shape == "cycle":
        sol = solve_cycle_detailed(inst)
        if args.emit_trace:
            _write(args.emit_trace, json.dumps([t.to_dict() for t in sol.traces], indent=1))
        if args.emit_formula and sol.certificate is not None:
            _write(args.emit_formula, dump_dimacs(sol.certificate.formula))
        if args.emit_witness and sol.verdict.feasible:
            _write(args.emit_witness, dump_witness(inst, sol.verdict.witness))
        return _report(inst, sol.verdict)
    if shape == "biconnected":
        verdict = solve_biconnected(inst, jobs=args.jobs)
        if args.emit_witness and verdict.feasible:
            try:
                rot = _rotation_witness(inst, shape)
            except SearchTooLarge:
                print("note: instance too large to assemble a rotation witness", file=sys.stderr)
            else:
                if rot is None or not check_sefe_orthogonality(inst, rot).feasible:
                    raise InternalError("no rotation system realizes a feasible verdict")
                _write(args.emit_witness, rotations_to_json(inst, rot))
        return _report(inst, verdict)
    raise UsageError("check handles cycle or biconnected shared graphs only; use 'oracle'")


def cmd_oracle(args) -> int:
    inst = _read_instance(args.file)
    shape, inst = _shape(inst)
    if shape == "cycle":
        verdict = oracle(inst, cap=None if args.no_cap else args.cap, jobs=args.jobs)
        if args.emit_witness and verdict.feasible:
            _write(args.emit_witness, dump_witness(inst, verdict.witness))
        return _report(inst, verdict)
    verdict = rotation_search(inst)
    if args.emit_witness and verdict.feasible:
        _write(args.emit_witness, rotations_to_json(inst, verdict.witness))
    return _report(inst, verdict)


def cmd_transform(args) -> int:
    inst = as_cycle(_read_instance(args.file))
    if inst is None:
        raise UsageError("transformations apply to cycle instances only")
    out, traces = TRANSFORMS[args.lemma](inst)
    if args.emit_trace:
        _write(args.emit_trace, json.dumps([t.to_dict() for t in traces], indent=1))
    _write(args.output, dump_instance(out))
    print(f"{len(traces)} transformation step(s)", file=sys.stderr)
    return EXIT_OK


def _parse_kv(items: Sequence[str]) -> dict[str, int]:
    out = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep or key not in ("n", "m", "seed"):
            raise UsageError(f"--random expects n=.. m=.. seed=.., got {item!r}")
        try:
            out[key] = int(val)
        except ValueError:
            raise UsageError(f"{key} must be an integer") from None
    return out


def cmd_generate(args) -> int:
    if args.random is not None:
        kv = _parse_kv(args.random)
        if "n" not in kv or "m" not in kv:
            raise UsageError("--random needs n= and m=")
        seed = kv.get("seed", _env_seed())
        m = kv["m"]
        inst = generate_random(kv["n"], [m - m // 2, m // 2], seed=seed)
    elif args.nae3sat is not None:
        try:
            text = Path(args.nae3sat).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {args.nae3sat}: {exc.strerror}") from None
        try:
            f = parse_nae3sat(text)
        except ValueError as exc:
            raise InstanceError(str(exc)) from None
        inst, _ = (generate_theorem3 if args.theorem == "3" else generate_theorem4)(f)
    else:
        raise UsageError("generate needs --nae3sat FILE or --random n=.. m=.. seed=..")
    _write(args.output, dump_instance(inst))
    return EXIT_OK


def _env_seed() -> int:
    raw = os.environ.get("ORTHOSEFE_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"ORTHOSEFE_SEED must be an integer, got {raw!r}") from None


def cmd_draw(args) -> int:
    inst = _read_instance(args.file)
    shape, inst = _shape(inst)
    if shape == "other" or (shape == "cycle" and inst.isolated):
        raise UsageError("drawings need a biconnected shared graph")
    if args.embedding:
        try:
            text = Path(args.embedding).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {args.embedding}: {exc.strerror}") from None
        rot = rotations_from_json(inst, text)
        try:
            verdict = check_sefe_orthogonality(inst, rot)
        except NotSefeError as exc:
            print(f"invalid embedding: {exc}")
            return EXIT_NO
        if not verdict.feasible:
            return _report(inst, verdict)
    else:
        if shape == "cycle":
            sol = solve_cycle_detailed(inst)
            if not sol.verdict.feasible:
                return _report(inst, sol.verdict)
            rot = _rotation_witness(inst, shape, sol.verdict.witness)
        else:
            if not solve_biconnected(inst, jobs=args.jobs).feasible:
                print("infeasible")
                return EXIT_NO
            rot = _rotation_witness(inst, shape)
            if rot is None:
                raise InternalError("no rotation system realizes a feasible verdict")
    d = draw(inst, rot)
    check = validate_drawing(inst, d)
    if not check.feasible:
        raise InternalError("constructed drawing failed validation")
    bends = max((d.bends(key) for key in d.paths), default=0)
    xs = [p[0] for p in d.points.values()]
    ys = [p[1] for p in d.points.values()]
    print(f"drawing: {len(d.points)} vertices, {len(d.paths)} edges, max bends {bends}, "
          f"grid {max(xs) - min(xs) + 1}x{max(ys) - min(ys) + 1}")
    if args.output:
        _write(args.output, export_svg(d))
    return EXIT_OK


def cmd_spqr(args) -> int:
    inst = _read_instance(args.file)
    if isinstance(inst, CycleInstance):
        if inst.isolated:
            raise UsageError("SPQR trees need a biconnected shared graph")
        inst = SunflowerInstance(inst.names, inst.shared, inst.exclusive)
    if args.normalized:
        try:
            inst = normalize_attachments(inst)
        except NotEmbeddable as exc:
            print(f"infeasible: {exc}")
            return EXIT_NO
    tree = build_spqr(inst.n, inst.shared)
    sys.stdout.write(tree.dump(inst.names))
    return EXIT_OK


def cmd_validate(args) -> int:
    inst = _read_instance(args.file)
    try:
        text = Path(args.witness).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.witness}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"parse error: {exc}") from None
    if isinstance(doc, dict) and "rotations" in doc:
        rot = rotations_from_json(inst, text)
        try:
            return _report(inst, check_sefe_orthogonality(inst, rot))
        except NotSefeError as exc:
            print(f"invalid: {exc}")
            return EXIT_NO
    c = as_cycle(inst)
    if c is None:
        raise UsageError("side-assignment witnesses need a cycle instance")
    return _report(c, check_assignment(c, load_witness(c, text)))


# ---------------------------------------------------------------------------
# Entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orthosefe", description="Decide and draw OrthoSEFE instances.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(sp):
        sp.add_argument("file", help="instance JSON")
        return sp

    def with_jobs(sp):
        sp.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
        return sp

    sp = with_jobs(with_file(sub.add_parser("check", help="decide with the polynomial pipeline")))
    sp.add_argument("--emit-witness", metavar="PATH", help="write the side assignment or rotation JSON when feasible")
    sp.add_argument("--emit-trace", metavar="PATH", help="write the transformation trace JSON")
    sp.add_argument("--emit-formula", metavar="PATH", help="write the NAE formula in DIMACS-like form")
    sp.set_defaults(func=cmd_check)

    sp = with_jobs(with_file(sub.add_parser("oracle", help="decide by exhaustive search")))
    sp.add_argument("--cap", type=int, default=24, help="max exclusive edges for the flip search")
    sp.add_argument("--no-cap", action="store_true", help="search without the exclusive-edge cap")
    sp.add_argument("--emit-witness", metavar="PATH", help="write the side assignment JSON when feasible")
    sp.set_defaults(func=cmd_oracle)

    sp = with_file(sub.add_parser("transform", help="apply a gadget transformation"))
    sp.add_argument("--lemma", choices=sorted(TRANSFORMS), required=True, help=TRANSFORM_HELP)
    sp.add_argument("--emit-trace", metavar="PATH", help="write the transformation trace JSON")
    sp.add_argument("-o", "--output", metavar="PATH", help="transformed instance JSON (default stdout)")
    sp.set_defaults(func=cmd_transform)

    sp = sub.add_parser("generate", help="generate instances")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--nae3sat", metavar="FILE", help="positive NAE3SAT clauses, three names per line")
    src.add_argument("--random", nargs="+", metavar="KEY=VAL", help="n=.. m=.. seed=..")
    sp.add_argument("--theorem", choices=("3", "4"), default="4", help="three-graph (3) or two-graph (4) construction")
    sp.add_argument("-o", "--output", metavar="PATH", help="instance JSON (default stdout)")
    sp.set_defaults(func=cmd_generate)

    sp = with_jobs(with_file(sub.add_parser("draw", help="orthogonal drawing with at most three bends per edge")))
    sp.add_argument("--embedding", metavar="PATH", help='rotation JSON {"rotations": {...}}')
    sp.add_argument("-o", "--output", metavar="PATH", help="SVG output")
    sp.set_defaults(func=cmd_draw)

    sp = with_file(sub.add_parser("spqr", help="dump the SPQR-tree of the shared graph"))
    sp.add_argument("--normalized", action="store_true", help="normalize attachments first")
    sp.set_defaults(func=cmd_spqr)

    sp = with_file(sub.add_parser("validate", help="re-check a witness"))
    sp.add_argument("--witness", metavar="PATH", required=True, help="side assignment or rotation JSON")
    sp.set_defaults(func=cmd_validate)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (InternalError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UsageError, InstanceError, CapExceeded, SearchTooLarge, DrawingError, NotSefeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotEmbeddable as exc:
        print(f"infeasible: {exc}")
        return EXIT_NO


def main() -> None:
    sys.exit(run())
