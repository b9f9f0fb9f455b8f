"""Command-line front end.

Exit status: 0 on success (including "absent" answers), 1 on domain or
parse errors and on searches that ran out of budget, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .constructions import TARGETS, ConstructionSpec, extremal_candidate, formula_tsv_row
from .core import VertexSet, format_hg, read_hg, shadow
from .errors import HypergraphError, SearchLimitExceeded
from .proof import expand_witness, full_subgraph, sample_psi_rounds
from .solver import SolveConfig, compare_with_formula, solve_exact
from .structures import Family, StructureKind, StructureWitness, find_structure

KINDS = [f.value for f in Family]


def _emit(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _core(args, n: int) -> Optional[VertexSet]:
    if args.core is None:
        return None
    return VertexSet.of(n, (int(v) - 1 for v in args.core.split(",")))


def cmd_construct(args) -> int:
    spec = ConstructionSpec(args.n, args.r, args.k, args.target, _core(args, args.n))
    H = extremal_candidate(spec)
    note = f"extremal candidate n={args.n} r={args.r} k={args.k} target={args.target}"
    _emit(format_hg(H, note), args.out)
    return 0


def cmd_formula(args) -> int:
    _emit(formula_tsv_row(args.n, args.r, args.k, args.target) + "\n", args.out)
    return 0


def cmd_detect(args) -> int:
    H = read_hg(args.input)
    w = find_structure(H, StructureKind(Family(args.kind), args.k), args.node_limit)
    _emit("absent\n" if w is None else w.to_json(True) + "\n", args.out)
    return 0


def cmd_expand(args) -> int:
    H = read_hg(args.input)
    with open(args.shadow_witness, encoding="utf-8") as fh:
        sw = StructureWitness.from_json(fh.read(), H.n)
    w = expand_witness(H, sw)
    _emit("absent\n" if w is None else w.to_json(True) + "\n", args.out)
    return 0


def cmd_fullsub(args) -> int:
    H = read_hg(args.input)
    F = full_subgraph(H, args.d)
    _emit(format_hg(F, f"{args.d + 1}-full subgraph"), args.out)
    return 0


def cmd_sample_psi(args) -> int:
    H = read_hg(args.input)
    E = shadow(H).masks
    res = sample_psi_rounds(H, E, args.k, args.t, args.seed, args.rounds)
    if res is None:
        _emit("absent\n", args.out)
        return 0
    parts = " | ".join(" ".join(str(v + 1) for v in p.members) for p in res.parts)
    _emit(format_hg(res.G, f"round {res.round}\nparts {parts}"), args.out)
    return 0


def cmd_solve(args) -> int:
    cfg = SolveConfig(args.n, args.r, StructureKind(Family(args.kind), args.k),
                      node_limit=args.node_limit, time_limit=args.time_limit,
                      deterministic=args.deterministic, workers=args.workers,
                      symmetry_breaking=args.symmetry_breaking)
    res = solve_exact(cfg)
    if args.witness_file:
        with open(args.witness_file, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(format_hg(res.witness_family, f"{res.status} family, {res.lower_bound} edges"))
    _emit(res.to_json(args.witness_file) + "\n", args.out)
    return 0


def cmd_compare(args) -> int:
    cmp = compare_with_formula(args.n, args.r, args.k, args.target, node_limit=args.node_limit,
                               time_limit=args.time_limit, symmetry_breaking=args.symmetry_breaking)
    _emit(json.dumps(cmp.report(), sort_keys=True) + "\n", args.out)
    return 0


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperturan", description="Turán problems for hypergraph paths and cycles")
    sub = p.add_subparsers(dest="command", required=True)

    def nrk(sp):
        sp.add_argument("--n", type=_positive, required=True)
        sp.add_argument("--r", type=_positive, required=True)
        sp.add_argument("--k", type=_positive, required=True)

    def out(sp):
        sp.add_argument("--out", default=None, help="output path (default: stdout)")

    sp = sub.add_parser("construct", help="write the extremal construction as .hg")
    nrk(sp)
    sp.add_argument("--target", choices=TARGETS, required=True)
    sp.add_argument("--core", default=None, help="comma-separated 1-based core vertices")
    out(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("formula", help="closed-form value as a TSV row")
    nrk(sp)
    sp.add_argument("--target", choices=TARGETS, required=True)
    out(sp)
    sp.set_defaults(func=cmd_formula)

    sp = sub.add_parser("detect", help="search a .hg file for a path or cycle")
    sp.add_argument("--kind", choices=KINDS, required=True)
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--node-limit", type=_positive, default=None)
    out(sp)
    sp.set_defaults(func=cmd_detect)

    sp = sub.add_parser("expand", help="lift a shadow witness into the host")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--shadow-witness", required=True)
    out(sp)
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("fullsub", help="greedy (d+1)-full subgraph")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--d", type=_positive, required=True)
    out(sp)
    sp.set_defaults(func=cmd_fullsub)

    sp = sub.add_parser("sample-psi", help="random sampling for complete partite shadows")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--t", type=_positive, default=2)
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--rounds", type=_positive, default=20)
    out(sp)
    sp.set_defaults(func=cmd_sample_psi)

    sp = sub.add_parser("solve", help="exact extremal number by branch-and-bound")
    nrk(sp)
    sp.add_argument("--kind", choices=KINDS, required=True)
    sp.add_argument("--time-limit", type=float, default=None)
    sp.add_argument("--node-limit", type=_positive, default=None)
    sp.add_argument("--workers", type=_positive, default=1)
    sp.add_argument("--deterministic", action="store_true")
    sp.add_argument("--symmetry-breaking", action="store_true")
    sp.add_argument("--witness-file", default=None)
    out(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("compare", help="solver value beside the closed form")
    nrk(sp)
    sp.add_argument("--target", choices=list(TARGETS) + ["linear-path", "linear-cycle"], required=True)
    sp.add_argument("--time-limit", type=float, default=None)
    sp.add_argument("--node-limit", type=_positive, default=None)
    sp.add_argument("--symmetry-breaking", action="store_true")
    out(sp)
    sp.set_defaults(func=cmd_compare)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SearchLimitExceeded as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return 1
    except (HypergraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
