"""Command-line driver: ``gen``, ``verify``, ``witness`` and ``tau``.

Exit status: 0 when every check passes, 1 on a check failure, 2 on a usage
or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import GuardError
from .export import digraph_dot, lifted_dot, witness_json, witness_text
from .graph import bits, matching_covering, popcount
from .instances import (InstanceFormatError, complete_family, dumps_instance, gen,
                        load_instance, random_sweep)
from .matroid import rank
from .robust import build_witness, check_witness
from .sweep import records_csv, records_jsonl, run_sweep
from .tau import hs22_bound, tau_profile
from .transversal import optimal_base_lifted, transversal_oracle

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")


def _parse_indices(spec: str) -> list[int]:
    spec = spec.strip()
    if not spec:
        return []
    try:
        return [int(tok) for tok in spec.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated left vertex indices, got {spec!r}") from None


def _parse_range(spec: str) -> tuple[int, int]:
    try:
        start, stop = (int(tok) for tok in spec.split(":"))
    except ValueError:
        raise UsageError(f"expected START:STOP, got {spec!r}") from None
    return start, stop


def cmd_gen(args) -> int:
    inst = gen(args.seed, args.nu, args.nv, args.p, args.wmax, args.k)
    text = dumps_instance(inst)
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    instances = [load_instance(p) for p in args.instances]
    if args.seeds:
        start, stop = _parse_range(args.seeds)
        instances += random_sweep(start, stop)
    if args.complete:
        instances += list(complete_family())
    records = run_sweep(instances, jobs=args.jobs, inject_fault=args.inject_fault,
                        timing=args.timing)
    _write(args.csv, records_csv(records))
    _write(args.json, records_jsonl(records))
    failures = [r for r in records if r.failed]
    for rec in failures:
        for v in rec.violations:
            print(f"FAIL {rec.instance_id}: {v}")
    print(f"{len(records)} instances, {len(failures)} failed")
    return EXIT_FAIL if failures else EXIT_OK


def cmd_witness(args) -> int:
    inst = load_instance(args.instance)
    g, w, k = inst.graph, inst.weights, inst.k
    b_list = _parse_indices(args.base)
    if any(not 0 <= u < g.left_count for u in b_list):
        raise UsageError(f"B = {b_list} names a vertex outside 0..{g.left_count - 1}")
    b = bits(b_list)
    if matching_covering(g, b) is None:
        raise UsageError(f"B = {sorted(b_list)} is not independent in M_G: no matching covers it")
    r = rank(transversal_oracle(g))
    if popcount(b) != r:
        raise UsageError(f"B = {sorted(b_list)} is independent but not a base (rank is {r})")
    if args.subset is not None:
        x = bits(_parse_indices(args.subset))
    else:
        x, _ = optimal_base_lifted(g, w, k)
    try:
        built = build_witness(g, w, k, x, b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(witness_text(built))
    ok = check_witness(transversal_oracle(g), w, k, x, b, built.witness)
    print("witness check:", "pass" if ok else "FAIL")
    _write(args.json, witness_json(built))
    if args.dot:
        out = Path(args.dot)
        out.mkdir(parents=True, exist_ok=True)
        (out / "digraph.dot").write_text(digraph_dot(built), encoding="utf-8")
        (out / "lifted.dot").write_text(lifted_dot(built), encoding="utf-8")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_tau(args) -> int:
    inst = load_instance(args.instance)
    g, w, k = inst.graph, inst.weights, inst.k
    lmax = args.lmax if args.lmax is not None else k
    levels = tau_profile(g, w, k, lmax=lmax)
    tau = levels[-1].ell if levels[-1].all_robust else None
    r = rank(transversal_oracle(g))
    record = {
        "instance_id": inst.instance_id,
        "k": k,
        "rank": r,
        "tau": tau,
        "bound_k": k,
        "bound_hs22": hs22_bound(k, r),
        "levels": [{"ell": lv.ell, "optimal_bases": lv.optimal_bases, "robust": lv.robust}
                   for lv in levels],
    }
    print(f"tau = {tau if tau is not None else f'> {lmax}'}")
    print(f"bound k = {k}")
    print(f"bound k + rank - 1 = {record['bound_hs22']}")
    print("ell  optimal_bases  robust")
    for lv in levels:
        print(f"{lv.ell:>3}  {lv.optimal_bases:>13}  {lv.robust:>6}")
    _write(args.json, json.dumps(record, sort_keys=True) + "\n")
    if args.csv:
        header = "instance_id,k,rank,tau,bound_k,bound_hs22\n"
        row = f"{inst.instance_id},{k},{r},{'' if tau is None else tau},{k},{record['bound_hs22']}\n"
        _write(args.csv, header + row)
    violated = (tau is None and lmax >= k) or (tau is not None and tau > k)
    return EXIT_FAIL if violated else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="robustmatroid",
                                     description="Robust subsets of transversal matroids.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a seeded random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--nu", type=int, default=5, help="left vertex count")
    p.add_argument("--nv", type=int, default=3, help="right vertex count")
    p.add_argument("--p", type=float, default=0.5, help="edge probability")
    p.add_argument("--wmax", type=int, default=3)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="run the verification sweep")
    p.add_argument("instances", nargs="*", help="instance files")
    p.add_argument("--seeds", help="seeded random instances START:STOP")
    p.add_argument("--complete", action="store_true",
                   help="include every complete bipartite instance with |U| <= 4, |V| <= 3")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv")
    p.add_argument("--json", help="JSON Lines output, one object per instance")
    p.add_argument("--timing", action="store_true",
                   help="fill elapsed_ms (makes reports non-reproducible)")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="construct a robust witness for one base")
    p.add_argument("instance")
    p.add_argument("--base", required=True, help="comma-separated left indices of B")
    p.add_argument("--subset", help="optimal base X of the k-fold union (default: greedy)")
    p.add_argument("--dot", help="directory for digraph.dot and lifted.dot")
    p.add_argument("--json")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("tau", help="compute tau exactly")
    p.add_argument("instance")
    p.add_argument("--lmax", type=int)
    p.add_argument("--csv")
    p.add_argument("--json")
    p.set_defaults(func=cmd_tau)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InstanceFormatError, GuardError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
