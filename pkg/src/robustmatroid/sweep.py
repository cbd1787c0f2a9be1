"""Per-instance verification records and the batch sweep."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Iterable, Sequence

from .instances import Instance
from .matroid import IndependenceOracle, check_axioms, greedy_equivalence_check, union_oracle_bruteforce
from .tau import verify_theorem
from .transversal import build_lifted, transversal_oracle

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

ORACLE_EQUIV_MAX_LEFT = 8
ORACLE_EQUIV_MAX_K = 3
GREEDY_EQUIV_MAX_LEFT = 6
AXIOMS_MAX_LEFT = 8
THEOREM_MAX_LEFT = 10

CSV_COLUMNS = (
    "instance_id", "nU", "nV", "k", "rank", "tau", "bound_k", "bound_hs22",
    "theorem_pass", "oracle_equiv_pass", "greedy_equiv_pass", "elapsed_ms",
)


def _flag(ok: bool) -> str:
    return PASS if ok else FAIL


@dataclass
class ResultRecord:
    instance_id: str
    n_left: int
    n_right: int
    k: int
    rank: int | None = None
    tau: int | None = None
    bound_k: int = 0
    bound_hs22: int | None = None
    theorem: str = SKIPPED
    oracle_equiv: str = SKIPPED
    greedy_equiv: str = SKIPPED
    axioms: str = SKIPPED
    violations: list[str] = field(default_factory=list)
    witnesses_checked: int = 0
    exchanges_checked: int = 0
    elapsed_ms: int | None = None

    @property
    def failed(self) -> bool:
        return FAIL in (self.theorem, self.oracle_equiv, self.greedy_equiv, self.axioms)

    def csv_row(self) -> list:
        return [
            self.instance_id, self.n_left, self.n_right, self.k,
            "" if self.rank is None else self.rank,
            "" if self.tau is None else self.tau,
            self.bound_k,
            "" if self.bound_hs22 is None else self.bound_hs22,
            self.theorem, self.oracle_equiv, self.greedy_equiv,
            "" if self.elapsed_ms is None else self.elapsed_ms,
        ]

    def as_record(self) -> dict:
        return {
            "instance_id": self.instance_id,
            "nU": self.n_left,
            "nV": self.n_right,
            "k": self.k,
            "rank": self.rank,
            "tau": self.tau,
            "bound_k": self.bound_k,
            "bound_hs22": self.bound_hs22,
            "theorem_pass": self.theorem,
            "oracle_equiv_pass": self.oracle_equiv,
            "greedy_equiv_pass": self.greedy_equiv,
            "axioms_pass": self.axioms,
            "witnesses_checked": self.witnesses_checked,
            "exchanges_checked": self.exchanges_checked,
            "violations": self.violations,
            "elapsed_ms": self.elapsed_ms,
        }


def oracle_disagreements(lifted_oracle: IndependenceOracle, brute: IndependenceOracle) -> list[int]:
    return [m for m in range(1 << brute.ground_size)
            if lifted_oracle.is_independent(m) != brute.is_independent(m)]


def _corrupt(oracle: IndependenceOracle) -> IndependenceOracle:
    # test hook: flip the answer on the full ground set
    full = oracle.full_mask
    return IndependenceOracle(oracle.ground_size,
                              lambda m: (not oracle.is_independent(m)) if m == full else oracle.is_independent(m),
                              name=f"corrupted {oracle.name}")


def verify_instance(inst: Instance, inject_fault: bool = False, timing: bool = False) -> ResultRecord:
    started = time.perf_counter()
    g, w, k = inst.graph, inst.weights, inst.k
    rec = ResultRecord(inst.instance_id, g.left_count, g.right_count, k, bound_k=k)
    base = transversal_oracle(g)
    union_k = build_lifted(g, w, k).oracle
    if inject_fault:
        union_k = _corrupt(union_k)

    if g.left_count <= THEOREM_MAX_LEFT:
        report = verify_theorem(g, w, k, inst.instance_id)
        rec.rank, rec.tau, rec.bound_hs22 = report.rank, report.tau_exact, report.hs22_bound
        rec.theorem = _flag(report.passed and report.tau_exact is not None and report.tau_exact <= k)
        rec.violations += report.violations
        rec.witnesses_checked = report.witnesses_passed
        rec.exchanges_checked = report.exchanges_checked

    if g.left_count <= ORACLE_EQUIV_MAX_LEFT and k <= ORACLE_EQUIV_MAX_K:
        bad = oracle_disagreements(union_k, union_oracle_bruteforce(base, k))
        rec.oracle_equiv = _flag(not bad)
        rec.violations += [f"union oracles disagree on subset mask {m}" for m in bad]

    if g.left_count <= GREEDY_EQUIV_MAX_LEFT:
        ok = greedy_equivalence_check(base, w, k)
        rec.greedy_equiv = _flag(ok)
        if not ok:
            rec.violations.append("greedy outputs differ from optimal bases of the union")

    if g.left_count <= AXIOMS_MAX_LEFT:
        ok = check_axioms(base) and check_axioms(union_k)
        rec.axioms = _flag(ok)
        if not ok:
            rec.violations.append("matroid axioms fail for M_G or its union")

    if timing:
        rec.elapsed_ms = round((time.perf_counter() - started) * 1000)
    return rec


def run_sweep(instances: Sequence[Instance], jobs: int = 1, inject_fault: bool = False,
              timing: bool = False) -> list[ResultRecord]:
    """Verify every instance; results come back in input order whatever ``jobs`` is."""
    worker = partial(verify_instance, inject_fault=inject_fault, timing=timing)
    if jobs <= 1 or len(instances) <= 1:
        return [worker(inst) for inst in instances]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, instances, chunksize=max(1, len(instances) // (4 * jobs))))


def records_csv(records: Iterable[ResultRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(rec.csv_row())
    return buf.getvalue()


def records_jsonl(records: Iterable[ResultRecord]) -> str:
    return "".join(json.dumps(rec.as_record(), sort_keys=True) + "\n" for rec in records)
