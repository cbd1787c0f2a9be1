"""Exact tau on small instances and the end-to-end theorem check."""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .errors import GuardError, LemmaViolation, WitnessStructureError, guard
from .graph import BipartiteGraph, check_weights, members
from .matroid import IndependenceOracle, enumerate_bases, optimal_bases, rank, union_oracle_bruteforce
from .robust import MAX_PRODUCT, build_witness, robust_bruteforce, verify_exchange, witness_failures
from .transversal import build_lifted, transversal_oracle

MAX_TAU_GROUND = 10

LIFTED = "lifted"
BRUTEFORCE = "bruteforce"


def hs22_bound(k: int, rank: int) -> int:
    """The earlier upper bound ``k + rank - 1``, floored at 1."""
    return max(k + rank - 1, 1)


@dataclass
class LevelDetail:
    ell: int
    optimal_bases: int
    robust: int

    @property
    def all_robust(self) -> bool:
        return self.robust == self.optimal_bases


def union_oracle(graph: BipartiteGraph, weights: Sequence[int], ell: int,
                 method: str = LIFTED) -> IndependenceOracle:
    if method == LIFTED:
        return build_lifted(graph, weights, ell).oracle
    if method == BRUTEFORCE:
        return union_oracle_bruteforce(transversal_oracle(graph), ell)
    raise ValueError(f"unknown union method {method!r}")


def tau_profile(graph: BipartiteGraph, weights: Sequence[int], k: int,
                lmax: int | None = None, method: str = LIFTED) -> list[LevelDetail]:
    """Robustness counts for ell = 1, 2, ... up to the first fully robust level or ``lmax``.

    Each level is checked on its own; no monotonicity in ell is assumed.
    """
    guard("left vertex count", graph.left_count, MAX_TAU_GROUND)
    weights = check_weights(graph, weights)
    if k < 1:
        raise ValueError("k must be a positive integer")
    lmax = k if lmax is None else lmax
    base = transversal_oracle(graph)
    details = []
    for ell in range(1, lmax + 1):
        candidates = optimal_bases(union_oracle(graph, weights, ell, method), weights)
        robust = sum(robust_bruteforce(base, weights, k, x) for x in candidates)
        details.append(LevelDetail(ell, len(candidates), robust))
        if robust == len(candidates):
            break
    return details


def tau_exact(graph: BipartiteGraph, weights: Sequence[int], k: int,
              lmax: int | None = None, method: str = LIFTED) -> int | None:
    """The least ell whose optimal union bases are all k-robust; ``None`` past ``lmax``."""
    details = tau_profile(graph, weights, k, lmax, method)
    last = details[-1]
    return last.ell if last.all_robust else None


@dataclass
class TauReport:
    instance_id: str
    left_count: int
    right_count: int
    k: int
    rank: int
    tau_exact: int | None
    theorem_bound: int
    hs22_bound: int
    levels: list[LevelDetail] = field(default_factory=list)
    optimal_bases_checked: int = 0
    bases_checked: int = 0
    witnesses_built: int = 0
    witnesses_passed: int = 0
    exchanges_checked: int = 0
    violations: list[str] = field(default_factory=list)
    elapsed_ms: float | None = None

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_record(self) -> dict:
        out = asdict(self)
        out["levels"] = [asdict(lv) for lv in self.levels]
        return out


def verify_theorem(graph: BipartiteGraph, weights: Sequence[int], k: int,
                   instance_id: str = "", exchange_limit: int = MAX_PRODUCT) -> TauReport:
    """Replay the constructive witness for every optimal base X of the k-fold union and every base B.

    Every failure is recorded as a violation string; a correct implementation
    reports none. ``exchange_limit`` caps how many product tuples per witness
    are pushed through :func:`verify_exchange`.
    """
    guard("left vertex count", graph.left_count, MAX_TAU_GROUND)
    weights = check_weights(graph, weights)
    base = transversal_oracle(graph)
    r = rank(base)
    lifted = build_lifted(graph, weights, k)
    report = TauReport(
        instance_id=instance_id,
        left_count=graph.left_count,
        right_count=graph.right_count,
        k=k,
        rank=r,
        tau_exact=None,
        theorem_bound=k,
        hs22_bound=hs22_bound(k, r),
    )
    union_optimal = optimal_bases(lifted.oracle, weights)
    bases = enumerate_bases(base)
    report.optimal_bases_checked = len(union_optimal)
    report.bases_checked = len(bases)

    for x in union_optimal:
        for b in bases:
            tag = f"X={list(members(x))} B={list(members(b))}"
            try:
                built = build_witness(graph, weights, k, x, b)
                report.witnesses_built += 1
                failed = witness_failures(base, weights, k, x, b, built.witness)
            except GuardError:
                raise
            except (LemmaViolation, WitnessStructureError, ValueError) as exc:
                report.violations.append(f"{tag}: {type(exc).__name__}: {exc}")
                continue
            if failed:
                report.violations.append(f"{tag}: witness fails {','.join(failed)}")
                continue
            report.witnesses_passed += 1
            groups = built.witness.groups
            starts = built.paths.starts
            if math.prod(len(g) for g in groups) <= exchange_limit:
                for choice in itertools.product(*groups):
                    try:
                        verify_exchange(graph, built.base_matching, built.paths,
                                        dict(zip(starts, choice)))
                    except LemmaViolation as exc:
                        report.violations.append(f"{tag}: {exc}")
                        break
                    report.exchanges_checked += 1
        if not robust_bruteforce(base, weights, k, x):
            report.violations.append(f"X={list(members(x))}: brute force finds it not {k}-robust")

    report.levels = tau_profile(graph, weights, k, lmax=k)
    last = report.levels[-1]
    report.tau_exact = last.ell if last.all_robust else None
    if report.tau_exact is None:
        report.violations.append(f"falsification candidate: optimal bases of the {k}-fold union "
                                 f"are not all {k}-robust")
    elif report.tau_exact > report.hs22_bound:
        report.violations.append(f"tau {report.tau_exact} exceeds the earlier bound {report.hs22_bound}")
    return report
