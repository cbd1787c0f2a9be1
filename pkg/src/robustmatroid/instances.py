"""Instance files, the seeded generator and the sweep families.

An instance file is JSON with one key per line so hand-written regression
cases diff cleanly::

    {
      "left_count": 3,
      "right_count": 1,
      "k": 2,
      "weights": [3, 2, 1],
      "edges": [[0, 0], [1, 0], [2, 0]]
    }
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .errors import guard
from .graph import BipartiteGraph, check_weights

GEN_MAX_LEFT = 10
GEN_MAX_RIGHT = 6
GEN_MAX_K = 4

_KEYS = ("left_count", "right_count", "k", "weights", "edges")


class InstanceFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<instance>"):
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")
        self.line = line


@dataclass(frozen=True)
class Instance:
    graph: BipartiteGraph
    weights: tuple[int, ...]
    k: int
    instance_id: str = ""

    def __post_init__(self):
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            raise ValueError("k must be a positive integer")
        object.__setattr__(self, "weights", check_weights(self.graph, self.weights))


def dumps_instance(inst: Instance) -> str:
    values = {
        "left_count": inst.graph.left_count,
        "right_count": inst.graph.right_count,
        "k": inst.k,
        "weights": list(inst.weights),
        "edges": [list(e) for e in inst.graph.edges],
    }
    body = ",\n".join(f'  "{key}": {json.dumps(values[key])}' for key in _KEYS)
    return "{\n" + body + "\n}\n"


def _line_of(text: str, key: str) -> int | None:
    for n, line in enumerate(text.splitlines(), start=1):
        if f'"{key}"' in line:
            return n
    return None


def loads_instance(text: str, source: str = "<instance>", instance_id: str | None = None) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(exc.msg, exc.lineno, source) from None
    if not isinstance(data, dict):
        raise InstanceFormatError("expected a JSON object", 1, source)
    missing = [key for key in _KEYS if key not in data]
    if missing:
        raise InstanceFormatError(f"missing keys {missing}", None, source)
    for key in ("left_count", "right_count", "k"):
        if isinstance(data[key], bool) or not isinstance(data[key], int):
            raise InstanceFormatError(f"{key} must be an integer", _line_of(text, key), source)
    edges = data["edges"]
    if not isinstance(edges, list) or not all(
            isinstance(e, list) and len(e) == 2 and all(isinstance(c, int) for c in e) for e in edges):
        raise InstanceFormatError("edges must be a list of [left, right] pairs",
                                  _line_of(text, "edges"), source)
    try:
        graph = BipartiteGraph(data["left_count"], data["right_count"], tuple(map(tuple, edges)))
    except ValueError as exc:
        raise InstanceFormatError(str(exc), _line_of(text, "edges"), source) from None
    if not isinstance(data["weights"], list):
        raise InstanceFormatError("weights must be a list", _line_of(text, "weights"), source)
    try:
        return Instance(graph, tuple(data["weights"]), data["k"],
                        instance_id if instance_id is not None else source)
    except (TypeError, ValueError) as exc:
        key = "k" if "k must" in str(exc) else "weights"
        raise InstanceFormatError(str(exc), _line_of(text, key), source) from None


def load_instance(path: str | Path) -> Instance:
    path = Path(path)
    return loads_instance(path.read_text(encoding="utf-8"), str(path), instance_id=path.stem)


def gen(seed: int, n_left: int, n_right: int, edge_prob: float, wmax: int, k: int) -> Instance:
    """A pseudo-random instance; the same arguments always give the same instance."""
    guard("left vertex count", n_left, GEN_MAX_LEFT)
    guard("right vertex count", n_right, GEN_MAX_RIGHT)
    guard("k", k, GEN_MAX_K)
    if not 0 <= edge_prob <= 1:
        raise ValueError("edge probability must lie in [0, 1]")
    if wmax < 0:
        raise ValueError("wmax must be non-negative")
    rng = random.Random(seed)
    edges = tuple((u, v) for u in range(n_left) for v in range(n_right) if rng.random() < edge_prob)
    weights = tuple(rng.randint(0, wmax) for _ in range(n_left))
    return Instance(BipartiteGraph(n_left, n_right, edges), weights, k, f"seed-{seed}")


def sweep_instance(seed: int, max_left: int = 6, max_right: int = 4, max_k: int = 3,
                   wmax: int = 3) -> Instance:
    """Sweep member ``seed``: shape parameters are drawn from the seed, then :func:`gen` runs."""
    rng = random.Random(f"sweep-{seed}")
    n_left = rng.randint(1, max_left)
    n_right = rng.randint(1, max_right)
    k = rng.randint(1, max_k)
    edge_prob = rng.choice((0.25, 0.4, 0.55, 0.7, 0.85, 1.0))
    return gen(seed, n_left, n_right, edge_prob, wmax, k)


def random_sweep(start: int, stop: int, **kwargs) -> list[Instance]:
    return [sweep_instance(s, **kwargs) for s in range(start, stop)]


def complete_family(max_left: int = 4, max_right: int = 3, ks=(1, 2, 3), wmax: int = 3) -> Iterator[Instance]:
    """Complete bipartite instances with every weight vector up to symmetry.

    All left vertices of a complete bipartite graph are interchangeable, so
    non-increasing weight vectors cover every weighting up to isomorphism.
    """
    for n_left in range(1, max_left + 1):
        for n_right in range(1, max_right + 1):
            graph = BipartiteGraph.complete(n_left, n_right)
            for combo in itertools.combinations_with_replacement(range(wmax, -1, -1), n_left):
                for k in ks:
                    wid = "".join(map(str, combo))
                    yield Instance(graph, combo, k, f"complete-{n_left}x{n_right}-w{wid}-k{k}")


def star_instance(k: int = 2) -> Instance:
    """Three left vertices on one right vertex with weights 3, 2, 1."""
    return Instance(BipartiteGraph.complete(3, 1), (3, 2, 1), k, f"star-k{k}")
