"""Text, JSON and DOT renderings of witnesses and their construction."""

from __future__ import annotations

import json

from .graph import members
from .robust import WitnessConstruction


def witness_record(built: WitnessConstruction) -> dict:
    record = {
        "subset": list(members(built.subset)),
        "base": list(members(built.base)),
    }
    record.update(built.witness.as_record())
    record["walks"] = [
        {"start": u, "walk": list(z), "through": list(h)} for u, z, h in built.paths.walks
    ]
    return record


def witness_json(built: WitnessConstruction) -> str:
    return json.dumps(witness_record(built), sort_keys=True, indent=2) + "\n"


def witness_text(built: WitnessConstruction) -> str:
    w = built.witness
    lines = [
        f"X = {list(members(built.subset))}",
        f"B = {list(members(built.base))}",
        f"groups ({len(w.groups)}):",
    ]
    lines += [f"  X_{i} = {list(g)}" for i, g in enumerate(w.groups, start=1)]
    lines.append("phi:")
    lines += [f"  u{u} -> {i}" for u, i in w.phi]
    if not w.groups:
        lines.append("  (empty: B \\ X is empty)")
    for u, z, _ in built.paths.walks:
        lines.append(f"walk from u{u}: " + " -> ".join(f"v{v}" for v in z))
    return "\n".join(lines) + "\n"


def digraph_dot(built: WitnessConstruction) -> str:
    """The exchange digraph; sources are drawn as boxes and sinks double-circled."""
    d = built.digraph
    sources, sinks = set(d.sources), set(d.sinks)
    lines = ["digraph D {"]
    for v in sorted(d.vertices):
        role = [r for r, flag in (("source", v in sources), ("sink", v in sinks)) if flag]
        shape = "box" if v in sources else ("doublecircle" if v in sinks else "circle")
        label = f"v{v}" + (f"\\n{'/'.join(role)}" if role else "")
        lines.append(f'  v{v} [label="{label}", shape={shape}];')
    for (a, b), u in d.carriers:
        lines.append(f'  v{a} -> v{b} [label="u{u}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def lifted_dot(built: WitnessConstruction) -> str:
    """The lifted graph with matching edges solid and all other edges dashed."""
    lifted = built.lifted
    matched = built.lifted_matching
    lines = ["graph Gk {", "  rankdir=LR;"]
    for u in range(lifted.base.left_count):
        lines.append(f'  u{u} [label="u{u}\\nw={lifted.weights[u]}"];')
    for r in range(lifted.graph.right_count):
        v, t = lifted.label(r)
        lines.append(f'  v{v}_{t} [label="v{v}({t})", shape=box];')
    for u, r in lifted.graph.edges:
        v, t = lifted.label(r)
        style = "solid" if (u, r) in matched else "dashed"
        lines.append(f"  u{u} -- v{v}_{t} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
