"""DOT export: clusters as subgraph boxes, cut edges dashed."""

from __future__ import annotations


def to_dot(inst, solution=None) -> str:
    """Render an instance, and optionally a solution tree, as DOT text.

    Required-internal terminals draw as double circles, Steiner vertices as
    points. With a solution only its tree edges appear; cut edges are dashed.
    """
    lines = ["graph csistp {", "  node [shape=circle];"]
    for i, cluster in enumerate(inst.clusters):
        req = set(inst.required_internal[i])
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="cluster {i}";')
        for v in cluster:
            shape = "doublecircle" if v in req else "circle"
            lines.append(f"    {v} [shape={shape}];")
        lines.append("  }")
    used = set(solution.tree.vertices) if solution is not None else None
    for v in inst.steiner_vertices:
        if used is None or v in used:
            lines.append(f"  {v} [shape=point];")
    if solution is not None:
        cuts = {tuple(e) for e in solution.cut_edges}
        for u, v in solution.tree.edges:
            style = ", style=dashed" if (u, v) in cuts else ""
            lines.append(f'  {u} -- {v} [label="{inst.graph.cost[u, v]:.6g}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
