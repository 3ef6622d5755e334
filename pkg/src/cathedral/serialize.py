"""File formats and renderers used by the CLI: decomposition-tree JSON,
Hasse-diagram DOT, analysis output, and verifier reports.

Core modules stay format-free; everything here is deterministic byte-for-byte
for a fixed input (sorted emission everywhere, timing excluded unless asked
for).
"""

from __future__ import annotations

import json
from typing import Any

from .canonical import (
    CanonicalPartition,
    ComponentPoset,
    FactorComponents,
    canonical_partition,
    component_poset,
    factor_components,
    minimum_component,
)
from .construction import CathedralTree, is_saturated
from .errors import GraphFormatError
from .gallai_edmonds import gallai_edmonds
from .graph import Graph, delete_vertices
from .verify import CheckResult, SuiteReport, TrialConfig


def tree_to_dict(tree: CathedralTree) -> dict[str, Any]:
    return {
        "foundation": {
            "vertices": sorted(tree.foundation_vertices),
            "edges": [list(e) for e in sorted(tree.foundation_edges)],
        },
        "classes": [
            {
                "class": sorted(cls),
                "tower": tree_to_dict(sub) if sub is not None else None,
            }
            for cls, sub in tree.classes
        ],
    }


def tree_from_dict(data: Any) -> CathedralTree:
    if not isinstance(data, dict) or "foundation" not in data or "classes" not in data:
        raise GraphFormatError("tree object needs 'foundation' and 'classes'")
    foundation = data["foundation"]
    if (
        not isinstance(foundation, dict)
        or "vertices" not in foundation
        or "edges" not in foundation
    ):
        raise GraphFormatError("'foundation' needs 'vertices' and 'edges'")
    try:
        vertices = frozenset(int(v) for v in foundation["vertices"])
        edges = frozenset(
            (min(int(u), int(v)), max(int(u), int(v))) for u, v in foundation["edges"]
        )
    except (TypeError, ValueError) as exc:
        raise GraphFormatError(f"malformed foundation: {exc}") from None
    classes: list[tuple[frozenset[int], CathedralTree | None]] = []
    if not isinstance(data["classes"], list):
        raise GraphFormatError("'classes' must be a list")
    for entry in data["classes"]:
        if not isinstance(entry, dict) or "class" not in entry or "tower" not in entry:
            raise GraphFormatError("each class entry needs 'class' and 'tower'")
        try:
            cls = frozenset(int(v) for v in entry["class"])
        except (TypeError, ValueError) as exc:
            raise GraphFormatError(f"malformed class: {exc}") from None
        tower = entry["tower"]
        classes.append((cls, tree_from_dict(tower) if tower is not None else None))
    try:
        Graph(vertices, edges)  # validates endpoint membership and loops
    except ValueError as exc:
        raise GraphFormatError(f"malformed foundation graph: {exc}") from None
    return CathedralTree(vertices, edges, tuple(classes))


def tree_to_json(tree: CathedralTree) -> str:
    return json.dumps(tree_to_dict(tree), indent=2) + "\n"


def tree_from_json(text: str) -> CathedralTree:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from None
    return tree_from_dict(data)


def hasse_dot(poset: ComponentPoset) -> str:
    """DOT rendering of the cover relation; nodes are labeled by sorted
    component vertex lists and edges point from lower to higher element."""
    lines = ["digraph component_order {"]
    for i, comp in enumerate(poset.components.components):
        label = "{" + ", ".join(str(v) for v in sorted(comp)) + "}"
        lines.append(f'  c{i} [label="{label}"];')
    for low, high in poset.hasse:
        lines.append(f"  c{low} -> c{high};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def analysis_dict(
    graph: Graph,
    *,
    include_deleted_partitions: bool = False,
    max_components: int = 16,
) -> dict[str, Any]:
    comps: FactorComponents = factor_components(graph)
    partition: CanonicalPartition = canonical_partition(graph, comps)
    poset = component_poset(graph, comps, max_components=max_components)
    low = minimum_component(poset)
    out: dict[str, Any] = {
        "vertices": list(graph.vertices),
        "edges": [list(e) for e in graph.sorted_edges()],
        "factor_components": [sorted(c) for c in comps.components],
        "allowed_edges": [list(e) for e in sorted(comps.allowed)],
        "canonical_partition": [sorted(c) for c in partition.classes],
        "component_order": {
            "leq": [[bool(x) for x in row] for row in poset.leq],
            "hasse": [list(cover) for cover in poset.hasse],
            "minimum": low,
        },
        "saturated": is_saturated(graph),
    }
    if include_deleted_partitions:
        out["deleted_partitions"] = [
            {
                "vertex": x,
                "d": sorted(ge.d),
                "a": sorted(ge.a),
                "c": sorted(ge.c),
            }
            for x in graph.vertices
            for ge in (gallai_edmonds(delete_vertices(graph, (x,))),)
        ]
    return out


def analysis_text(analysis: dict[str, Any]) -> str:
    lines = [
        f"vertices: {len(analysis['vertices'])}",
        f"edges: {len(analysis['edges'])}",
        "factor components:",
    ]
    for i, comp in enumerate(analysis["factor_components"]):
        lines.append(f"  {i}: {{{', '.join(map(str, comp))}}}")
    lines.append("canonical partition:")
    lines.append(
        "  " + " ".join("{" + ", ".join(map(str, cls)) + "}" for cls in analysis["canonical_partition"])
    )
    order = analysis["component_order"]
    lines.append("component order (covers, lower -> higher):")
    if order["hasse"]:
        for low, high in order["hasse"]:
            lines.append(f"  {low} -> {high}")
    else:
        lines.append("  (none)")
    lines.append(
        "minimum component: "
        + ("none" if order["minimum"] is None else str(order["minimum"]))
    )
    lines.append(f"saturated: {'yes' if analysis['saturated'] else 'no'}")
    for entry in analysis.get("deleted_partitions", ()):
        lines.append(
            f"delete {entry['vertex']}: d={entry['d']} a={entry['a']} c={entry['c']}"
        )
    return "\n".join(lines) + "\n"


def _config_dict(config: TrialConfig) -> dict[str, Any]:
    return {
        "seed": config.seed,
        "trials": config.trials,
        "max_vertices": config.max_vertices,
        "edge_probability": config.edge_probability,
        "enumeration_cap": config.enumeration_cap,
    }


def _result_dict(result: CheckResult, include_timing: bool) -> dict[str, Any]:
    out: dict[str, Any] = {
        "check": result.check,
        "status": result.status,
        "reason": result.reason,
        "counterexample": result.counterexample,
    }
    if include_timing:
        out["millis"] = round(result.millis, 3)
    return out


def report_dict(
    config: TrialConfig,
    reports: list[SuiteReport],
    *,
    include_timing: bool = False,
) -> dict[str, Any]:
    summary: dict[str, dict[str, int]] = {}
    order: list[str] = []
    for report in reports:
        for result in report.results:
            if result.check not in summary:
                summary[result.check] = {"pass": 0, "fail": 0, "skip": 0}
                order.append(result.check)
            summary[result.check][result.status] += 1
    return {
        "config": _config_dict(config),
        "summary": [
            {"check": name, **summary[name]} for name in order
        ],
        "trials": [
            {
                "trial": i,
                "graph": report.graph_text,
                "results": [_result_dict(r, include_timing) for r in report.results],
            }
            for i, report in enumerate(reports)
        ],
    }


def report_json(
    config: TrialConfig, reports: list[SuiteReport], *, include_timing: bool = False
) -> str:
    return json.dumps(report_dict(config, reports, include_timing=include_timing), indent=2) + "\n"


def report_text(
    config: TrialConfig, reports: list[SuiteReport], *, include_timing: bool = False
) -> str:
    data = report_dict(config, reports, include_timing=include_timing)
    c = data["config"]
    lines = [
        f"seed={c['seed']} trials={c['trials']} max_vertices={c['max_vertices']} "
        f"p={c['edge_probability']} cap={c['enumeration_cap']}",
        "",
    ]
    width = max((len(s["check"]) for s in data["summary"]), default=10)
    for s in data["summary"]:
        lines.append(
            f"{s['check']:<{width}}  pass={s['pass']:<4} fail={s['fail']:<4} skip={s['skip']}"
        )
    failures = [
        (t["trial"], r)
        for t in data["trials"]
        for r in t["results"]
        if r["status"] == "fail"
    ]
    lines.append("")
    if failures:
        lines.append(f"{len(failures)} failing check(s):")
        for trial, r in failures:
            lines.append(f"trial {trial}: {r['check']}: {r['reason']}")
            lines.append(r["counterexample"].rstrip())
    else:
        lines.append("no failing checks")
    return "\n".join(lines) + "\n"
