"""Export formats for the bipartite graph and metric tables."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable
from xml.etree import ElementTree as ET

from .concepts import BipartiteGraph, ConceptGroup


def _dot_quote(value: str) -> str:
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def bipartite_to_dot(graph: BipartiteGraph) -> str:
    lines = ["graph concepts {"]
    for g in graph.concepts:
        lines.append(
            f"  {_dot_quote('concept:' + g.label)} [shape=box, "
            f"label={_dot_quote(g.label)}];"
        )
    for pid in graph.paragraph_ids:
        lines.append(
            f"  {_dot_quote('paragraph:' + pid)} [shape=circle, "
            f"label={_dot_quote(pid)}];"
        )
    for label, pid in graph.edges:
        lines.append(
            f"  {_dot_quote('concept:' + label)} -- {_dot_quote('paragraph:' + pid)};"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def bipartite_to_graphml(graph: BipartiteGraph) -> str:
    root = ET.Element("graphml")
    root.set("xmlns", "http://graphml.graphdrawing.org/xmlns")
    key = ET.SubElement(root, "key")
    key.set("id", "kind")
    key.set("for", "node")
    key.set("attr.name", "kind")
    key.set("attr.type", "string")
    g = ET.SubElement(root, "graph", id="concepts", edgedefault="undirected")
    for group in graph.concepts:
        node = ET.SubElement(g, "node", id="concept:" + group.label)
        data = ET.SubElement(node, "data", key="kind")
        data.text = "concept"
    for pid in graph.paragraph_ids:
        node = ET.SubElement(g, "node", id="paragraph:" + pid)
        data = ET.SubElement(node, "data", key="kind")
        data.text = "paragraph"
    for i, (label, pid) in enumerate(graph.edges):
        ET.SubElement(
            g,
            "edge",
            id=f"e{i}",
            source="concept:" + label,
            target="paragraph:" + pid,
        )
    return ET.tostring(root, encoding="unicode", xml_declaration=True)


def bipartite_to_json(graph: BipartiteGraph) -> dict:
    """JSON adjacency form for UI consumption."""
    return {
        "min_paragraphs": graph.min_paragraphs,
        "concepts": [
            {
                "label": g.label,
                "stem": g.stem,
                "paragraphs": sorted(g.paragraph_ids),
                "members": sorted(name for name, _ in g.members),
                "occurrence_count": g.occurrence_count,
            }
            for g in graph.concepts
        ],
        "paragraphs": list(graph.paragraph_ids),
        "edges": [{"concept": label, "paragraph": pid} for label, pid in graph.edges],
        "concept_count": len(graph.concepts),
        "edge_count": graph.edge_count,
    }


def concept_table_rows(groups: Iterable[ConceptGroup]) -> list[dict]:
    return [
        {
            "label": g.label,
            "stem": g.stem,
            "occurrence_count": g.occurrence_count,
            "members": ", ".join(sorted(name for name, _ in g.members)),
        }
        for g in groups
    ]


def rows_to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()))
    writer.writeheader()
    writer.writerows(rows)
    return out.getvalue()


def rows_to_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=2, sort_keys=True)
