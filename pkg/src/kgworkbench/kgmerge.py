"""The growing knowledge graph: per-paragraph documents merged by union.

Merging is triple-set union over fully expanded triples, so it is
idempotent and order-insensitive; provenance records which items assert
each triple, and the entity index tracks which items mention each entity —
shared entities are what connect paragraphs in the merged graph. Entity
identity is expanded-IRI equality only; concept-level grouping is the
analytics layer's job.

Blank nodes are document-scoped, so they are relabeled per item before
union to avoid accidental cross-document identification.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .rdf.model import BLANK_NS, EntityRef, Literal, RdfDocument, Triple


def _sanitize(item_id: str) -> str:
    return re.sub(r"[^A-Za-z0-9]", "_", item_id)


def _rescope_blanks(triple: Triple, item_id: str) -> Triple:
    def scoped(term):
        if isinstance(term, EntityRef) and term.is_blank:
            return EntityRef(BLANK_NS, f"{_sanitize(item_id)}_{term.local}")
        return term

    return Triple(scoped(triple.subject), triple.predicate, scoped(triple.object))


@dataclass(frozen=True, slots=True)
class MergedGraph:
    triples: frozenset[Triple] = frozenset()
    provenance: dict[Triple, frozenset[str]] = field(default_factory=dict)
    entity_index: dict[EntityRef, frozenset[str]] = field(default_factory=dict)

    @classmethod
    def empty(cls) -> "MergedGraph":
        return cls()

    @property
    def item_ids(self) -> frozenset[str]:
        out: set[str] = set()
        for items in self.provenance.values():
            out |= items
        return frozenset(out)


def merge(graph: MergedGraph, doc: RdfDocument, item_id: str) -> MergedGraph:
    """Union the document's expanded triples into the graph.

    Re-asserted triples extend their provenance with the new item; the
    operation is total and re-merging the same document is a no-op on the
    triple set.
    """
    triples = set(graph.triples)
    provenance = dict(graph.provenance)
    entity_index = dict(graph.entity_index)
    for raw in doc.triples:
        triple = _rescope_blanks(raw, item_id)
        triples.add(triple)
        provenance[triple] = provenance.get(triple, frozenset()) | {item_id}
        for term in (triple.subject, triple.object):
            if isinstance(term, EntityRef):
                entity_index[term] = entity_index.get(term, frozenset()) | {item_id}
    return MergedGraph(
        triples=frozenset(triples), provenance=provenance, entity_index=entity_index
    )


def shared_entities(
    graph: MergedGraph, min_items: int = 2
) -> list[tuple[EntityRef, frozenset[str]]]:
    """Entities appearing in at least min_items items, most shared first."""
    rows = [
        (entity, items)
        for entity, items in graph.entity_index.items()
        if len(items) >= min_items
    ]
    rows.sort(key=lambda row: (-len(row[1]), row[0].expanded))
    return rows


def _sorted_triples(graph: MergedGraph) -> list[Triple]:
    return sorted(graph.triples, key=lambda t: t.n3())


def to_ntriples(graph: MergedGraph) -> str:
    return "\n".join(t.n3() for t in _sorted_triples(graph)) + (
        "\n" if graph.triples else ""
    )


def to_turtle(graph: MergedGraph) -> str:
    """Turtle serialization grouped by subject with full IRIs."""
    by_subject: dict[str, list[Triple]] = {}
    for triple in _sorted_triples(graph):
        by_subject.setdefault(triple.subject.n3(), []).append(triple)
    blocks = []
    for subject, triples in by_subject.items():
        body = " ;\n    ".join(
            f"{t.predicate.n3()} {t.object.n3()}" for t in triples
        )
        blocks.append(f"{subject} {body} .")
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def provenance_json(graph: MergedGraph) -> dict:
    """Sidecar map from each triple's line to the items asserting it."""
    return {
        t.n3(): sorted(graph.provenance[t]) for t in _sorted_triples(graph)
    }


def graph_to_json(graph: MergedGraph) -> dict:
    return {
        "ntriples": to_ntriples(graph),
        "provenance": provenance_json(graph),
        "entities": {
            e.n3(): sorted(items)
            for e, items in sorted(
                graph.entity_index.items(), key=lambda kv: kv[0].expanded
            )
        },
    }


def graph_from_json(payload: dict) -> MergedGraph:
    from .rdf.parser import parse_ttl

    text = payload.get("ntriples", "")
    graph = MergedGraph.empty()
    if not text.strip():
        return graph
    doc = parse_ttl(text)
    by_line = {t.n3(): t for t in doc.triples}
    provenance = {
        by_line[line]: frozenset(items)
        for line, items in payload["provenance"].items()
    }
    entity_index: dict[EntityRef, frozenset[str]] = {}
    for triple, items in provenance.items():
        for term in (triple.subject, triple.object):
            if isinstance(term, EntityRef):
                entity_index[term] = entity_index.get(term, frozenset()) | items
    return MergedGraph(
        triples=frozenset(by_line.values()),
        provenance=provenance,
        entity_index=entity_index,
    )


def save_graph(path, graph: MergedGraph) -> None:
    path.write_text(
        json.dumps(graph_to_json(graph), indent=2, sort_keys=True, ensure_ascii=False),
        encoding="utf-8",
    )


def load_graph(path) -> MergedGraph:
    return graph_from_json(json.loads(path.read_text(encoding="utf-8")))
