"""Suffix-word concept grouping and the concept-paragraph bipartite graph.

Subject entities are grouped into higher-level concepts by the stem of
their suffix word: "CSRInstruction" and "StoreInstruction" both land in the
"Instruction" group. Entity phrases arrive in Camel or Snake case, so the
suffix splits mechanically; stemming then merges morphological variants
("encodings"/"encodes").
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .porter import stem

# Token boundaries: explicit separators, lower->upper camel case, acronym
# runs followed by a capitalized word (CSRInstruction -> CSR|Instruction),
# and digit runs as their own tokens.
_TOKEN_RE = re.compile(
    r"[A-Z]+(?![a-z])"   # acronym run (stops before a capitalized word)
    r"|[A-Z][a-z]*"      # capitalized word
    r"|[a-z]+"           # lowercase word
    r"|\d+"              # digit run
)


def tokenize_name(name: str) -> list[str]:
    tokens: list[str] = []
    for piece in re.split(r"[_\-\s]+", name):
        tokens.extend(_TOKEN_RE.findall(piece))
    return tokens


def suffix_of(entity_name: str) -> str:
    """The suffix word of an entity phrase.

    Returns the last multi-letter alphabetic token; lone letters (as in
    "RV32I" -> ["RV", "32", "I"]) are too weak to name a concept, so they
    are skipped unless nothing longer exists. Single-token names return
    themselves.
    """
    tokens = tokenize_name(entity_name)
    if not tokens:
        return entity_name
    if len(tokens) == 1:
        return tokens[0]
    alpha = [t for t in tokens if t.isalpha()]
    if not alpha:
        return tokens[-1]
    multi = [t for t in alpha if len(t) > 1]
    return (multi or alpha)[-1]


@dataclass(frozen=True, slots=True)
class ConceptGroup:
    stem: str
    label: str
    members: frozenset[tuple[str, str]]  # (entity name, item id)

    @property
    def paragraph_ids(self) -> frozenset[str]:
        return frozenset(item_id for _, item_id in self.members)

    @property
    def occurrence_count(self) -> int:
        return len(self.paragraph_ids)


def group_concepts(
    entities_by_item: Mapping[str, Iterable[str]],
) -> list[ConceptGroup]:
    """Group subject entities by the stem of their suffix word.

    Input maps item (paragraph) id to the subject entity names its RDF
    uses. Group label is the most frequent surface suffix among members,
    ties broken lexicographically.
    """
    members: dict[str, set[tuple[str, str]]] = {}
    for item_id, names in entities_by_item.items():
        for name in names:
            key = stem(suffix_of(name))
            members.setdefault(key, set()).add((name, item_id))
    groups = []
    for key, pairs in members.items():
        counts = Counter(suffix_of(name) for name, _ in pairs)
        label = min(counts, key=lambda s: (-counts[s], s))
        groups.append(ConceptGroup(stem=key, label=label, members=frozenset(pairs)))
    groups.sort(key=lambda g: (-g.occurrence_count, g.label))
    return groups


@dataclass(frozen=True, slots=True)
class BipartiteGraph:
    """Concept-paragraph graph; an edge means the concept appears there."""

    concepts: tuple[ConceptGroup, ...]
    paragraph_ids: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]  # (concept label, paragraph id)
    min_paragraphs: int

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def bipartite(groups: Iterable[ConceptGroup], min_paragraphs: int = 2) -> BipartiteGraph:
    kept = tuple(
        g for g in groups if g.occurrence_count >= min_paragraphs
    )
    edges = tuple(
        (g.label, pid)
        for g in kept
        for pid in sorted(g.paragraph_ids)
    )
    paragraphs = tuple(sorted({pid for _, pid in edges}))
    return BipartiteGraph(
        concepts=kept,
        paragraph_ids=paragraphs,
        edges=edges,
        min_paragraphs=min_paragraphs,
    )


def top_concepts(
    groups: Iterable[ConceptGroup], k: int
) -> list[tuple[str, int, frozenset[tuple[str, str]]]]:
    """Top-k concepts by paragraph occurrence count, then label."""
    ranked = sorted(groups, key=lambda g: (-g.occurrence_count, g.label))
    return [(g.label, g.occurrence_count, g.members) for g in ranked[: max(k, 0)]]
