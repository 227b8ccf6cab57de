"""Canonical form for exact-equality grouping of parsed documents.

Two runs count as "the same answer" when their expanded triple multisets
are equal, independent of triple order, prefix spelling, whitespace, and
comments. The canonical form is the sorted list of fully expanded triple
lines (duplicates preserved) plus a digest of that serialization. Blank
nodes get deterministic labels by first occurrence so label churn between
runs cannot defeat equality.

A strict-text mode is also provided for byte-level comparison of the raw
Turtle, for experiments that want the harsher notion of equality.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .model import EntityRef, Literal, RdfDocument, Triple


@dataclass(frozen=True, slots=True)
class CanonicalForm:
    lines: tuple[str, ...]
    digest: str


def _blank_relabeling(doc: RdfDocument) -> dict[str, str]:
    mapping: dict[str, str] = {}
    for triple in doc.triples:
        for term in (triple.subject, triple.object):
            if isinstance(term, EntityRef) and term.is_blank:
                mapping.setdefault(term.local, f"b{len(mapping) + 1}")
    return mapping


def _term_str(term, blanks: dict[str, str]) -> str:
    if isinstance(term, EntityRef) and term.is_blank:
        return "_:" + blanks[term.local]
    return term.n3()


def canonical_lines(doc: RdfDocument) -> tuple[str, ...]:
    blanks = _blank_relabeling(doc)
    lines = [
        f"{_term_str(t.subject, blanks)} {_term_str(t.predicate, blanks)} "
        f"{_term_str(t.object, blanks)} ."
        for t in doc.triples
    ]
    return tuple(sorted(lines))


def canonicalize(doc: RdfDocument) -> CanonicalForm:
    lines = canonical_lines(doc)
    payload = "\n".join(lines) + ("\n" if lines else "")
    digest = hashlib.sha256(payload.encode("utf-8")).hexdigest()
    return CanonicalForm(lines=lines, digest=digest)


def serialize(form: CanonicalForm) -> str:
    """Render the canonical form as sorted N-Triples-style Turtle.

    The output re-parses to the same canonical triple set, so
    canonicalize(parse_ttl(serialize(f))) reproduces f's digest.
    """
    return "\n".join(form.lines) + ("\n" if form.lines else "")


def text_digest(raw: str) -> str:
    """Strict-text digest: byte equality of the raw Turtle."""
    return hashlib.sha256(raw.encode("utf-8")).hexdigest()
