"""Value types for parsed Turtle documents.

The oracle emits RDF in Turtle; a parsed document is a sequence of Facts,
one per subject block, each holding the triples that share that subject.
All types are immutable and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"

# Marker namespace for blank nodes; `local` then holds the node label.
BLANK_NS = "_:"

_LITERAL_ESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
}


def escape_literal_text(text: str) -> str:
    return "".join(_LITERAL_ESCAPES.get(ch, ch) for ch in text)


@dataclass(frozen=True, slots=True)
class EntityRef:
    """A named node: resolved namespace IRI plus non-empty local name."""

    namespace: str
    local: str

    def __post_init__(self) -> None:
        if not self.local:
            raise ValueError("entity local name must be non-empty")

    @property
    def is_blank(self) -> bool:
        return self.namespace == BLANK_NS

    @property
    def expanded(self) -> str:
        """Full IRI (namespace + local); blank nodes keep the _: marker."""
        return self.namespace + self.local

    def n3(self) -> str:
        if self.is_blank:
            return "_:" + self.local
        return f"<{self.expanded}>"


# Predicates share the namespace+local structure of entity references.
PredicateRef = EntityRef


@dataclass(frozen=True, slots=True)
class Literal:
    """A literal object term; text is compared verbatim, never coerced."""

    text: str
    datatype: str | None = None
    lang: str | None = None

    def n3(self) -> str:
        out = f'"{escape_literal_text(self.text)}"'
        if self.lang:
            out += "@" + self.lang
        elif self.datatype:
            out += f"^^<{self.datatype}>"
        return out


ObjectTerm = Union[EntityRef, Literal]


@dataclass(frozen=True, slots=True)
class Triple:
    subject: EntityRef
    predicate: PredicateRef
    object: ObjectTerm

    def n3(self) -> str:
        return f"{self.subject.n3()} {self.predicate.n3()} {self.object.n3()} ."


@dataclass(frozen=True, slots=True)
class Fact:
    """One rdf block: a subject entity with the triples it heads.

    `ordinal` is the 1-based position of the block in the document;
    `raw_block` is the source text slice the block came from.
    """

    ordinal: int
    subject: EntityRef
    triples: tuple[Triple, ...]
    raw_block: str = ""

    def __post_init__(self) -> None:
        if self.ordinal < 1:
            raise ValueError("fact ordinal must be >= 1")
        for t in self.triples:
            if t.subject != self.subject:
                raise ValueError(
                    f"fact {self.ordinal}: triple subject {t.subject.n3()} "
                    f"differs from block subject {self.subject.n3()}"
                )


@dataclass(frozen=True, slots=True)
class RdfDocument:
    prefixes: dict[str, str] = field(default_factory=dict)
    facts: tuple[Fact, ...] = ()
    source: str = ""

    def __post_init__(self) -> None:
        for expected, fact in enumerate(self.facts, start=1):
            if fact.ordinal != expected:
                raise ValueError("fact ordinals must be dense 1..N")

    @property
    def triples(self) -> tuple[Triple, ...]:
        return tuple(t for f in self.facts for t in f.triples)

    def fact_by_ordinal(self, ordinal: int) -> Fact:
        if not 1 <= ordinal <= len(self.facts):
            raise KeyError(f"no fact with ordinal {ordinal}")
        return self.facts[ordinal - 1]
