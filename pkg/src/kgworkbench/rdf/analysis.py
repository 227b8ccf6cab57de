"""Entity and predicate classification over a parsed document.

Subject entities head Facts; an object entity appears in an object field
and is not a subject entity. A predicate occurrence is a relation when its
object is itself a subject entity, otherwise a feature. Root subject
entities (RSEs) are subject entities that never appear in any object field;
they act as the document's main topics.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .model import EntityRef, Literal, PredicateRef, RdfDocument


class Role(enum.Enum):
    RELATION = "relation"
    FEATURE = "feature"


@dataclass(frozen=True, slots=True)
class EntityClassification:
    subject_entities: frozenset[EntityRef]
    object_entities: frozenset[EntityRef]
    rse: frozenset[EntityRef]
    # keyed by (predicate, global triple index) so repeated predicates keep
    # one classification per occurrence
    predicate_roles: dict[tuple[PredicateRef, int], Role]

    def roles_of(self, predicate: PredicateRef) -> set[Role]:
        return {
            role for (p, _), role in self.predicate_roles.items() if p == predicate
        }


def classify(doc: RdfDocument) -> EntityClassification:
    subjects = frozenset(fact.subject for fact in doc.facts)
    object_refs = {
        t.object for t in doc.triples if isinstance(t.object, EntityRef)
    }
    roles = {
        (t.predicate, idx): (
            Role.RELATION
            if isinstance(t.object, EntityRef) and t.object in subjects
            else Role.FEATURE
        )
        for idx, t in enumerate(doc.triples)
    }
    return EntityClassification(
        subject_entities=subjects,
        object_entities=frozenset(object_refs - subjects),
        rse=frozenset(subjects - object_refs),
        predicate_roles=roles,
    )


@dataclass(frozen=True, slots=True)
class FactCounts:
    entity_count_named: int
    entity_count_with_literals: int
    triple_count: int


def fact_counts(doc: RdfDocument) -> FactCounts:
    """Entity and triple totals used by the coverage metrics.

    Named entities are the distinct subject and object entity references;
    the with-literals count additionally counts distinct literal values.
    """
    named: set[EntityRef] = set()
    literals: set[Literal] = set()
    total = 0
    for t in doc.triples:
        total += 1
        named.add(t.subject)
        if isinstance(t.object, EntityRef):
            named.add(t.object)
        else:
            literals.add(t.object)
    return FactCounts(
        entity_count_named=len(named),
        entity_count_with_literals=len(named) + len(literals),
        triple_count=total,
    )
