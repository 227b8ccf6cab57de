"""Run-to-run comparison metrics.

Conformity measures how stable the subject-entity set is across repeated
runs of one prompt; coverage deltas and their quadrant classify how entity
and triple counts move between two runs of one paragraph; RSE carry-over
measures how many of the base run's root subject entities survive into the
other run.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import AbstractSet, Callable, Hashable, Sequence

from ..rdf.analysis import FactCounts, classify, fact_counts
from ..rdf.model import EntityRef, RdfDocument


class EmptyUnion(ValueError):
    """Conformity is undefined when every run's subject set is empty."""


class NoBaseRse(ValueError):
    """Carry-over is undefined when the base document has no RSEs."""


def conformity_score(sets: Sequence[AbstractSet[Hashable]]) -> Fraction:
    """Sum of per-run set sizes over the size of their union.

    Ranges over [1, R] for R runs: R when every run uses the same set,
    1 when the sets are pairwise disjoint.
    """
    if not sets:
        raise ValueError("conformity needs at least one run")
    union: set[Hashable] = set()
    for s in sets:
        union |= set(s)
    if not union:
        raise EmptyUnion("all subject-entity sets are empty")
    return Fraction(sum(len(s) for s in sets), len(union))


class Quadrant(enum.Enum):
    UU = "UU"
    UD = "UD"
    DU = "DU"
    DD = "DD"
    FLAT_E = "FLAT_E"  # entity delta is exactly zero
    FLAT_T = "FLAT_T"  # triple delta is exactly zero
    FLAT = "FLAT"      # both deltas zero


def quadrant_of(d_entities: int, d_triples: int) -> Quadrant:
    if d_entities == 0 and d_triples == 0:
        return Quadrant.FLAT
    if d_entities == 0:
        return Quadrant.FLAT_E
    if d_triples == 0:
        return Quadrant.FLAT_T
    first = "U" if d_entities > 0 else "D"
    second = "U" if d_triples > 0 else "D"
    return Quadrant[first + second]


@dataclass(frozen=True, slots=True)
class CoverageDelta:
    base: FactCounts
    other: FactCounts
    d_entities: int
    d_triples: int
    quadrant: Quadrant


def coverage_delta(base_doc: RdfDocument, other_doc: RdfDocument) -> CoverageDelta:
    """Entity/triple movement from base to other.

    The entity axis counts entities including literal values, since a run
    may trade a named entity for a string representation of it.
    """
    base = fact_counts(base_doc)
    other = fact_counts(other_doc)
    d_entities = other.entity_count_with_literals - base.entity_count_with_literals
    d_triples = other.triple_count - base.triple_count
    return CoverageDelta(
        base=base,
        other=other,
        d_entities=d_entities,
        d_triples=d_triples,
        quadrant=quadrant_of(d_entities, d_triples),
    )


def normalize_entity(entity: EntityRef) -> str:
    """Default carry-over matcher key: expanded IRI, lowercased, with
    underscore/hyphen noise stripped."""
    return entity.expanded.lower().replace("_", "").replace("-", "")


def rse_carryover(
    base_doc: RdfDocument,
    other_doc: RdfDocument,
    matcher: Callable[[EntityRef], str] = normalize_entity,
) -> Fraction:
    """Fraction of base root subject entities retained by the other run."""
    base_rse = classify(base_doc).rse
    if not base_rse:
        raise NoBaseRse("base document has no root subject entities")
    other_keys = {matcher(e) for e in classify(other_doc).rse}
    kept = sum(1 for e in base_rse if matcher(e) in other_keys)
    return Fraction(kept, len(base_rse))
