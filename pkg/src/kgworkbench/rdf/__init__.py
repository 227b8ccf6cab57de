"""Turtle parsing, canonical equality, and entity classification."""

from .analysis import EntityClassification, FactCounts, Role, classify, fact_counts
from .canonical import CanonicalForm, canonical_lines, canonicalize, serialize, text_digest
from .model import (
    BLANK_NS,
    RDF_NS,
    XSD_NS,
    EntityRef,
    Fact,
    Literal,
    ObjectTerm,
    PredicateRef,
    RdfDocument,
    Triple,
)
from .parser import TurtleSyntaxError, parse_ttl, split_iri

__all__ = [
    "BLANK_NS",
    "RDF_NS",
    "XSD_NS",
    "CanonicalForm",
    "EntityClassification",
    "EntityRef",
    "Fact",
    "FactCounts",
    "Literal",
    "ObjectTerm",
    "PredicateRef",
    "RdfDocument",
    "Role",
    "Triple",
    "TurtleSyntaxError",
    "canonical_lines",
    "canonicalize",
    "classify",
    "fact_counts",
    "parse_ttl",
    "serialize",
    "split_iri",
    "text_digest",
]
