"""Comparison metrics, suffix-concept grouping, and graph exports."""

from .concepts import (
    BipartiteGraph,
    ConceptGroup,
    bipartite,
    group_concepts,
    suffix_of,
    tokenize_name,
    top_concepts,
)
from .export import (
    bipartite_to_dot,
    bipartite_to_graphml,
    bipartite_to_json,
    concept_table_rows,
    rows_to_csv,
    rows_to_json,
)
from .metrics import (
    CoverageDelta,
    EmptyUnion,
    NoBaseRse,
    Quadrant,
    conformity_score,
    coverage_delta,
    normalize_entity,
    quadrant_of,
    rse_carryover,
)
from .porter import stem

__all__ = [
    "BipartiteGraph",
    "ConceptGroup",
    "CoverageDelta",
    "EmptyUnion",
    "NoBaseRse",
    "Quadrant",
    "bipartite",
    "bipartite_to_dot",
    "bipartite_to_graphml",
    "bipartite_to_json",
    "concept_table_rows",
    "conformity_score",
    "coverage_delta",
    "group_concepts",
    "normalize_entity",
    "quadrant_of",
    "rows_to_csv",
    "rows_to_json",
    "rse_carryover",
    "stem",
    "suffix_of",
    "tokenize_name",
    "top_concepts",
]
