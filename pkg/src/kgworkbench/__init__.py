"""Workbench for LLM-driven knowledge graph construction with verification.

A corpus of specification paragraphs is turned into per-paragraph RDF
graphs by an LLM oracle; each result is verified with syntactic,
consistency, and entailment checks; a human verifier steers the process
with background facts, paragraph splits, and bypass decisions; accepted
graphs merge into a growing knowledge graph with analytics over the runs.
"""

__version__ = "0.1.0"
