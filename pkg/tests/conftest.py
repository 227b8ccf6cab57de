from __future__ import annotations

import random
from pathlib import Path

import pytest

from kgworkbench.rdf import RdfDocument, parse_ttl

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def slti_doc() -> RdfDocument:
    return parse_ttl((FIXTURES / "slti_sltiu.ttl").read_text())


def random_ttl(rng: random.Random, n_subjects: int = 3, n_triples: int = 8) -> str:
    """Small random Turtle documents for property-style tests."""
    subjects = [f"x:S{i}" for i in range(1, rng.randint(1, n_subjects) + 1)]
    predicates = [f"x:p{i}" for i in range(1, 5)]
    entity_pool = subjects + [f"x:O{i}" for i in range(1, 4)]
    lines = ["@prefix x: <http://example.org/x#> ."]
    for _ in range(rng.randint(1, n_triples)):
        s = rng.choice(subjects)
        p = rng.choice(predicates)
        if rng.random() < 0.4:
            o = f'"{rng.randint(0, 9)}"'
        else:
            o = rng.choice(entity_pool)
        lines.append(f"{s} {p} {o} .")
    return "\n".join(lines) + "\n"


def random_doc(rng: random.Random, **kwargs) -> RdfDocument:
    return parse_ttl(random_ttl(rng, **kwargs))
