from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import pytest

from kgworkbench.analytics.metrics import (
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
from kgworkbench.rdf import EntityRef, parse_ttl

from conftest import random_doc


def test_identical_sets_score_r():
    sets = [frozenset({"a", "b", "c"})] * 10
    assert conformity_score(sets) == 10


def test_pairwise_disjoint_sets_score_one():
    sets = [frozenset({i}) for i in range(4)]
    assert conformity_score(sets) == 1


def test_worked_example():
    sets = [{"A", "B"}, {"A", "C"}, {"A", "B"}]
    assert conformity_score(sets) == Fraction(6, 3) == 2


def test_empty_union_rejected():
    with pytest.raises(EmptyUnion):
        conformity_score([set(), set()])
    with pytest.raises(ValueError):
        conformity_score([])


def test_single_run_scores_one():
    assert conformity_score([{"x", "y"}]) == 1


def test_conformity_order_insensitive():
    rng = random.Random(0)
    universe = list(range(5))
    for _ in range(50):
        sets = [
            frozenset(rng.sample(universe, rng.randint(0, 5))) for _ in range(4)
        ]
        if not any(sets):
            continue
        shuffled = sets[:]
        rng.shuffle(shuffled)
        assert conformity_score(sets) == conformity_score(shuffled)


@pytest.mark.parametrize(
    "d_e,d_t,expected",
    [
        (2, 5, Quadrant.UU),
        (3, -1, Quadrant.UD),
        (-2, 4, Quadrant.DU),
        (-1, -1, Quadrant.DD),
        (0, 3, Quadrant.FLAT_E),
        (0, -3, Quadrant.FLAT_E),
        (2, 0, Quadrant.FLAT_T),
        (-2, 0, Quadrant.FLAT_T),
        (0, 0, Quadrant.FLAT),
    ],
)
def test_quadrant_total_over_sign_combinations(d_e, d_t, expected):
    assert quadrant_of(d_e, d_t) == expected


def _doc(ttl: str):
    return parse_ttl("@prefix x: <http://e.org/> .\n" + ttl)


def test_coverage_delta_more_entities_fewer_triples_is_ud():
    base = _doc("x:a x:p x:b ; x:q x:c ; x:r x:c ; x:s x:b .")
    other = _doc('x:a x:p x:b ; x:q "1" ; x:r "2" .')
    delta = coverage_delta(base, other)
    assert delta.base.triple_count == 4
    assert delta.other.triple_count == 3
    assert delta.d_entities == 1  # 3 named -> 2 named + 2 literal values
    assert delta.d_triples == -1
    assert delta.quadrant == Quadrant.UD


def test_identical_docs_are_flat():
    doc = _doc('x:a x:p "1" .')
    delta = coverage_delta(doc, doc)
    assert delta.quadrant == Quadrant.FLAT
    assert delta.d_entities == delta.d_triples == 0


def test_up_up_case():
    base = _doc('x:a x:p "1" .')
    other = _doc('x:a x:p "1" ; x:q "2" ; x:r x:b .')
    delta = coverage_delta(base, other)
    assert delta.quadrant == Quadrant.UU


def test_rse_carryover_identity():
    from kgworkbench.rdf import classify

    rng = random.Random(1)
    for _ in range(30):
        doc = random_doc(rng)
        if classify(doc).rse:
            assert rse_carryover(doc, doc) == 1
        else:
            with pytest.raises(NoBaseRse):
                rse_carryover(doc, doc)


def test_rse_carryover_disjoint_sets_is_zero():
    base = _doc('x:RV32E x:p "1" .')
    other = _doc('x:Chapter4 x:p "1" .\nx:RV32I x:q "2" .')
    assert rse_carryover(base, other) == 0


def test_rse_carryover_counts_matches():
    base = _doc('x:A x:p "1" .\nx:B x:p "2" .')
    other = _doc('x:A x:p "1" .\nx:C x:p "3" .')
    assert rse_carryover(base, other) == Fraction(1, 2)


def test_rse_carryover_normalizes_names():
    base = _doc('x:Integer_Register x:p "1" .')
    other = _doc('x:integerregister x:p "1" .')
    assert rse_carryover(base, other) == 1


def test_no_base_rse_rejected():
    # the only subject also appears as an object, so no RSE remains
    base = _doc("x:a x:p x:a .")
    with pytest.raises(NoBaseRse):
        rse_carryover(base, base)


def test_normalize_entity():
    assert normalize_entity(EntityRef("http://E.org/", "Integer_Register-2")) == (
        "http://e.org/integerregister2"
    )


def test_randomized_carryover_against_brute_force():
    rng = random.Random(2)
    for _ in range(100):
        base = random_doc(rng)
        other = random_doc(rng)
        base_rse = {
            t.subject for t in base.triples
        } - {t.object for t in base.triples if isinstance(t.object, EntityRef)}
        if not base_rse:
            with pytest.raises(NoBaseRse):
                rse_carryover(base, other)
            continue
        other_rse = {
            t.subject for t in other.triples
        } - {t.object for t in other.triples if isinstance(t.object, EntityRef)}
        other_keys = {normalize_entity(e) for e in other_rse}
        kept = sum(1 for e in base_rse if normalize_entity(e) in other_keys)
        assert rse_carryover(base, other) == Fraction(kept, len(base_rse))
