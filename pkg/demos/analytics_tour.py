#!/usr/bin/env python3
"""Walkthrough of the comparison metrics on small in-memory documents."""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from kgworkbench.analytics import (
    conformity_score,
    coverage_delta,
    group_concepts,
    rse_carryover,
    suffix_of,
    top_concepts,
)
from kgworkbench.rdf import classify, parse_ttl


def doc(body: str):
    return parse_ttl("@prefix x: <http://example.org/x#> .\n" + body)


def main() -> None:
    print("== conformity: subject-set stability across repeated runs ==")
    stable = [frozenset({"ADD", "SUB"})] * 10
    drifting = [frozenset({f"S{i}"}) for i in range(10)]
    mixed = [{"A", "B"}, {"A", "C"}, {"A", "B"}]
    print(f"  identical sets, 10 runs  -> {conformity_score(stable)}")
    print(f"  disjoint sets, 10 runs   -> {conformity_score(drifting)}")
    print(f"  {{A,B}},{{A,C}},{{A,B}}        -> {conformity_score(mixed)}")

    print("\n== coverage deltas and their quadrant ==")
    base = doc("x:a x:p x:b ; x:q x:c ; x:r x:c ; x:s x:b .")
    richer = doc('x:a x:p x:b ; x:q "1" ; x:r "2" .')
    delta = coverage_delta(base, richer)
    print(
        f"  entities {delta.base.entity_count_with_literals} -> "
        f"{delta.other.entity_count_with_literals}, triples "
        f"{delta.base.triple_count} -> {delta.other.triple_count}: "
        f"{delta.quadrant.value}"
    )

    print("\n== root subject entities and carry-over ==")
    first = doc('x:RV32E x:reduces "registers" .')
    second = doc('x:Chapter4 x:describes x:RV32E_Variant .\nx:RV32I x:has "32" .')
    print(f"  first-run roots:  {[e.local for e in classify(first).rse]}")
    print(f"  second-run roots: {[e.local for e in classify(second).rse]}")
    print(f"  carry-over: {rse_carryover(first, second)}")

    print("\n== suffix-word concept grouping ==")
    entities = {
        "p1": ["CSRInstruction", "StoreInstruction", "Trap"],
        "p2": ["LoadInstruction", "InvisibleTrap"],
        "p3": ["32_bit_instruction", "FatalTrap", "BaseISA"],
    }
    for name in ("CSRInstruction", "32_bit_instruction", "RV32I"):
        print(f"  suffix_of({name!r}) = {suffix_of(name)!r}")
    groups = group_concepts(entities)
    for label, count, members in top_concepts(groups, 3):
        print(f"  {label:<12} occurs in {count} paragraphs: "
              f"{sorted(n for n, _ in members)}")


if __name__ == "__main__":
    main()
