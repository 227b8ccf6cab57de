#!/usr/bin/env python3
"""Tour of the bundled review session, replayed fully offline.

Walks the six-paragraph sample corpus through the whole loop (first-pass
runs, a manual bypass, background facts, second-pass runs, acceptance,
merge) using the recorded response fixtures, then prints what the
analytics see.
"""

from __future__ import annotations

import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from kgworkbench.analytics import bipartite_to_dot
from kgworkbench.kgmerge import shared_entities
from kgworkbench.sampledata import run_sample_session
from kgworkbench.service.serialize import fraction_str


def main() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        result = run_sample_session(Path(tmp) / "workbench")
        wb = result["workbench"]

        print("== item states after the session ==")
        for item in wb.corpus.active_items():
            payload = wb.item_payload(item)
            print(f"  {payload['label']:<6} {payload['state']:<10} {item.text[:48]}…")

        print("\n== run scoreboard ==")
        for key, run_id in sorted(result["runs"].items()):
            record = wb.get_run(run_id)
            consistency = record.consistency
            groups = sorted((g.size for g in consistency.groups), reverse=True)
            score = (
                "-"
                if record.entailment is None
                else fraction_str(record.entailment.final_score)
            )
            print(
                f"  {key:<16} systematic={consistency.systematic!s:<5} "
                f"groups={groups} failed={consistency.failed_count} final={score}"
            )

        print("\n== merged graph ==")
        print(f"  {len(wb.graph.triples)} triples from {len(wb.graph.item_ids)} items")
        for entity, items in shared_entities(wb.graph, min_items=2)[:5]:
            print(f"  shared: {entity.local:<24} in {len(items)} items")

        print("\n== first-pass vs second-pass comparison for the trap paragraph ==")
        item6 = result["items"][5]
        compare = wb.compare_runs(
            item6, result["runs"][f"{item6}@0"], result["runs"][f"{item6}@1"]
        )
        delta = compare["delta"]
        print(f"  scenario: {compare['scenario']}")
        print(
            f"  entities {delta['base']['entities_with_literals']} -> "
            f"{delta['other']['entities_with_literals']}, triples "
            f"{delta['base']['triples']} -> {delta['other']['triples']} "
            f"({delta['quadrant']})"
        )
        print(f"  root-subject carry-over: {compare['rse_carryover']['fraction']}")

        print("\n== concept-paragraph bipartite graph (second pass) ==")
        graph = wb.bipartite_graph("bfa", min_paragraphs=1)
        print(f"  {len(graph.concepts)} concepts, {graph.edge_count} edges")
        print("\n" + bipartite_to_dot(graph))


if __name__ == "__main__":
    main()
