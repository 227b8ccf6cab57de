"""End-to-end orchestration: ingest, run, review, accept, merge, compare.

The workbench is the single writer for every artifact; the HTTP API and
the CLI are thin clients over it. Run records are content-addressed (same
inputs and responses produce the same run id and bytes), which is what the
replay-mode reproducibility guarantee rests on.
"""

from __future__ import annotations

import enum
import hashlib
import threading
import time
from dataclasses import dataclass, replace
from pathlib import Path

from .. import checker
from ..analytics import (
    bipartite,
    conformity_score,
    coverage_delta,
    group_concepts,
    rse_carryover,
)
from ..analytics.metrics import EmptyUnion, NoBaseRse
from ..bfstore import BfStore
from ..checker import (
    BypassCategory,
    ConsistencyReport,
    EntailmentReport,
    OracleUnavailable,
)
from ..corpus import Corpus, TextItem
from ..kgmerge import MergedGraph, graph_from_json, graph_to_json, merge, to_turtle
from ..oracle import TEMPLATE_VERSION, Oracle
from ..rdf import parse_ttl
from .serialize import (
    consistency_from_json,
    consistency_to_json,
    entailment_from_json,
    entailment_to_json,
    fraction_str,
)
from .store import WorkbenchStore, dumps


class WorkbenchError(Exception):
    pass


class NotEligible(WorkbenchError):
    """Acceptance requires a systematic run with final score 1."""


class RunNotFound(WorkbenchError):
    pass


class ItemState(enum.Enum):
    UNPROCESSED = "unprocessed"
    NEEDS_REVIEW = "needs_review"
    NEEDS_BFS = "needs_bfs"
    NEEDS_SPLIT = "needs_split"
    ACCEPTED = "accepted"


@dataclass(frozen=True, slots=True)
class RunRecord:
    run_id: str
    item_id: str
    bf_version: int
    template_version: str
    n_runs: int
    equality_mode: str
    consistency: ConsistencyReport
    representative: int | None
    representative_ttl: str | None
    entailment: EntailmentReport | None
    created_at: float
    state_hint: str | None = None
    error: str | None = None

    @property
    def accept_eligible(self) -> bool:
        return (
            self.consistency.systematic
            and self.entailment is not None
            and self.entailment.complete
        )


def record_to_json(record: RunRecord) -> dict:
    return {
        "run_id": record.run_id,
        "item_id": record.item_id,
        "bf_version": record.bf_version,
        "template_version": record.template_version,
        "n_runs": record.n_runs,
        "equality_mode": record.equality_mode,
        "consistency": consistency_to_json(record.consistency),
        "representative": record.representative,
        "representative_ttl": record.representative_ttl,
        "entailment": (
            None if record.entailment is None else entailment_to_json(record.entailment)
        ),
        "created_at": record.created_at,
        "state_hint": record.state_hint,
        "error": record.error,
        "accept_eligible": record.accept_eligible,
    }


def record_from_json(payload: dict) -> RunRecord:
    return RunRecord(
        run_id=payload["run_id"],
        item_id=payload["item_id"],
        bf_version=payload["bf_version"],
        template_version=payload["template_version"],
        n_runs=payload["n_runs"],
        equality_mode=payload["equality_mode"],
        consistency=consistency_from_json(payload["consistency"]),
        representative=payload.get("representative"),
        representative_ttl=payload.get("representative_ttl"),
        entailment=(
            None
            if payload.get("entailment") is None
            else entailment_from_json(payload["entailment"])
        ),
        created_at=payload["created_at"],
        state_hint=payload.get("state_hint"),
        error=payload.get("error"),
    )


class Workbench:
    def __init__(self, workdir: Path | str, oracle: Oracle | None = None):
        self.store = WorkbenchStore(workdir)
        self.oracle = oracle
        self._write = threading.RLock()
        self._item_locks: dict[str, threading.Lock] = {}
        self.corpus = Corpus()
        for chapter_file in sorted((self.store.workdir / "corpus").glob("*.json")):
            self.corpus.load_chapter(
                chapter_file.stem, self.store.read_json(chapter_file, [])
            )
        self.bfs = BfStore.from_json(self.store.read_json(self.store.bfs_path, {}))
        self._states: dict[str, str] = self.store.read_json(self.store.states_path, {})
        graph_payload = self.store.read_json(self.store.graph_path)
        self.graph: MergedGraph = (
            MergedGraph.empty() if graph_payload is None else graph_from_json(graph_payload)
        )

    # --- helpers -------------------------------------------------------------

    def _require_oracle(self) -> Oracle:
        if self.oracle is None:
            raise WorkbenchError("no oracle configured (set ORACLE_MODE)")
        return self.oracle

    def _item_lock(self, item_id: str) -> threading.Lock:
        with self._write:
            return self._item_locks.setdefault(item_id, threading.Lock())

    def _save_corpus(self, chapter: str) -> None:
        self.store.write_json(
            self.store.chapter_path(chapter), self.corpus.chapter_to_json(chapter)
        )

    def _save_bfs(self) -> None:
        self.store.write_json(self.store.bfs_path, self.bfs.to_json())

    def _set_state(self, item_id: str, state: ItemState) -> None:
        self._states[item_id] = state.value
        self.store.write_json(self.store.states_path, self._states)

    def item_state(self, item_id: str) -> ItemState:
        return ItemState(self._states.get(item_id, "unprocessed"))

    # --- corpus ---------------------------------------------------------------

    def ingest_text(self, text: str, chapter: str) -> list[TextItem]:
        with self._write:
            items = self.corpus.ingest(text, chapter)
            self._save_corpus(chapter)
            self.store.append_event(
                "ingest", {"chapter": chapter, "items": [i.id for i in items]}
            )
        return items

    def split_item(
        self, item_id: str, parts: list[str], partition: bool = False
    ) -> list[TextItem]:
        """Split an item; children inherit the parent's fact assignment.

        Inheritance is a convenience default, flagged in the event log so
        the verifier can reassign per child.
        """
        with self._write:
            inherited = self.bfs.assignment(item_id).bf_ids
            children = self.corpus.split_item(item_id, parts, partition)
            parent = self.corpus.get(item_id)
            if inherited:
                for child in children:
                    self.bfs.assign(child.id, inherited)
                self._save_bfs()
            self._save_corpus(parent.chapter)
            self._states.pop(item_id, None)
            self.store.write_json(self.store.states_path, self._states)
            self.store.append_event(
                "split",
                {
                    "item": item_id,
                    "children": [c.id for c in children],
                    "partition": partition,
                    "inherited_bf_ids": list(inherited),
                },
            )
        return children

    def item_payload(self, item: TextItem) -> dict:
        parent_seq = None
        if item.parent_id is not None:
            parent_seq = self.corpus.get(item.parent_id).seq
        return {
            "id": item.id,
            "chapter": item.chapter,
            "seq": item.seq,
            "label": item.label(parent_seq),
            "text": item.text,
            "status": item.status.value,
            "parent_id": item.parent_id,
            "split_index": item.split_index,
            "state": self.item_state(item.id).value,
            "bf_version": self.bfs.assignment(item.id).version,
        }

    # --- background facts -------------------------------------------------------

    def add_bf(self, text: str, key_terms=(), origin_item: str | None = None):
        with self._write:
            fact = self.bfs.add(text, key_terms, origin_item)
            self._save_bfs()
            self.store.append_event("bf_add", {"bf": fact.id})
        return fact

    def assign_bfs(self, item_id: str, bf_ids, base_version: int | None = None):
        item = self.corpus.get(item_id)
        with self._write:
            assignment = self.bfs.assign(item_id, bf_ids, base_version)
            warnings = self.bfs.warnings_for(item, assignment.bf_ids)
            self._save_bfs()
            self.store.append_event(
                "bf_assign",
                {
                    "item": item_id,
                    "bf_ids": list(assignment.bf_ids),
                    "version": assignment.version,
                },
            )
        return assignment, warnings

    # --- runs ---------------------------------------------------------------

    def _finish_record(self, record: RunRecord) -> RunRecord:
        self.store.write_json(self.store.run_path(record.run_id), record_to_json(record))
        index = self.store.read_json(self.store.runs_index_path, [])
        row = {
            "run_id": record.run_id,
            "item_id": record.item_id,
            "bf_version": record.bf_version,
            "created_at": record.created_at,
            "systematic": record.consistency.systematic,
            "final_score": (
                None
                if record.entailment is None
                else fraction_str(record.entailment.final_score)
            ),
        }
        index = [r for r in index if r["run_id"] != record.run_id] + [row]
        self.store.write_json(self.store.runs_index_path, index)
        self.store.append_event(
            "run", {"run": record.run_id, "item": record.item_id}
        )
        return record

    def _created_at(self, consistency: ConsistencyReport) -> float:
        oracle = self._require_oracle()
        if oracle.transport.kind in ("replay", "scripted"):
            times = [r.transcript.timestamp for r in consistency.runs]
            return max(times, default=0.0)
        return time.time()

    @staticmethod
    def _run_id(item_id: str, bf_version: int, consistency: ConsistencyReport) -> str:
        body = dumps(
            {
                "item": item_id,
                "bf_version": bf_version,
                "template_version": TEMPLATE_VERSION,
                "digests": [
                    [r.run_index, r.digest, r.error] for r in consistency.runs
                ],
            }
        )
        return "r" + hashlib.sha256(body.encode("utf-8")).hexdigest()[:12]

    def execute_run(
        self,
        item_id: str,
        bf_version: int = 0,
        n_runs: int = 10,
        equality_mode: str = "canonical",
    ) -> RunRecord:
        """Consistency, then representative selection, then entailment.

        Persisted atomically at the end; on transport failure whatever
        completed is persisted with the error noted, and the failure
        propagates.
        """
        oracle = self._require_oracle()
        item = self.corpus.get(item_id)
        assignment = self.bfs.assignment(item_id, version=bf_version)
        bf_texts = [f.text for f in self.bfs.facts_for(assignment)]

        with self._item_lock(item_id):
            entailment: EntailmentReport | None = None
            representative: int | None = None
            representative_ttl: str | None = None
            try:
                consistency = checker.run_consistency(
                    oracle, item, bf_texts, n_runs=n_runs, equality_mode=equality_mode
                )
            except OracleUnavailable as exc:
                self._persist_failed(
                    item_id, bf_version, n_runs, equality_mode, exc.partial, str(exc)
                )
                raise
            if consistency.systematic:
                representative = checker.select_representative(consistency)
                representative_ttl = consistency.runs[
                    [r.run_index for r in consistency.runs].index(representative)
                ].extracted_ttl
                doc = parse_ttl(representative_ttl)
                digest = consistency.largest_group.digest
                try:
                    entailment = checker.run_entailment(
                        oracle, item, bf_texts, doc, rdf_digest=digest
                    )
                except OracleUnavailable as exc:
                    self._persist_failed(
                        item_id,
                        bf_version,
                        n_runs,
                        equality_mode,
                        consistency,
                        str(exc),
                        representative=representative,
                        representative_ttl=representative_ttl,
                        entailment=exc.partial,
                    )
                    raise
                state = ItemState.NEEDS_REVIEW
                hint = None if entailment.complete else "facts failing; review or add facts"
            else:
                state = (
                    ItemState.NEEDS_BFS if bf_version == 0 else ItemState.NEEDS_SPLIT
                )
                hint = (
                    "not systematic; provide background facts"
                    if bf_version == 0
                    else "not systematic even with facts; consider splitting"
                )

            record = RunRecord(
                run_id=self._run_id(item_id, bf_version, consistency),
                item_id=item_id,
                bf_version=bf_version,
                template_version=TEMPLATE_VERSION,
                n_runs=n_runs,
                equality_mode=equality_mode,
                consistency=consistency,
                representative=representative,
                representative_ttl=representative_ttl,
                entailment=entailment,
                created_at=self._created_at(consistency),
                state_hint=hint,
            )
            with self._write:
                self._finish_record(record)
                if self.item_state(item_id) != ItemState.ACCEPTED:
                    self._set_state(item_id, state)
        return record

    def _persist_failed(
        self,
        item_id,
        bf_version,
        n_runs,
        equality_mode,
        consistency,
        error,
        representative=None,
        representative_ttl=None,
        entailment=None,
    ) -> RunRecord:
        record = RunRecord(
            run_id=self._run_id(item_id, bf_version, consistency),
            item_id=item_id,
            bf_version=bf_version,
            template_version=TEMPLATE_VERSION,
            n_runs=n_runs,
            equality_mode=equality_mode,
            consistency=consistency,
            representative=representative,
            representative_ttl=representative_ttl,
            entailment=entailment,
            created_at=self._created_at(consistency),
            state_hint="oracle unavailable; partial record",
            error=error,
        )
        with self._write:
            self._finish_record(record)
        return record

    def get_run(self, run_id: str) -> RunRecord:
        payload = self.store.read_json(self.store.run_path(run_id))
        if payload is None:
            raise RunNotFound(run_id)
        return record_from_json(payload)

    def runs_index(self) -> list[dict]:
        return self.store.read_json(self.store.runs_index_path, [])

    def bypass_fact(
        self, run_id: str, fact_ordinal: int, category: BypassCategory, note: str = ""
    ) -> RunRecord:
        with self._write:
            record = self.get_run(run_id)
            if record.entailment is None:
                raise WorkbenchError(f"run {run_id} has no entailment report")
            updated_report = checker.bypass(
                record.entailment, fact_ordinal, category, note
            )
            updated = replace(record, entailment=updated_report)
            self._finish_record(updated)
            self.store.append_event(
                "bypass",
                {
                    "run": run_id,
                    "fact": fact_ordinal,
                    "category": category.value,
                    "note": note,
                },
            )
        return updated

    # --- acceptance and merge ---------------------------------------------------

    def accept_item(self, item_id: str, run_id: str) -> dict:
        with self._write:
            record = self.get_run(run_id)
            if record.item_id != item_id:
                raise WorkbenchError(f"run {run_id} does not belong to {item_id}")
            if not record.accept_eligible:
                raise NotEligible(
                    f"run {run_id}: systematic={record.consistency.systematic}, "
                    f"final_score="
                    + (
                        "none"
                        if record.entailment is None
                        else fraction_str(record.entailment.final_score)
                    )
                )
            doc = parse_ttl(record.representative_ttl)
            self.graph = merge(self.graph, doc, item_id)
            self.store.write_json(self.store.graph_path, graph_to_json(self.graph))
            self._set_state(item_id, ItemState.ACCEPTED)
            self.store.append_event("accept", {"item": item_id, "run": run_id})
        return {
            "item_id": item_id,
            "run_id": run_id,
            "graph_triples": len(self.graph.triples),
            "graph_items": sorted(self.graph.item_ids),
        }

    def merged_turtle(self) -> str:
        return to_turtle(self.graph)

    # --- analytics ---------------------------------------------------------------

    def compare_runs(self, item_id: str, run_a: str, run_b: str) -> dict:
        a = self.get_run(run_a)
        b = self.get_run(run_b)
        for record in (a, b):
            if record.item_id != item_id:
                raise WorkbenchError(f"run {record.run_id} does not belong to {item_id}")
            if record.representative_ttl is None:
                raise WorkbenchError(f"run {record.run_id} has no representative")
        doc_a = parse_ttl(a.representative_ttl)
        doc_b = parse_ttl(b.representative_ttl)
        delta = coverage_delta(doc_a, doc_b)
        try:
            carryover = rse_carryover(doc_a, doc_b)
            carryover_payload = {
                "fraction": fraction_str(carryover),
                "value": float(carryover),
            }
        except NoBaseRse:
            carryover_payload = None
        scenario = None
        if a.entailment is not None:
            scenario = "base-pass" if a.entailment.raw_score == 1 else "base-fail"
        return {
            "item_id": item_id,
            "run_a": run_a,
            "run_b": run_b,
            "scenario": scenario,
            "delta": {
                "base": {
                    "entities_named": delta.base.entity_count_named,
                    "entities_with_literals": delta.base.entity_count_with_literals,
                    "triples": delta.base.triple_count,
                },
                "other": {
                    "entities_named": delta.other.entity_count_named,
                    "entities_with_literals": delta.other.entity_count_with_literals,
                    "triples": delta.other.triple_count,
                },
                "d_entities": delta.d_entities,
                "d_triples": delta.d_triples,
                "quadrant": delta.quadrant.value,
            },
            "rse_carryover": carryover_payload,
            "conformity": {
                "a": self._conformity_payload(a),
                "b": self._conformity_payload(b),
            },
        }

    @staticmethod
    def _conformity_payload(record: RunRecord):
        sets = [
            frozenset(r.subject_entities) for r in record.consistency.runs if r.ok
        ]
        if not sets:
            return None
        try:
            score = conformity_score(sets)
        except EmptyUnion:
            return None
        return {"fraction": fraction_str(score), "value": float(score), "runs": len(sets)}

    def subject_entities_by_item(self, scenario: str) -> dict[str, list[str]]:
        """Latest representative subject entities per item for a scenario.

        Scenario "bf0" takes runs without background facts, "bfa" takes
        runs with them. Items without a systematic run in the scenario are
        skipped.
        """
        if scenario not in ("bf0", "bfa"):
            raise WorkbenchError(f"unknown scenario {scenario!r} (use bf0 or bfa)")
        latest: dict[str, dict] = {}
        for row in self.runs_index():
            wanted = row["bf_version"] == 0 if scenario == "bf0" else row["bf_version"] > 0
            if wanted:
                latest[row["item_id"]] = row
        out: dict[str, list[str]] = {}
        for item_id, row in latest.items():
            record = self.get_run(row["run_id"])
            if record.representative is None:
                continue
            outcome = next(
                r for r in record.consistency.runs
                if r.run_index == record.representative
            )
            names = [key.rsplit("#", 1)[-1].rsplit("/", 1)[-1]
                     for key in outcome.subject_entities]
            out[item_id] = names
        return out

    def bipartite_graph(self, scenario: str, min_paragraphs: int = 2):
        groups = group_concepts(self.subject_entities_by_item(scenario))
        return bipartite(groups, min_paragraphs=min_paragraphs)
