"""Bundled six-paragraph sample corpus with a recorded review session.

The session exercises the whole loop offline: ingest, first-pass runs
without background facts, a manual bypass, background fact authoring and
assignment, second-pass runs, acceptance, and merge. Response fixtures for
every oracle call ship with the package, so the session replays
bit-identically with no network.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .checker import BypassCategory, FactStatus
from .oracle import Oracle, ReplayTransport
from .service.workbench import Workbench

SAMPLE_CHAPTER = "intro"


def sample_corpus_text() -> str:
    return (
        resources.files(__package__)
        .joinpath("resources", "sample", "corpus.md")
        .read_text(encoding="utf-8")
    )


def sample_fixture_dir() -> Path:
    return Path(str(resources.files(__package__).joinpath("resources", "sample", "fixtures")))


def replay_oracle() -> Oracle:
    return Oracle(ReplayTransport(sample_fixture_dir()))


def run_sample_session(workdir: Path | str, oracle: Oracle | None = None) -> dict:
    """Drive the recorded review session against a fresh workdir.

    Returns the workbench plus the run ids per item so callers can inspect
    or re-compare the artifacts.
    """
    wb = Workbench(workdir, oracle or replay_oracle())
    items = wb.ingest_text(sample_corpus_text(), chapter=SAMPLE_CHAPTER)
    assert len(items) == 6

    runs: dict[str, str] = {}
    # first pass: no background facts
    for item in items:
        record = wb.execute_run(item.id, bf_version=0, n_runs=10)
        runs[f"{item.id}@0"] = record.run_id

    # paragraph 4's grouping entity fails entailment; reviewed and bypassed
    p4 = items[3]
    record4 = wb.get_run(runs[f"{p4.id}@0"])
    failing = [
        f.fact_ordinal
        for f in record4.entailment.facts
        if f.status == FactStatus.FAIL
    ]
    for ordinal in failing:
        wb.bypass_fact(
            record4.run_id,
            ordinal,
            BypassCategory.AUXILIARY_ENTITY,
            note="grouping entity, not stated in the paragraph",
        )

    # paragraphs 1-4 are now complete; accept them
    for item in items[:4]:
        wb.accept_item(item.id, runs[f"{item.id}@0"])

    # background facts for the two stubborn paragraphs
    bf1 = wb.add_bf(
        "RV32I provides thirty-two integer registers.", ["RV32I"],
        origin_item=items[4].id,
    )
    bf2 = wb.add_bf(
        "RV64I is the 64-bit variant of the base integer instruction set.",
        ["RV64I"], origin_item=items[4].id,
    )
    bf3 = wb.add_bf(
        "Contained traps and fatal traps are kinds of trap.",
        ["contained trap", "fatal trap"], origin_item=items[5].id,
    )
    wb.assign_bfs(items[4].id, [bf1.id, bf2.id])
    wb.assign_bfs(items[5].id, [bf3.id])

    # second pass with the facts, then accept
    for item in items[4:]:
        record = wb.execute_run(item.id, bf_version=1, n_runs=10)
        runs[f"{item.id}@1"] = record.run_id
        wb.accept_item(item.id, record.run_id)

    return {"workbench": wb, "runs": runs, "items": [i.id for i in items]}
