from __future__ import annotations

import json
import re

import pytest
from click.testing import CliRunner

from kgworkbench.cli import main

DOC = (
    "The LUI instruction builds a 32-bit constant from the upper immediate.\n\n"
    "The AUIPC instruction adds the upper immediate to the program counter.\n"
)


@pytest.fixture
def env(tmp_path, monkeypatch):
    monkeypatch.setenv("WORKBENCH_DIR", str(tmp_path / "wb"))
    monkeypatch.setenv("ORACLE_MODE", "scripted")
    doc_path = tmp_path / "doc.md"
    doc_path.write_text(DOC)
    return doc_path


def run_cli(*args):
    result = CliRunner().invoke(main, list(args))
    assert result.exit_code == 0, result.output
    return result.output


def test_ingest_and_items(env):
    out = run_cli("ingest", str(env), "--chapter", "ch2")
    assert "ingested 2 items" in out
    listing = run_cli("items")
    assert "ch2:0001" in listing and "unprocessed" in listing


def test_full_scripted_workflow(env):
    run_cli("ingest", str(env), "--chapter", "ch2")
    out = run_cli("run", "ch2:0001", "--runs", "4")
    run_id = re.search(r"run (r\w+)", out).group(1)
    assert "systematic=True" in out
    assert "final=1" in out

    review = run_cli("review", run_id)
    assert "pass" in review

    accept = run_cli("accept", "ch2:0001", run_id)
    assert "merged graph now has" in accept

    compare = run_cli("metrics", "compare", "ch2:0001", run_id, run_id)
    payload = json.loads(compare)
    assert payload["delta"]["quadrant"] == "FLAT"

    export = run_cli("concepts", "export", "--scenario", "bf0", "--min", "1")
    assert json.loads(export)["concept_count"] >= 1
    dot = run_cli("concepts", "export", "--scenario", "bf0", "--min", "1",
                  "--format", "dot")
    assert dot.startswith("graph concepts {")


def test_bf_commands(env):
    run_cli("ingest", str(env), "--chapter", "ch2")
    out = run_cli("bf", "add", "The upper immediate fills bits 31-12.",
                  "--term", "upper immediate")
    assert out.startswith("bf-1")
    listing = run_cli("bf", "list")
    assert "bf-1" in listing and "upper immediate" in listing
    suggestions = run_cli("bf", "suggest", "ch2:0001")
    assert "bf-1" in suggestions
    assign = run_cli("bf", "assign", "ch2:0001", "bf-1")
    assert "version 1" in assign


def test_bf_import_export_round_trip(env, tmp_path):
    from kgworkbench.sampledata import sample_fixture_dir

    sample = sample_fixture_dir().parent / "background_facts.json"
    out = run_cli("bf", "import", str(sample))
    assert "imported 8 facts" in out
    again = run_cli("bf", "import", str(sample))
    assert "imported 0 facts" in again and "8 duplicates" in again

    exported = tmp_path / "facts.json"
    run_cli("bf", "export", str(exported))
    records = json.loads(exported.read_text())
    assert len(records) == 8
    assert [r["created_seq"] for r in records] == sorted(
        r["created_seq"] for r in records
    )


def test_concepts_table(env):
    run_cli("ingest", str(env), "--chapter", "ch2")
    run_cli("run", "ch2:0001", "--runs", "2")
    table = run_cli("concepts", "table", "--scenario", "bf0", "--format", "csv")
    assert table.splitlines()[0] == "label,stem,occurrence_count,members"


def test_bypass_invalid_transition_fails_cleanly(env):
    run_cli("ingest", str(env), "--chapter", "ch2")
    out = run_cli("run", "ch2:0001", "--runs", "2")
    run_id = re.search(r"run (r\w+)", out).group(1)
    result = CliRunner().invoke(
        main, ["bypass", run_id, "1", "--category", "auxiliary_entity"]
    )
    assert result.exit_code != 0


def test_missing_fixture_dir_is_click_error(tmp_path, monkeypatch):
    monkeypatch.setenv("WORKBENCH_DIR", str(tmp_path / "wb"))
    monkeypatch.setenv("ORACLE_MODE", "replay")
    monkeypatch.delenv("FIXTURE_DIR", raising=False)
    result = CliRunner().invoke(main, ["run", "x"])
    assert result.exit_code != 0
    assert "FIXTURE_DIR" in result.output
