"""Command-line client for the workbench.

Environment:
  WORKBENCH_DIR   artifact directory (default ./workbench)
  ORACLE_MODE     live | replay | record | scripted (default replay)
  ORACLE_ENDPOINT chat-completion base URL (live/record)
  ORACLE_API_KEY  bearer token for the endpoint
  ORACLE_MODEL    model name recorded in decoding parameters
  FIXTURE_DIR     response fixtures (replay/record)
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from .checker import BypassCategory, FactStatus
from .oracle import oracle_from_env
from .service.api import serve as serve_app
from .service.serialize import fraction_str
from .service.workbench import Workbench


def _workbench(need_oracle: bool = True) -> Workbench:
    workdir = Path(os.environ.get("WORKBENCH_DIR", "workbench"))
    oracle = None
    if need_oracle:
        try:
            oracle = oracle_from_env()
        except ValueError as exc:
            raise click.ClickException(str(exc))
    return Workbench(workdir, oracle)


def _echo_json(payload) -> None:
    click.echo(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))


@click.group()
def main():
    """Knowledge-graph construction workbench."""


@main.command()
@click.argument("file", type=click.Path(exists=True, path_type=Path))
@click.option("--chapter", required=True, help="chapter label for the items")
def ingest(file: Path, chapter: str):
    """Ingest a plain-text document into ordered paragraphs."""
    wb = _workbench(need_oracle=False)
    items = wb.ingest_text(file.read_text(encoding="utf-8"), chapter)
    click.echo(f"ingested {len(items)} items into chapter {chapter}")
    for item in items:
        click.echo(f"  {item.id}  P{item.seq}  {item.text[:60]!r}")


@main.group()
def bf():
    """Manage background facts."""


@bf.command("add")
@click.argument("text")
@click.option("--term", "terms", multiple=True, help="key term (repeatable)")
@click.option("--origin-item", default=None)
def bf_add(text: str, terms, origin_item):
    wb = _workbench(need_oracle=False)
    fact = wb.add_bf(text, list(terms), origin_item)
    click.echo(f"{fact.id}  seq={fact.created_seq}")


@bf.command("list")
def bf_list():
    wb = _workbench(need_oracle=False)
    for fact in wb.bfs.all():
        terms = ",".join(fact.key_terms)
        click.echo(f"{fact.id}  [{terms}]  {fact.text}")


@bf.command("assign")
@click.argument("item_id")
@click.argument("bf_ids", nargs=-1)
def bf_assign(item_id: str, bf_ids):
    wb = _workbench(need_oracle=False)
    assignment, warnings = wb.assign_bfs(item_id, list(bf_ids))
    click.echo(f"{item_id} now at bf version {assignment.version}")
    for warning in warnings:
        click.echo(f"warning: {warning}", err=True)


@bf.command("suggest")
@click.argument("item_id")
def bf_suggest(item_id: str):
    wb = _workbench(need_oracle=False)
    for fact in wb.bfs.suggest(wb.corpus.get(item_id)):
        click.echo(f"{fact.id}  {fact.text}")


@bf.command("export")
@click.argument("file", type=click.Path(path_type=Path), required=False)
def bf_export(file):
    """Write the fact store as a JSON array ordered by creation."""
    wb = _workbench(need_oracle=False)
    payload = json.dumps(wb.bfs.export_facts(), indent=2, ensure_ascii=False)
    if file:
        file.write_text(payload + "\n", encoding="utf-8")
        click.echo(f"wrote {len(wb.bfs.all())} facts to {file}")
    else:
        click.echo(payload)


@bf.command("import")
@click.argument("file", type=click.Path(exists=True, path_type=Path))
def bf_import(file: Path):
    """Load facts from a JSON array; duplicates are skipped."""
    from .bfstore import DuplicateBf

    wb = _workbench(need_oracle=False)
    records = json.loads(file.read_text(encoding="utf-8"))
    imported = 0
    for rec in records:
        try:
            wb.add_bf(rec["text"], rec.get("key_terms", []), rec.get("origin_item"))
            imported += 1
        except DuplicateBf:
            continue
    click.echo(
        f"imported {imported} facts ({len(records) - imported} duplicates skipped)"
    )


@main.command()
@click.argument("item_id")
@click.option("--bf-version", default=0, show_default=True)
@click.option("--runs", "n_runs", default=10, show_default=True)
@click.option(
    "--equality",
    type=click.Choice(["canonical", "text"]),
    default="canonical",
    show_default=True,
)
def run(item_id: str, bf_version: int, n_runs: int, equality: str):
    """Run the consistency and entailment checks for one item."""
    wb = _workbench()
    record = wb.execute_run(
        item_id, bf_version=bf_version, n_runs=n_runs, equality_mode=equality
    )
    c = record.consistency
    click.echo(f"run {record.run_id}")
    click.echo(
        f"  consistency: systematic={c.systematic} failed={c.failed_count} "
        f"groups={sorted((g.size for g in c.groups), reverse=True)}"
    )
    if record.entailment is not None:
        e = record.entailment
        click.echo(
            f"  entailment: raw={fraction_str(e.raw_score)} "
            f"final={fraction_str(e.final_score)}"
        )
    if record.state_hint:
        click.echo(f"  hint: {record.state_hint}")


@main.command()
@click.argument("run_id")
def review(run_id: str):
    """Print the per-fact entailment table for a run."""
    wb = _workbench(need_oracle=False)
    record = wb.get_run(run_id)
    if record.entailment is None:
        click.echo("no entailment report (run not systematic)")
        return
    click.echo(f"run {run_id}  item {record.item_id}  bf_version {record.bf_version}")
    click.echo(f"{'fact':>4}  {'status':<13} sentence")
    for fact in record.entailment.facts:
        status = fact.status.value
        if fact.status == FactStatus.BYPASSED:
            status += f"({fact.bypass_category.value})"
        click.echo(f"{fact.fact_ordinal:>4}  {status:<13} {fact.sentence_text[:70]}")
    e = record.entailment
    click.echo(
        f"raw={fraction_str(e.raw_score)} final={fraction_str(e.final_score)}"
    )


@main.command()
@click.argument("run_id")
@click.argument("fact_ordinal", type=int)
@click.option(
    "--category",
    required=True,
    type=click.Choice([c.value for c in BypassCategory]),
)
@click.option("--note", default="")
def bypass(run_id: str, fact_ordinal: int, category: str, note: str):
    """Bypass one failing fact after manual review."""
    wb = _workbench(need_oracle=False)
    record = wb.bypass_fact(run_id, fact_ordinal, BypassCategory(category), note)
    click.echo(
        f"fact {fact_ordinal} bypassed; final="
        f"{fraction_str(record.entailment.final_score)}"
    )


@main.command()
@click.argument("item_id")
@click.argument("run_id")
def accept(item_id: str, run_id: str):
    """Accept a fully passing run and merge it into the graph."""
    wb = _workbench(need_oracle=False)
    result = wb.accept_item(item_id, run_id)
    click.echo(
        f"accepted; merged graph now has {result['graph_triples']} triples "
        f"from {len(result['graph_items'])} items"
    )


@main.group()
def metrics():
    """Comparison metrics between runs."""


@metrics.command("compare")
@click.argument("item_id")
@click.argument("run_a")
@click.argument("run_b")
def metrics_compare(item_id: str, run_a: str, run_b: str):
    wb = _workbench(need_oracle=False)
    _echo_json(wb.compare_runs(item_id, run_a, run_b))


@main.group()
def concepts():
    """Suffix-concept grouping over run results."""


@concepts.command("export")
@click.option("--scenario", type=click.Choice(["bf0", "bfa"]), default="bfa",
              show_default=True)
@click.option("--min", "min_paragraphs", default=2, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "dot", "graphml"]),
              default="json", show_default=True)
def concepts_export(scenario: str, min_paragraphs: int, fmt: str):
    from .analytics import bipartite_to_dot, bipartite_to_graphml, bipartite_to_json

    wb = _workbench(need_oracle=False)
    graph = wb.bipartite_graph(scenario, min_paragraphs=min_paragraphs)
    if fmt == "dot":
        click.echo(bipartite_to_dot(graph), nl=False)
    elif fmt == "graphml":
        click.echo(bipartite_to_graphml(graph))
    else:
        _echo_json(bipartite_to_json(graph))


@concepts.command("table")
@click.option("--scenario", type=click.Choice(["bf0", "bfa"]), default="bfa",
              show_default=True)
@click.option("--top", "k", default=5, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
def concepts_table(scenario: str, k: int, fmt: str):
    """Top concepts by paragraph occurrence, as CSV or JSON rows."""
    from .analytics import (
        concept_table_rows,
        group_concepts,
        rows_to_csv,
        rows_to_json,
        top_concepts,
    )

    wb = _workbench(need_oracle=False)
    groups = group_concepts(wb.subject_entities_by_item(scenario))
    top = top_concepts(groups, k)
    labels = {label for label, _, _ in top}
    rows = concept_table_rows([g for g in groups if g.label in labels])
    click.echo(rows_to_csv(rows) if fmt == "csv" else rows_to_json(rows), nl=False)


@main.command()
@click.option("--port", default=8080, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--ui-dir", default=None, help="static dir to mount at /ui")
def serve(port: int, host: str, ui_dir):
    """Serve the HTTP JSON API."""
    wb = _workbench()
    serve_app(wb, host=host, port=port, ui_dir=ui_dir)


@main.command()
def items():
    """List corpus items with their states."""
    wb = _workbench(need_oracle=False)
    for item in wb.corpus.items():
        payload = wb.item_payload(item)
        flag = "" if item.is_active else " (superseded)"
        click.echo(
            f"{payload['id']}  {payload['label']:<8} {payload['state']:<12}"
            f" bf_v{payload['bf_version']}{flag}  {item.text[:50]!r}"
        )


if __name__ == "__main__":
    sys.exit(main())
