from __future__ import annotations

import json
from pathlib import Path

import pytest

from kgworkbench.corpus import ItemStatus, TextItem
from kgworkbench.oracle import (
    DecodingParams,
    EmptyFact,
    InactiveItem,
    Oracle,
    PromptError,
    PromptKind,
    RateLimited,
    RecordingTransport,
    ReplayMiss,
    ReplayTransport,
    ScriptedTransport,
    TransientTransportError,
    TransportError,
    Verdict,
    build_entailment_prompt,
    build_fact_sentence_prompt,
    build_kgc_prompt,
    default_script,
    extract_rdf,
    parse_entailment_verdict,
    request_digest,
)
from kgworkbench.rdf import Fact, parse_ttl

GOLDEN = Path(__file__).parent / "golden"

ITEM = TextItem(
    id="ch2:0001",
    chapter="ch2",
    seq=1,
    text=(
        "SLTI (set less than immediate) places the value 1 in register rd "
        "if register rs1 is less than the sign-extended immediate. SLTIU is "
        "similar but compares the values as unsigned numbers."
    ),
)

BFS = [
    "The immediate is a 12-bit value encoded in the instruction.",
    "rs1 names a source register.",
    "rd names a destination register.",
]


def _golden_check(name: str, text: str):
    path = GOLDEN / name
    assert path.read_text() == text, f"rendered prompt differs from golden {name}"


def test_kgc_prompt_without_bfs_matches_golden():
    prompt = build_kgc_prompt(ITEM, [])
    assert prompt.kind == PromptKind.KGC_NO_BF
    assert ITEM.text in prompt.text
    _golden_check("kgc_no_bf.txt", prompt.text)


def test_kgc_prompt_with_bfs_matches_golden():
    prompt = build_kgc_prompt(ITEM, BFS)
    assert prompt.kind == PromptKind.KGC_WITH_BF
    for bf in BFS:
        assert bf in prompt.text
    assert prompt.text.find("Background facts:") < prompt.text.find("Paragraph:")
    _golden_check("kgc_with_bf.txt", prompt.text)


def test_explicit_with_bf_kind_requires_facts():
    with pytest.raises(PromptError):
        build_kgc_prompt(ITEM, [], kind=PromptKind.KGC_WITH_BF)


def test_superseded_item_rejected():
    stale = TextItem(
        id="x", chapter="c", seq=1, text="t", status=ItemStatus.SUPERSEDED
    )
    with pytest.raises(InactiveItem):
        build_kgc_prompt(stale, [])


def test_fact_sentence_prompt_embeds_block_verbatim(slti_doc):
    sltiu = slti_doc.facts[1]
    prompt = build_fact_sentence_prompt(sltiu)
    assert sltiu.raw_block in prompt.text
    _golden_check("fact_to_sentence.txt", prompt.text)


def test_fact_sentence_prompt_single_triple(slti_doc):
    register = slti_doc.facts[3]
    assert len(register.triples) == 1
    assert build_fact_sentence_prompt(register).kind == PromptKind.FACT_TO_SENTENCE


def test_empty_fact_rejected(slti_doc):
    empty = Fact(ordinal=1, subject=slti_doc.facts[0].subject, triples=())
    with pytest.raises(EmptyFact):
        build_fact_sentence_prompt(empty)


def test_entailment_prompt_query_forms():
    sentence = "SLTI compares rs1 against the sign-extended immediate."
    q1 = build_entailment_prompt(ITEM, [], sentence)
    q2 = build_entailment_prompt(ITEM, BFS, sentence)
    assert q1.kind == PromptKind.ENTAILMENT_NO_BF
    assert q2.kind == PromptKind.ENTAILMENT_WITH_BF
    assert sentence in q1.text and sentence in q2.text
    _golden_check("entailment_no_bf.txt", q1.text)
    _golden_check("entailment_with_bf.txt", q2.text)
    with pytest.raises(PromptError):
        build_entailment_prompt(ITEM, [], "   ")


def test_digest_deterministic_and_version_keyed():
    params = DecodingParams()
    a = request_digest("prompt", params, "v1")
    assert a == request_digest("prompt", params, "v1")
    assert a != request_digest("prompt!", params, "v1")
    assert a != request_digest("prompt", DecodingParams(temperature=0.7), "v1")
    assert a != request_digest("prompt", params, "v2")


def test_scripted_completion_and_transcript_fields():
    oracle = Oracle(ScriptedTransport(lambda p, params, i: f"run {i}"))
    prompt = build_kgc_prompt(ITEM, [])
    transcript = oracle.complete(prompt, repeat_index=3)
    assert transcript.response_text == "run 3"
    assert transcript.transport == "scripted"
    assert transcript.attempt == 1
    assert transcript.prompt_kind == "kgc_no_bf"


def test_retry_on_429_then_success():
    calls = {"n": 0}

    def script(prompt, params, repeat_index):
        calls["n"] += 1
        if calls["n"] <= 3:
            raise TransientTransportError("HTTP 429", status=429)
        return "ok"

    oracle = Oracle(ScriptedTransport(script), sleeper=lambda s: None)
    transcript = oracle.complete(build_kgc_prompt(ITEM, []))
    assert transcript.attempt == 4
    assert transcript.response_text == "ok"


def test_rate_limited_after_budget():
    def always_429(prompt, params, repeat_index):
        raise TransientTransportError("HTTP 429", status=429)

    oracle = Oracle(
        ScriptedTransport(always_429), max_attempts=3, sleeper=lambda s: None
    )
    with pytest.raises(RateLimited):
        oracle.complete(build_kgc_prompt(ITEM, []))


def test_hard_transport_error_not_retried():
    calls = {"n": 0}

    def broken(prompt, params, repeat_index):
        calls["n"] += 1
        raise TransportError("HTTP 401")

    oracle = Oracle(ScriptedTransport(broken), sleeper=lambda s: None)
    with pytest.raises(TransportError):
        oracle.complete(build_kgc_prompt(ITEM, []))
    assert calls["n"] == 1


def test_record_then_replay_round_trip(tmp_path):
    fixture_dir = tmp_path / "fixtures"
    recording = RecordingTransport(
        ScriptedTransport(lambda p, params, i: f"resp {i}"), fixture_dir
    )
    oracle = Oracle(recording)
    prompt = build_kgc_prompt(ITEM, [])
    for i in (0, 1, 2):
        oracle.complete(prompt, repeat_index=i)

    replayer = Oracle(ReplayTransport(fixture_dir))
    for i in (2, 0, 1):
        transcript = replayer.complete(prompt, repeat_index=i)
        assert transcript.response_text == f"resp {i}"
        assert transcript.transport == "replay"

    files = list(fixture_dir.glob("*.json"))
    assert len(files) == 1  # one digest, one file, three responses
    record = json.loads(files[0].read_text())
    assert record["responses"] == ["resp 0", "resp 1", "resp 2"]
    assert record["prompt"] == prompt.text


def test_replay_miss_names_digest(tmp_path):
    oracle = Oracle(ReplayTransport(tmp_path))
    prompt = build_kgc_prompt(ITEM, [])
    with pytest.raises(ReplayMiss) as exc:
        oracle.complete(prompt)
    assert exc.value.digest == request_digest(
        prompt.text, oracle.params, prompt.template_version
    )


def test_replay_miss_on_exhausted_responses(tmp_path):
    fixture_dir = tmp_path / "fixtures"
    recording = RecordingTransport(
        ScriptedTransport(lambda p, params, i: "only one"), fixture_dir
    )
    prompt = build_kgc_prompt(ITEM, [])
    Oracle(recording).complete(prompt, repeat_index=0)
    with pytest.raises(ReplayMiss):
        Oracle(ReplayTransport(fixture_dir)).complete(prompt, repeat_index=5)


def test_extract_rdf_from_fenced_response():
    ttl = '@prefix x: <http://e.org/> .\nx:a x:p "1" .'
    response = f"Here is the graph you asked for:\n\n```turtle\n{ttl}\n```\nDone."
    assert extract_rdf(response).strip() == ttl


def test_extract_rdf_bare_ttl_unchanged():
    ttl = '@prefix x: <http://e.org/> .\nx:a x:p "1" .\n'
    assert extract_rdf(ttl) == ttl


def test_extract_rdf_prose_prefix_trimmed():
    ttl = '@prefix x: <http://e.org/> .\nx:a x:p "1" .'
    response = "Sure! The knowledge graph follows.\n\n" + ttl
    assert extract_rdf(response) == ttl


def test_extract_rdf_pure_prose_passes_through():
    prose = "This response contains no graph at all."
    assert extract_rdf(prose) == prose
    with pytest.raises(Exception):
        parse_ttl(extract_rdf(prose))


@pytest.mark.parametrize(
    "text,expected",
    [
        ("Yes, the paragraph entails the statement.", Verdict.YES),
        ("yes.", Verdict.YES),
        ("No. The statement adds information.", Verdict.NO),
        ("NO - the fact is unsupported.", Verdict.NO),
        ("It depends on the reading.", Verdict.INDETERMINATE),
        ("", Verdict.INDETERMINATE),
        ("Correct, that follows.", Verdict.YES),
    ],
)
def test_entailment_verdict_parsing(text, expected):
    assert parse_entailment_verdict(text).value == expected


def test_verdict_rationale_is_first_sentence():
    verdict = parse_entailment_verdict("No. The statement adds information.")
    assert verdict.rationale_text == "No."


def test_default_script_shapes():
    kgc = default_script("Construct a knowledge graph…\nParagraph:\nX", DecodingParams(), 0)
    assert parse_ttl(kgc).facts
    sentence = default_script("Convert the rdf block below into a single English sentence…", DecodingParams(), 0)
    assert sentence.endswith("property.")
    yn = default_script("Answer yes or no: does the paragraph…", DecodingParams(), 0)
    assert parse_entailment_verdict(yn).value == Verdict.YES
