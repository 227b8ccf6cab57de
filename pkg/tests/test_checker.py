from __future__ import annotations

import random
import re
from fractions import Fraction

import pytest

from kgworkbench.checker import (
    BypassCategory,
    EntailmentReport,
    FactCheck,
    FactStatus,
    InvalidTransition,
    NotSystematic,
    OracleUnavailable,
    bypass,
    group_outcomes,
    run_consistency,
    run_entailment,
    select_representative,
)
from kgworkbench.corpus import TextItem
from kgworkbench.oracle import Oracle, ScriptedTransport, TransportError, Verdict
from kgworkbench.rdf import parse_ttl

ITEM = TextItem(id="ch1:0001", chapter="ch1", seq=1, text="A paragraph about SLTI.")


def letter_ttl(letter: str) -> str:
    return f'@prefix x: <http://e.org/> .\nx:{letter} x:p "{letter}" .\n'


def sequence_oracle(seq, **kwargs) -> Oracle:
    def script(prompt, params, repeat_index):
        tag = seq[repeat_index]
        if tag == "err":
            return "not turtle at all {{{"
        return letter_ttl(tag)

    return Oracle(ScriptedTransport(script), **kwargs)


ACCEPTANCE_SEQ = ["a", "a", "b", "c", "c", "c", "err", "err", "a", "b"]


def test_acceptance_sequence_grouping():
    report = run_consistency(sequence_oracle(ACCEPTANCE_SEQ), ITEM, n_runs=10)
    assert report.failed_count == 2
    assert sorted(g.size for g in report.groups) == [2, 3, 3]
    assert report.systematic is True
    # tie between the 'a' group and the 'c' group resolves to 'a', whose
    # first member is run 0
    assert report.largest_group.run_indices == (0, 1, 8)
    assert select_representative(report) == 0


def test_all_syntax_failures():
    report = run_consistency(sequence_oracle(["err"] * 10), ITEM, n_runs=10)
    assert report.failed_count == 10
    assert report.groups == ()
    assert report.largest_group is None
    assert report.systematic is False
    with pytest.raises(NotSystematic):
        select_representative(report)


def test_two_identical_runs_worst_case():
    report = run_consistency(sequence_oracle(["a", "a"]), ITEM, n_runs=2)
    assert report.systematic is True
    assert report.largest_group.size == 2


def test_n_runs_minimum():
    with pytest.raises(ValueError):
        run_consistency(sequence_oracle(["a"]), ITEM, n_runs=1)


def test_partition_and_permutation_invariance():
    rng = random.Random(42)
    tags = ["a", "b", "c", "d", "err"]
    for _ in range(60):
        n = rng.randint(2, 10)
        seq = [rng.choice(tags) for _ in range(n)]
        report = run_consistency(sequence_oracle(seq), ITEM, n_runs=n)
        ok_runs = [r for r in report.runs if r.ok]
        # partition: every ok run in exactly one group
        assert sum(g.size for g in report.groups) == len(ok_runs)
        all_members = [i for g in report.groups for i in g.run_indices]
        assert sorted(all_members) == sorted(r.run_index for r in ok_runs)
        assert report.failed_count + len(ok_runs) == n

        shuffled = seq[:]
        rng.shuffle(shuffled)
        report2 = run_consistency(sequence_oracle(shuffled), ITEM, n_runs=n)
        assert sorted(g.size for g in report2.groups) == sorted(
            g.size for g in report.groups
        )
        assert report2.systematic == report.systematic
        assert report2.failed_count == report.failed_count


def test_text_mode_is_stricter_than_canonical():
    reordered = (
        '@prefix x: <http://e.org/> .\nx:a x:q "2" ; x:p "1" .\n',
        '@prefix x: <http://e.org/> .\nx:a x:p "1" ; x:q "2" .\n',
    )

    def script(prompt, params, i):
        return reordered[i % 2]

    canonical = run_consistency(
        Oracle(ScriptedTransport(script)), ITEM, n_runs=4, equality_mode="canonical"
    )
    text = run_consistency(
        Oracle(ScriptedTransport(script)), ITEM, n_runs=4, equality_mode="text"
    )
    assert len(canonical.groups) == 1 and canonical.largest_group.size == 4
    assert len(text.groups) == 2 and text.largest_group.size == 2


def test_transport_failure_carries_partial_report():
    def script(prompt, params, repeat_index):
        if repeat_index == 7:
            raise TransportError("HTTP 401")
        return letter_ttl("a")

    with pytest.raises(OracleUnavailable) as exc:
        run_consistency(Oracle(ScriptedTransport(script)), ITEM, n_runs=10)
    partial = exc.value.partial
    assert len(partial.runs) == 9
    assert partial.largest_group.size == 9


def test_representative_is_lowest_run_in_group():
    report = run_consistency(
        sequence_oracle(["b", "a", "a", "b"]), ITEM, n_runs=4
    )
    # both groups size 2; 'b' occurs first (run 0)
    assert select_representative(report) == 0


def test_k_identical_rest_distinct_brute_force():
    # k copies of one answer plus pairwise-distinct others: the largest
    # group is exactly k (or 2 when k <= 1 cannot dominate), and the run is
    # systematic iff k >= 2, for every placement with n <= 6
    distinct_pool = ["b", "c", "d", "e", "f"]
    for n in range(2, 7):
        for k in range(0, n + 1):
            if n - k > len(distinct_pool):
                continue
            seq = ["a"] * k + distinct_pool[: n - k]
            report = run_consistency(sequence_oracle(seq), ITEM, n_runs=n)
            expected_largest = max(k, 1) if seq else 0
            assert report.largest_group.size == max(
                [g.size for g in report.groups]
            ) == expected_largest
            assert report.systematic == (k >= 2)
            assert report.failed_count == 0


# --- entailment --------------------------------------------------------------

DOC_TTL = (
    "@prefix rv: <http://e.org/rv#> .\n"
    'rv:SLTI rv:kind "instruction" .\n'
    'rv:SLTIU rv:kind "instruction" .\n'
    'rv:Immediate rv:bits "12" .\n'
    'rv:Register rv:kind "storage" .\n'
)


def fact_oracle(no_subjects=(), odd_subjects=()) -> Oracle:
    """Sentence prompts echo the fact's subject; entailment prompts answer
    No for listed subjects, gibberish for odd ones, Yes otherwise."""

    def script(prompt, params, repeat_index):
        if prompt.startswith("Convert the rdf block"):
            subject = re.search(r"rv:(\w+)", prompt).group(1)
            return f"The block describes {subject}."
        subject = re.search(r"The block describes (\w+)\.", prompt).group(1)
        if subject in no_subjects:
            return f"No. The paragraph never mentions {subject}."
        if subject in odd_subjects:
            return "Hard to say without more context."
        return "Yes, that follows from the paragraph."

    return Oracle(ScriptedTransport(script))


def test_all_pass_scores_one():
    doc = parse_ttl(DOC_TTL)
    report = run_entailment(fact_oracle(), ITEM, [], doc)
    assert len(report.facts) == 4
    assert report.raw_score == report.final_score == 1
    assert report.complete


def test_three_of_four_pass_then_bypass():
    doc = parse_ttl(DOC_TTL)
    report = run_entailment(fact_oracle(no_subjects={"Immediate"}), ITEM, [], doc)
    assert report.raw_score == Fraction(3, 4)
    assert report.final_score == Fraction(3, 4)
    failing = next(f for f in report.facts if f.status == FactStatus.FAIL)
    updated = bypass(report, failing.fact_ordinal, BypassCategory.AUXILIARY_ENTITY)
    assert updated.raw_score == Fraction(3, 4)
    assert updated.final_score == 1
    assert updated.complete


def test_indeterminate_routes_to_review_not_fail():
    doc = parse_ttl(DOC_TTL)
    report = run_entailment(fact_oracle(odd_subjects={"Register"}), ITEM, [], doc)
    odd = next(f for f in report.facts if f.verdict == Verdict.INDETERMINATE)
    assert odd.status == FactStatus.INDETERMINATE
    assert report.raw_score == Fraction(3, 4)
    updated = bypass(
        report, odd.fact_ordinal, BypassCategory.OTHER, note="unclear wording"
    )
    assert updated.final_score == 1


def test_bypass_of_pass_rejected():
    doc = parse_ttl(DOC_TTL)
    report = run_entailment(fact_oracle(), ITEM, [], doc)
    with pytest.raises(InvalidTransition):
        bypass(report, 1, BypassCategory.AUXILIARY_ENTITY)


def test_bypass_other_requires_note():
    doc = parse_ttl(DOC_TTL)
    report = run_entailment(fact_oracle(no_subjects={"SLTI"}), ITEM, [], doc)
    with pytest.raises(ValueError):
        bypass(report, 1, BypassCategory.OTHER, note="  ")


def test_bypass_unknown_ordinal():
    doc = parse_ttl(DOC_TTL)
    report = run_entailment(fact_oracle(), ITEM, [], doc)
    with pytest.raises(KeyError):
        bypass(report, 99, BypassCategory.AUXILIARY_ENTITY)


def test_five_fact_recount_after_bypass():
    facts = tuple(
        FactCheck(
            fact_ordinal=i,
            sentence_text=f"s{i}",
            verdict=Verdict.NO if i <= 2 else Verdict.YES,
            status=FactStatus.FAIL if i <= 2 else FactStatus.PASS,
        )
        for i in range(1, 6)
    )
    report = EntailmentReport(rdf_digest="d", facts=facts)
    assert report.raw_score == Fraction(3, 5)
    once = bypass(report, 1, BypassCategory.NAMESPACE_SCOPING)
    assert once.final_score == Fraction(4, 5)
    twice = bypass(once, 2, BypassCategory.CROSS_NAMESPACE)
    assert twice.final_score == 1
    assert twice.raw_score == Fraction(3, 5)


def test_entailment_transport_failure_partial():
    calls = {"n": 0}

    def script(prompt, params, repeat_index):
        calls["n"] += 1
        if calls["n"] > 4:  # two facts finish (2 calls each)
            raise TransportError("gone")
        if prompt.startswith("Convert"):
            return "A sentence."
        return "Yes."

    doc = parse_ttl(DOC_TTL)
    with pytest.raises(OracleUnavailable) as exc:
        run_entailment(Oracle(ScriptedTransport(script)), ITEM, [], doc)
    assert len(exc.value.partial.facts) == 2


def test_fact_transcripts_recorded():
    doc = parse_ttl(DOC_TTL)
    report = run_entailment(fact_oracle(), ITEM, [], doc)
    for check in report.facts:
        assert check.sentence_transcript.prompt_kind == "fact_to_sentence"
        assert check.verdict_transcript.prompt_kind in (
            "entailment_no_bf", "entailment_with_bf",
        )


def test_group_outcomes_empty_input():
    report = group_outcomes([], "canonical", 10)
    assert report.systematic is False
    assert report.failed_count == 0
