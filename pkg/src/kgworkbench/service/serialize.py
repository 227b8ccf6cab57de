"""JSON (de)serialization for checker reports and run records.

Scores serialize as exact fraction strings ("3/4") alongside a float for
display; clients must echo the strings rather than recompute.
"""

from __future__ import annotations

from fractions import Fraction

from ..checker import (
    BypassCategory,
    ConsistencyGroup,
    ConsistencyReport,
    EntailmentReport,
    FactCheck,
    FactStatus,
    RunOutcome,
)
from ..oracle.client import OracleTranscript
from ..oracle.extract import Verdict


def fraction_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(
        value.numerator
    )


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def consistency_to_json(report: ConsistencyReport) -> dict:
    return {
        "n_runs": report.n_runs,
        "equality_mode": report.equality_mode,
        "failed_count": report.failed_count,
        "systematic": report.systematic,
        "largest_group": (
            None
            if report.largest_group is None
            else {
                "digest": report.largest_group.digest,
                "run_indices": list(report.largest_group.run_indices),
                "size": report.largest_group.size,
            }
        ),
        "groups": [
            {"digest": g.digest, "run_indices": list(g.run_indices), "size": g.size}
            for g in report.groups
        ],
        "runs": [
            {
                "run_index": r.run_index,
                "digest": r.digest,
                "error": r.error,
                "extracted_ttl": r.extracted_ttl,
                "subject_entities": list(r.subject_entities),
                "transcript": r.transcript.to_json(),
            }
            for r in report.runs
        ],
    }


def consistency_from_json(payload: dict) -> ConsistencyReport:
    runs = tuple(
        RunOutcome(
            run_index=r["run_index"],
            transcript=OracleTranscript.from_json(r["transcript"]),
            extracted_ttl=r["extracted_ttl"],
            digest=r["digest"],
            error=r.get("error"),
            subject_entities=tuple(r.get("subject_entities", [])),
        )
        for r in payload["runs"]
    )
    groups = tuple(
        ConsistencyGroup(digest=g["digest"], run_indices=tuple(g["run_indices"]))
        for g in payload["groups"]
    )
    largest = payload.get("largest_group")
    return ConsistencyReport(
        runs=runs,
        groups=groups,
        largest_group=(
            None
            if largest is None
            else ConsistencyGroup(
                digest=largest["digest"], run_indices=tuple(largest["run_indices"])
            )
        ),
        failed_count=payload["failed_count"],
        systematic=payload["systematic"],
        equality_mode=payload["equality_mode"],
        n_runs=payload["n_runs"],
    )


def _transcript_or_none(payload):
    return None if payload is None else OracleTranscript.from_json(payload)


def entailment_to_json(report: EntailmentReport) -> dict:
    counts = {
        "n_facts": len(report.facts),
        "n_pass": sum(1 for f in report.facts if f.status == FactStatus.PASS),
        "n_fail": sum(1 for f in report.facts if f.status == FactStatus.FAIL),
        "n_bypassed": sum(
            1 for f in report.facts if f.status == FactStatus.BYPASSED
        ),
        "n_indeterminate": sum(
            1 for f in report.facts if f.status == FactStatus.INDETERMINATE
        ),
    }
    return {
        "rdf_digest": report.rdf_digest,
        "raw_score": fraction_str(report.raw_score),
        "raw_score_value": float(report.raw_score),
        "final_score": fraction_str(report.final_score),
        "final_score_value": float(report.final_score),
        "summary": counts,
        "facts": [
            {
                "fact_ordinal": f.fact_ordinal,
                "sentence_text": f.sentence_text,
                "verdict": f.verdict.value,
                "status": f.status.value,
                "rationale": f.rationale,
                "bypass_category": (
                    None if f.bypass_category is None else f.bypass_category.value
                ),
                "bypass_note": f.bypass_note,
                "sentence_transcript": (
                    None
                    if f.sentence_transcript is None
                    else f.sentence_transcript.to_json()
                ),
                "verdict_transcript": (
                    None
                    if f.verdict_transcript is None
                    else f.verdict_transcript.to_json()
                ),
            }
            for f in report.facts
        ],
    }


def entailment_from_json(payload: dict) -> EntailmentReport:
    facts = tuple(
        FactCheck(
            fact_ordinal=f["fact_ordinal"],
            sentence_text=f["sentence_text"],
            verdict=Verdict(f["verdict"]),
            status=FactStatus(f["status"]),
            rationale=f.get("rationale", ""),
            bypass_category=(
                None
                if f.get("bypass_category") is None
                else BypassCategory(f["bypass_category"])
            ),
            bypass_note=f.get("bypass_note", ""),
            sentence_transcript=_transcript_or_none(f.get("sentence_transcript")),
            verdict_transcript=_transcript_or_none(f.get("verdict_transcript")),
        )
        for f in payload["facts"]
    )
    return EntailmentReport(rdf_digest=payload["rdf_digest"], facts=facts)
