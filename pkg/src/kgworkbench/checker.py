"""The simple checker: syntactic, consistency, and entailment checks.

Consistency: issue the same construction prompt N times, exclude runs that
fail the syntactic check, and partition the rest into groups of exactly
equal answers. Producing at least two identical answers is the systematic
behavior the oracle must demonstrate; the largest group supplies the
representative answer for the entailment check.

Entailment: for each Fact of the representative document, ask the oracle to
turn the block into a sentence, then ask whether the paragraph (and any
background facts) logically entails that sentence. The entailment score is
passing Facts over total Facts; the human verifier may bypass individual
failures (auxiliary entities and namespace artifacts are the usual
reasons), which count toward the final score but never the raw score.

Consistency says nothing about answer quality, and the two checks are kept
independent: consistency only ever selects the representative.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

from .corpus import TextItem
from .oracle.client import Oracle, OracleTranscript
from .oracle.extract import Verdict, extract_rdf, parse_entailment_verdict
from .oracle.prompts import (
    build_entailment_prompt,
    build_fact_sentence_prompt,
    build_kgc_prompt,
)
from .rdf.canonical import canonicalize, text_digest
from .rdf.model import RdfDocument
from .rdf.parser import TurtleSyntaxError, parse_ttl


class CheckerError(Exception):
    pass


class NotSystematic(CheckerError):
    """No equality group of size >= 2 to pick a representative from."""


class InvalidTransition(CheckerError):
    """Bypass applied to a fact that is not fail/indeterminate."""


class OracleUnavailable(CheckerError):
    """Transport gave out mid-check; carries whatever completed."""

    def __init__(self, cause: Exception, partial):
        super().__init__(f"oracle unavailable: {cause}")
        self.cause = cause
        self.partial = partial


# --- consistency ------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class RunOutcome:
    run_index: int
    transcript: OracleTranscript
    extracted_ttl: str
    digest: str | None          # equality digest; None on syntax failure
    error: str | None = None    # syntax error message when failed
    subject_entities: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.digest is not None


@dataclass(frozen=True, slots=True)
class ConsistencyGroup:
    digest: str
    run_indices: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.run_indices)


@dataclass(frozen=True, slots=True)
class ConsistencyReport:
    runs: tuple[RunOutcome, ...]
    groups: tuple[ConsistencyGroup, ...]
    largest_group: ConsistencyGroup | None
    failed_count: int
    systematic: bool
    equality_mode: str
    n_runs: int


def _outcome(run_index: int, transcript: OracleTranscript, equality_mode: str) -> RunOutcome:
    ttl = extract_rdf(transcript.response_text)
    try:
        doc = parse_ttl(ttl)
    except TurtleSyntaxError as exc:
        return RunOutcome(
            run_index=run_index,
            transcript=transcript,
            extracted_ttl=ttl,
            digest=None,
            error=str(exc),
        )
    digest = text_digest(ttl) if equality_mode == "text" else canonicalize(doc).digest
    subjects = tuple(sorted({f.subject.expanded for f in doc.facts}))
    return RunOutcome(
        run_index=run_index,
        transcript=transcript,
        extracted_ttl=ttl,
        digest=digest,
        subject_entities=subjects,
    )


def group_outcomes(
    outcomes: list[RunOutcome], equality_mode: str, n_runs: int
) -> ConsistencyReport:
    groups_by_digest: dict[str, list[int]] = {}
    for outcome in sorted(outcomes, key=lambda o: o.run_index):
        if outcome.ok:
            groups_by_digest.setdefault(outcome.digest, []).append(outcome.run_index)
    groups = tuple(
        ConsistencyGroup(digest=d, run_indices=tuple(idx))
        for d, idx in groups_by_digest.items()
    )
    # largest group wins; equal sizes go to the earliest first occurrence
    largest = min(
        groups, key=lambda g: (-g.size, g.run_indices[0]), default=None
    )
    return ConsistencyReport(
        runs=tuple(sorted(outcomes, key=lambda o: o.run_index)),
        groups=groups,
        largest_group=largest,
        failed_count=sum(1 for o in outcomes if not o.ok),
        systematic=largest is not None and largest.size >= 2,
        equality_mode=equality_mode,
        n_runs=n_runs,
    )


def run_consistency(
    oracle: Oracle,
    item: TextItem,
    bfs: list = (),
    n_runs: int = 10,
    equality_mode: str = "canonical",
) -> ConsistencyReport:
    """Issue the identical construction prompt n_runs times and group.

    Requests run concurrently up to the oracle's limit; each repeat is
    addressed by its run index so replay stays deterministic. A transport
    failure aborts the check and raises OracleUnavailable carrying the
    completed runs.
    """
    if n_runs < 2:
        raise ValueError("consistency needs at least 2 runs")
    if equality_mode not in ("canonical", "text"):
        raise ValueError(f"unknown equality mode {equality_mode!r}")
    prompt = build_kgc_prompt(item, bfs)
    outcomes: list[RunOutcome] = []
    failure: Exception | None = None
    with ThreadPoolExecutor(max_workers=oracle.max_concurrency) as pool:
        futures = {
            pool.submit(oracle.complete, prompt, i): i for i in range(n_runs)
        }
        for future, run_index in futures.items():
            try:
                transcript = future.result()
            except Exception as exc:  # transport failure after retries
                failure = failure or exc
                continue
            outcomes.append(_outcome(run_index, transcript, equality_mode))
    report = group_outcomes(outcomes, equality_mode, n_runs)
    if failure is not None:
        raise OracleUnavailable(failure, report)
    return report


def select_representative(report: ConsistencyReport) -> int:
    """Run index of the representative answer in the most consistent group."""
    if not report.systematic:
        raise NotSystematic("no group reached size 2")
    return min(report.largest_group.run_indices)


# --- entailment -------------------------------------------------------------


class FactStatus(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    BYPASSED = "bypassed"
    INDETERMINATE = "indeterminate"


class BypassCategory(enum.Enum):
    AUXILIARY_ENTITY = "auxiliary_entity"
    NAMESPACE_SCOPING = "namespace_scoping"
    CROSS_NAMESPACE = "cross_namespace"
    OTHER = "other"


@dataclass(frozen=True, slots=True)
class FactCheck:
    fact_ordinal: int
    sentence_text: str
    verdict: Verdict
    status: FactStatus
    rationale: str = ""
    bypass_category: BypassCategory | None = None
    bypass_note: str = ""
    sentence_transcript: OracleTranscript | None = None
    verdict_transcript: OracleTranscript | None = None


@dataclass(frozen=True, slots=True)
class EntailmentReport:
    rdf_digest: str
    facts: tuple[FactCheck, ...]

    def _count(self, status: FactStatus) -> int:
        return sum(1 for f in self.facts if f.status == status)

    @property
    def raw_score(self) -> Fraction:
        if not self.facts:
            return Fraction(0)
        return Fraction(self._count(FactStatus.PASS), len(self.facts))

    @property
    def final_score(self) -> Fraction:
        if not self.facts:
            return Fraction(0)
        passing = self._count(FactStatus.PASS) + self._count(FactStatus.BYPASSED)
        return Fraction(passing, len(self.facts))

    @property
    def complete(self) -> bool:
        return self.final_score == 1


_VERDICT_STATUS = {
    Verdict.YES: FactStatus.PASS,
    Verdict.NO: FactStatus.FAIL,
    Verdict.INDETERMINATE: FactStatus.INDETERMINATE,
}


def run_entailment(
    oracle: Oracle,
    item: TextItem,
    bfs: list,
    doc: RdfDocument,
    rdf_digest: str | None = None,
) -> EntailmentReport:
    """Per-Fact two-prompt check over a parsed document.

    Facts are checked individually and in order; a transport failure raises
    OracleUnavailable carrying the report over the facts finished so far.
    """
    digest = rdf_digest or canonicalize(doc).digest
    checks: list[FactCheck] = []
    for fact in doc.facts:
        try:
            sentence_tx = oracle.complete(build_fact_sentence_prompt(fact))
            sentence = sentence_tx.response_text.strip()
            verdict_tx = oracle.complete(
                build_entailment_prompt(item, bfs, sentence)
            )
        except Exception as exc:
            raise OracleUnavailable(
                exc, EntailmentReport(rdf_digest=digest, facts=tuple(checks))
            ) from exc
        verdict = parse_entailment_verdict(verdict_tx.response_text)
        checks.append(
            FactCheck(
                fact_ordinal=fact.ordinal,
                sentence_text=sentence,
                verdict=verdict.value,
                status=_VERDICT_STATUS[verdict.value],
                rationale=verdict.rationale_text,
                sentence_transcript=sentence_tx,
                verdict_transcript=verdict_tx,
            )
        )
    return EntailmentReport(rdf_digest=digest, facts=tuple(checks))


def bypass(
    report: EntailmentReport,
    fact_ordinal: int,
    category: BypassCategory,
    note: str = "",
) -> EntailmentReport:
    """Human override for one failing/indeterminate fact; returns a new report."""
    if category == BypassCategory.OTHER and not note.strip():
        raise ValueError("category 'other' requires a reviewer note")
    for i, check in enumerate(report.facts):
        if check.fact_ordinal != fact_ordinal:
            continue
        if check.status not in (FactStatus.FAIL, FactStatus.INDETERMINATE):
            raise InvalidTransition(
                f"fact {fact_ordinal} is {check.status.value}; only fail or "
                "indeterminate can be bypassed"
            )
        updated = replace(
            check,
            status=FactStatus.BYPASSED,
            bypass_category=category,
            bypass_note=note,
        )
        facts = report.facts[:i] + (updated,) + report.facts[i + 1 :]
        return EntailmentReport(rdf_digest=report.rdf_digest, facts=facts)
    raise KeyError(f"no fact with ordinal {fact_ordinal}")
