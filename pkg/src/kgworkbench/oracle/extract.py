"""Pull structure out of free-form oracle responses."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from ..rdf.parser import TurtleSyntaxError, parse_ttl

_FENCE_RE = re.compile(r"```[ \t]*[\w+-]*[ \t]*\n(.*?)```", re.DOTALL)
_SENTENCE_END_RE = re.compile(r"(?<=[.!?:])\s")

_YES_TOKENS = {"yes", "yeah", "yep", "affirmative", "correct", "true"}
_NO_TOKENS = {"no", "nope", "negative", "false", "incorrect"}


def _parses(text: str) -> bool:
    try:
        return bool(parse_ttl(text).facts)
    except TurtleSyntaxError:
        return False


def extract_rdf(response_text: str) -> str:
    """Strip prose and code fences around the Turtle payload.

    Returns the largest contiguous region that parses as Turtle; when
    nothing parses the text comes back unchanged so the syntactic check
    downstream fails it, which is the correct signal.
    """
    fenced = _FENCE_RE.findall(response_text)
    for block in sorted(fenced, key=len, reverse=True):
        if _parses(block):
            return block
    if _parses(response_text):
        return response_text
    # blank-line blocks; scan contiguous spans, largest first
    blocks = [b for b in re.split(r"\n[ \t]*\n", response_text) if b.strip()]
    spans = [
        "\n\n".join(blocks[i:j])
        for i in range(len(blocks))
        for j in range(i + 1, len(blocks) + 1)
    ]
    for span in sorted(spans, key=len, reverse=True):
        if _parses(span):
            return span
    return response_text


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True, slots=True)
class EntailmentVerdict:
    value: Verdict
    rationale_text: str


def parse_entailment_verdict(response_text: str) -> EntailmentVerdict:
    """Shallow verdict extraction from the leading token of the response.

    Anything without a recognizable yes/no opener is Indeterminate and
    routes to the human verifier rather than being guessed at.
    """
    stripped = response_text.strip()
    first_sentence = _SENTENCE_END_RE.split(stripped, maxsplit=1)[0] if stripped else ""
    rationale = first_sentence[:240] or stripped[:240]
    lead = re.match(r"\W*(\w+)", first_sentence)
    value = Verdict.INDETERMINATE
    if lead:
        token = lead.group(1).lower()
        if token in _YES_TOKENS:
            value = Verdict.YES
        elif token in _NO_TOKENS:
            value = Verdict.NO
    return EntailmentVerdict(value=value, rationale_text=rationale)
