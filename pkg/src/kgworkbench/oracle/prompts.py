"""Prompt construction from versioned template resources.

Prompt wording is an experimental variable, so the templates live as
editable text files under ``templates/<version>/`` and the version id is
baked into every request digest: editing a template under a new version
invalidates all cached responses.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from importlib import resources
from string import Template
from typing import Iterable

from ..corpus import TextItem

TEMPLATE_VERSION = "v1"


class PromptError(Exception):
    pass


class EmptyFact(PromptError):
    pass


class InactiveItem(PromptError):
    pass


class PromptKind(enum.Enum):
    KGC_NO_BF = "kgc_no_bf"
    KGC_WITH_BF = "kgc_with_bf"
    FACT_TO_SENTENCE = "fact_to_sentence"
    ENTAILMENT_NO_BF = "entailment_no_bf"
    ENTAILMENT_WITH_BF = "entailment_with_bf"


_WITH_BF_KINDS = {PromptKind.KGC_WITH_BF, PromptKind.ENTAILMENT_WITH_BF}


@dataclass(frozen=True, slots=True)
class RenderedPrompt:
    kind: PromptKind
    text: str
    template_version: str = TEMPLATE_VERSION


def load_template(kind: PromptKind, version: str = TEMPLATE_VERSION) -> Template:
    path = resources.files(__package__).joinpath("templates", version, kind.value + ".txt")
    return Template(path.read_text(encoding="utf-8"))


def _bf_texts(bfs: Iterable) -> list[str]:
    return [bf if isinstance(bf, str) else bf.text for bf in bfs]


def render_bf_lines(bfs: Iterable) -> str:
    return "\n".join(_bf_texts(bfs))


def _render(kind: PromptKind, version: str, **fields: str) -> RenderedPrompt:
    if kind in _WITH_BF_KINDS and not fields.get("background_facts"):
        raise PromptError(f"{kind.value} requires a non-empty background fact list")
    text = load_template(kind, version).substitute(**fields)
    return RenderedPrompt(kind=kind, text=text, template_version=version)


def build_kgc_prompt(
    item: TextItem,
    bfs: Iterable = (),
    kind: PromptKind | None = None,
    version: str = TEMPLATE_VERSION,
) -> RenderedPrompt:
    """KGC prompt for a paragraph; the with-facts form when facts are given."""
    if not item.is_active:
        raise InactiveItem(f"{item.id} is superseded")
    block = render_bf_lines(bfs)
    if kind is None:
        kind = PromptKind.KGC_WITH_BF if block else PromptKind.KGC_NO_BF
    if kind not in (PromptKind.KGC_NO_BF, PromptKind.KGC_WITH_BF):
        raise PromptError(f"{kind.value} is not a KGC prompt kind")
    if kind == PromptKind.KGC_NO_BF:
        return _render(kind, version, paragraph=item.text)
    return _render(kind, version, paragraph=item.text, background_facts=block)


def build_fact_sentence_prompt(fact, version: str = TEMPLATE_VERSION) -> RenderedPrompt:
    """Prompt converting one rdf block into a sentence; embeds it verbatim."""
    if not fact.triples:
        raise EmptyFact(f"fact {fact.ordinal} has no triples")
    block = fact.raw_block or "\n".join(t.n3() for t in fact.triples)
    return _render(PromptKind.FACT_TO_SENTENCE, version, fact_block=block)


def build_entailment_prompt(
    item: TextItem,
    bfs: Iterable,
    fact_sentence: str,
    version: str = TEMPLATE_VERSION,
) -> RenderedPrompt:
    """Entailment query: paragraph-only form, or paragraph-plus-facts form."""
    if not fact_sentence.strip():
        raise PromptError("fact sentence must be non-empty")
    block = render_bf_lines(bfs)
    if not block:
        return _render(
            PromptKind.ENTAILMENT_NO_BF,
            version,
            paragraph=item.text,
            fact_sentence=fact_sentence,
        )
    return _render(
        PromptKind.ENTAILMENT_WITH_BF,
        version,
        paragraph=item.text,
        background_facts=block,
        fact_sentence=fact_sentence,
    )
