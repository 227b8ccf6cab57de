"""Ordered corpus of specification paragraphs and the split workflow.

A document ingests into one text item per blank-line-separated paragraph.
The human verifier may split an item into sub-paragraphs; the parent is
kept as a superseded record (preserving any run history attached to it)
and the children take its position. Active items are renumbered densely
per chapter after every mutation, so `seq` always reflects current order
while `parent_id`/`split_index` preserve lineage for display (a child of
the original paragraph 10 renders as "P10(2)").
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, replace
from typing import Iterable


class CorpusError(Exception):
    pass


class EmptyDocument(CorpusError):
    pass


class ItemNotFound(CorpusError):
    pass


class AlreadySplit(CorpusError):
    pass


class PartitionMismatch(CorpusError):
    pass


class ItemStatus(enum.Enum):
    ACTIVE = "active"
    SUPERSEDED = "superseded"


@dataclass(frozen=True, slots=True)
class TextItem:
    id: str
    chapter: str
    seq: int
    text: str
    parent_id: str | None = None
    split_index: int | None = None
    status: ItemStatus = ItemStatus.ACTIVE

    def __post_init__(self) -> None:
        if (self.parent_id is None) != (self.split_index is None):
            raise ValueError("split children need both parent_id and split_index")

    @property
    def is_active(self) -> bool:
        return self.status == ItemStatus.ACTIVE

    def label(self, parent_seq: int | None = None) -> str:
        if self.split_index is not None and parent_seq is not None:
            return f"P{parent_seq}({self.split_index})"
        return f"P{self.seq}"


def split_paragraphs(document: str) -> list[str]:
    """Blank-line paragraph rule with leading/trailing whitespace trimmed."""
    parts = [p.strip() for p in re.split(r"\n\s*\n", document)]
    return [p for p in parts if p]


def _squash_ws(text: str) -> str:
    return "".join(text.split())


class Corpus:
    """Mutable item store; items themselves are immutable values."""

    def __init__(self) -> None:
        self._items: dict[str, TextItem] = {}
        # per chapter, item ids in display order (active and superseded;
        # superseded parents sit directly before their children)
        self._order: dict[str, list[str]] = {}
        self._counters: dict[str, int] = {}

    def _next_id(self, chapter: str) -> str:
        n = self._counters.get(chapter, 0) + 1
        self._counters[chapter] = n
        return f"{chapter}:{n:04d}"

    def ingest(self, document: str, chapter: str) -> list[TextItem]:
        paragraphs = split_paragraphs(document)
        if not paragraphs:
            raise EmptyDocument("document has no non-blank content")
        if chapter in self._order:
            raise CorpusError(f"chapter {chapter!r} already ingested")
        created = []
        order: list[str] = []
        for seq, text in enumerate(paragraphs, start=1):
            item = TextItem(id=self._next_id(chapter), chapter=chapter, seq=seq, text=text)
            self._items[item.id] = item
            order.append(item.id)
            created.append(item)
        self._order[chapter] = order
        return created

    def get(self, item_id: str) -> TextItem:
        try:
            return self._items[item_id]
        except KeyError:
            raise ItemNotFound(item_id) from None

    def chapters(self) -> list[str]:
        return list(self._order)

    def items(self, chapter: str | None = None) -> list[TextItem]:
        """All items (active and superseded) in display order."""
        chapters = [chapter] if chapter else self.chapters()
        return [self._items[i] for ch in chapters for i in self._order.get(ch, [])]

    def active_items(self, chapter: str | None = None) -> list[TextItem]:
        return [it for it in self.items(chapter) if it.is_active]

    def split_item(
        self, item_id: str, parts: list[str], partition: bool = False
    ) -> list[TextItem]:
        parent = self.get(item_id)
        if not parent.is_active:
            raise AlreadySplit(f"{item_id} is superseded")
        if len(parts) < 2:
            raise ValueError("a split needs at least 2 parts")
        cleaned = [p.strip() for p in parts]
        if any(not p for p in cleaned):
            raise ValueError("split parts must be non-blank")
        if partition and _squash_ws("".join(cleaned)) != _squash_ws(parent.text):
            raise PartitionMismatch(
                f"parts do not re-compose the text of {item_id}"
            )
        children = [
            TextItem(
                id=self._next_id(parent.chapter),
                chapter=parent.chapter,
                seq=parent.seq,  # renumbered below
                text=text,
                parent_id=parent.id,
                split_index=i,
            )
            for i, text in enumerate(cleaned, start=1)
        ]
        self._items[parent.id] = replace(parent, status=ItemStatus.SUPERSEDED)
        for child in children:
            self._items[child.id] = child
        order = self._order[parent.chapter]
        pos = order.index(parent.id)
        order[pos + 1 : pos + 1] = [c.id for c in children]
        self._renumber(parent.chapter)
        return [self._items[c.id] for c in children]

    def _renumber(self, chapter: str) -> None:
        seq = 0
        for item_id in self._order[chapter]:
            item = self._items[item_id]
            if item.is_active:
                seq += 1
                if item.seq != seq:
                    self._items[item_id] = replace(item, seq=seq)

    # --- persistence -----------------------------------------------------

    def chapter_to_json(self, chapter: str) -> list[dict]:
        return [
            {
                "id": it.id,
                "chapter": it.chapter,
                "seq": it.seq,
                "text": it.text,
                "parent_id": it.parent_id,
                "split_index": it.split_index,
                "status": it.status.value,
            }
            for it in self.items(chapter)
        ]

    def load_chapter(self, chapter: str, records: Iterable[dict]) -> None:
        if chapter in self._order:
            raise CorpusError(f"chapter {chapter!r} already loaded")
        order: list[str] = []
        top = 0
        for rec in records:
            item = TextItem(
                id=rec["id"],
                chapter=rec["chapter"],
                seq=rec["seq"],
                text=rec["text"],
                parent_id=rec.get("parent_id"),
                split_index=rec.get("split_index"),
                status=ItemStatus(rec.get("status", "active")),
            )
            self._items[item.id] = item
            order.append(item.id)
            suffix = item.id.rsplit(":", 1)[-1]
            if suffix.isdigit():
                top = max(top, int(suffix))
        self._order[chapter] = order
        self._counters[chapter] = top
