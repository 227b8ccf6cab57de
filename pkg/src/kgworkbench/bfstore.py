"""Accumulating store of human-authored background facts.

Background facts are one-sentence domain statements injected into prompts
to steer the oracle. They accumulate globally in authoring order; each
paragraph gets a versioned assignment of fact ids so any historical run
can be replayed with the exact list it used. Version 0 always means "no
background facts".
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .corpus import TextItem

# Advisory cap: beyond this many facts per paragraph a warning surfaces,
# since excess facts degrade result quality.
SOFT_ASSIGNMENT_CAP = 12


class BfError(Exception):
    pass


class DuplicateBf(BfError):
    pass


class UnknownBf(BfError):
    pass


class StaleAssignment(BfError):
    """Raised when a caller's base version lost a concurrent update race."""


@dataclass(frozen=True, slots=True)
class BackgroundFact:
    id: str
    text: str
    key_terms: tuple[str, ...]
    created_seq: int
    origin_item: str | None = None


@dataclass(frozen=True, slots=True)
class BfAssignment:
    item_id: str
    bf_ids: tuple[str, ...]
    version: int


def _normalize(text: str) -> str:
    return " ".join(text.split()).casefold()


def _term_pattern(term: str) -> re.Pattern:
    return re.compile(rf"(?<!\w){re.escape(term)}(?!\w)", re.IGNORECASE)


class BfStore:
    def __init__(self) -> None:
        self._facts: dict[str, BackgroundFact] = {}
        self._by_norm: dict[str, str] = {}
        # per item: full assignment history, last entry is current
        self._assignments: dict[str, list[BfAssignment]] = {}

    # --- facts -----------------------------------------------------------

    def add(
        self,
        text: str,
        key_terms: Iterable[str] = (),
        origin_item: str | None = None,
    ) -> BackgroundFact:
        if not text.strip():
            raise BfError("background fact text must be non-empty")
        norm = _normalize(text)
        if norm in self._by_norm:
            raise DuplicateBf(f"already stored as {self._by_norm[norm]}")
        seq = len(self._facts) + 1
        fact = BackgroundFact(
            id=f"bf-{seq}",
            text=" ".join(text.split()),
            key_terms=tuple(key_terms),
            created_seq=seq,
            origin_item=origin_item,
        )
        self._facts[fact.id] = fact
        self._by_norm[norm] = fact.id
        return fact

    def get(self, bf_id: str) -> BackgroundFact:
        try:
            return self._facts[bf_id]
        except KeyError:
            raise UnknownBf(bf_id) from None

    def all(self) -> list[BackgroundFact]:
        return sorted(self._facts.values(), key=lambda f: f.created_seq)

    def suggest(self, item: TextItem) -> list[BackgroundFact]:
        """Facts whose key terms occur in the paragraph, best match first.

        Suggestions only; assigning them is a human decision.
        """
        scored = []
        for fact in self.all():
            matches = sum(
                1 for term in fact.key_terms if _term_pattern(term).search(item.text)
            )
            if matches:
                scored.append((-matches, fact.created_seq, fact))
        return [fact for _, _, fact in sorted(scored, key=lambda t: t[:2])]

    # --- assignments -------------------------------------------------------

    def assign(
        self,
        item_id: str,
        bf_ids: Iterable[str],
        base_version: int | None = None,
    ) -> BfAssignment:
        ids = tuple(bf_ids)
        if len(set(ids)) != len(ids):
            raise BfError("assignment contains duplicate fact ids")
        for bf_id in ids:
            self.get(bf_id)
        history = self._assignments.setdefault(item_id, [])
        current = history[-1].version if history else 0
        if base_version is not None and base_version != current:
            raise StaleAssignment(
                f"assignment for {item_id} is at version {current}, "
                f"not {base_version}"
            )
        assignment = BfAssignment(item_id=item_id, bf_ids=ids, version=current + 1)
        history.append(assignment)
        return assignment

    def assignment(self, item_id: str, version: int | None = None) -> BfAssignment:
        """Current assignment, or a specific historical version.

        Version 0 is the implicit empty assignment every item starts with.
        """
        history = self._assignments.get(item_id, [])
        if version == 0 or (version is None and not history):
            return BfAssignment(item_id=item_id, bf_ids=(), version=0)
        if version is None:
            return history[-1]
        for assignment in history:
            if assignment.version == version:
                return assignment
        raise BfError(f"no assignment version {version} for {item_id}")

    def facts_for(self, assignment: BfAssignment) -> list[BackgroundFact]:
        return [self.get(bf_id) for bf_id in assignment.bf_ids]

    def render_block(self, assignment: BfAssignment) -> str:
        """Prompt fragment: one fact per line in assignment order."""
        return "\n".join(f.text for f in self.facts_for(assignment))

    def warnings_for(self, item: TextItem, bf_ids: Iterable[str]) -> list[str]:
        """Advisory flags for an assignment; never blocking.

        A two-term fact whose both terms already co-occur in the paragraph
        restates a relation the paragraph makes itself; superimposing it
        can derail the construction. Oversized assignments are also
        flagged.
        """
        ids = list(bf_ids)
        warnings = []
        if len(ids) > SOFT_ASSIGNMENT_CAP:
            warnings.append(
                f"{len(ids)} facts assigned; more than {SOFT_ASSIGNMENT_CAP} "
                "is usually counterproductive"
            )
        for bf_id in ids:
            fact = self.get(bf_id)
            if len(fact.key_terms) == 2 and all(
                _term_pattern(t).search(item.text) for t in fact.key_terms
            ):
                warnings.append(
                    f"{bf_id} relates {fact.key_terms[0]!r} and "
                    f"{fact.key_terms[1]!r}, which the paragraph already "
                    "relates itself"
                )
        return warnings

    # --- persistence -------------------------------------------------------

    def export_facts(self) -> list[dict]:
        """Interchange form: a JSON array ordered by created_seq."""
        return [
            {
                "id": f.id,
                "text": f.text,
                "key_terms": list(f.key_terms),
                "created_seq": f.created_seq,
                "origin_item": f.origin_item,
            }
            for f in self.all()
        ]

    def import_facts(self, records: Iterable[dict]) -> list[BackgroundFact]:
        """Load facts from the interchange array, skipping duplicates.

        Incoming ids and sequence numbers are reassigned to continue this
        store's own accumulation order.
        """
        imported = []
        for rec in records:
            try:
                imported.append(
                    self.add(
                        rec["text"],
                        rec.get("key_terms", []),
                        rec.get("origin_item"),
                    )
                )
            except DuplicateBf:
                continue
        return imported

    def to_json(self) -> dict:
        return {
            "facts": self.export_facts(),
            "assignments": {
                item_id: [
                    {"bf_ids": list(a.bf_ids), "version": a.version}
                    for a in history
                ]
                for item_id, history in sorted(self._assignments.items())
            },
        }

    @classmethod
    def from_json(cls, payload: dict) -> "BfStore":
        store = cls()
        for rec in payload.get("facts", []):
            fact = BackgroundFact(
                id=rec["id"],
                text=rec["text"],
                key_terms=tuple(rec.get("key_terms", [])),
                created_seq=rec["created_seq"],
                origin_item=rec.get("origin_item"),
            )
            store._facts[fact.id] = fact
            store._by_norm[_normalize(fact.text)] = fact.id
        for item_id, history in payload.get("assignments", {}).items():
            store._assignments[item_id] = [
                BfAssignment(
                    item_id=item_id,
                    bf_ids=tuple(rec["bf_ids"]),
                    version=rec["version"],
                )
                for rec in history
            ]
        return store
