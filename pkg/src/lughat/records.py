"""Dictionary records and the bookkeeping of one mutation."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from . import textops
from .errors import EmptyKeyError

# Dictionary kinds
E2S = "e2s"  # English headwords, Sindhi meanings
S2E = "s2e"  # Sindhi headwords, English meanings
KINDS = (E2S, S2E)

# Record provenance
MANUAL = "manual"
DERIVED = "derived"

_KEY_SIDE = {E2S: textops.ENGLISH, S2E: textops.SINDHI}


def check_kind(kind: str) -> str:
    if kind not in KINDS:
        raise ValueError(f"unknown dictionary kind {kind!r}")
    return kind


def key_side(kind: str) -> str:
    """The text side that keys the given dictionary."""
    return _KEY_SIDE[check_kind(kind)]


def normalize_key(raw: str, side: str) -> str:
    """Key-normalize a headword, raising if nothing usable remains."""
    key = textops.normalize_text(raw, textops.KEY, side)
    if not key:
        raise EmptyKeyError(f"headword {raw!r} normalizes to an empty key")
    return key


@dataclass
class EntryRecord:
    """One dictionary record.

    ``headword`` through ``english_glosses`` are the classic five
    lexicographic fields; ``provenance``, ``derived_from`` and
    ``revision`` carry the reverse-index bookkeeping. All text is
    stored display-normalized (NFC, trimmed, single spaces).
    ``derived_from`` holds the key-normalized English headwords this
    record was generated from, kept sorted for determinism.
    """

    headword: str
    pronunciation: str = ""
    grammar: str = ""
    sindhi_glosses: list[str] = field(default_factory=list)
    english_glosses: list[str] = field(default_factory=list)
    provenance: str = MANUAL
    derived_from: list[str] = field(default_factory=list)
    revision: int = 1

    def copy(self) -> "EntryRecord":
        return replace(
            self,
            sindhi_glosses=list(self.sindhi_glosses),
            english_glosses=list(self.english_glosses),
            derived_from=list(self.derived_from),
        )


def clean_record(record: EntryRecord) -> EntryRecord:
    """Display-normalize all fields and tidy the gloss lists.

    Glosses are normalized individually; empties are dropped and exact
    duplicates removed keeping the first occurrence. Does not validate
    the repertoire; the store does that with field context.
    """

    def _glosses(items: list[str]) -> list[str]:
        out: list[str] = []
        for g in items:
            norm = textops.normalize_text(g, textops.DISPLAY, textops.SINDHI)
            if norm and norm not in out:
                out.append(norm)
        return out

    disp = lambda s: textops.normalize_text(s, textops.DISPLAY, textops.SINDHI)
    return replace(
        record,
        headword=disp(record.headword),
        pronunciation=disp(record.pronunciation),
        grammar=disp(record.grammar),
        sindhi_glosses=_glosses(record.sindhi_glosses),
        english_glosses=_glosses(record.english_glosses),
        derived_from=sorted(set(record.derived_from)),
    )


@dataclass
class ChangeSet:
    """Net effect of one mutation on both dictionaries.

    Each list holds ``(kind, key, record snapshot)`` triples; deleted
    snapshots show the state the entry had before removal. A key
    appears at most once per list and never in both created and
    deleted.
    """

    created: list[tuple[str, str, EntryRecord]] = field(default_factory=list)
    updated: list[tuple[str, str, EntryRecord]] = field(default_factory=list)
    deleted: list[tuple[str, str, EntryRecord]] = field(default_factory=list)
    session_tag: str = ""

    def is_empty(self) -> bool:
        return not (self.created or self.updated or self.deleted)

    def merge(self, other: "ChangeSet") -> "ChangeSet":
        """Fold a later ChangeSet into this one, key by key.

        A key created earlier and updated later stays created (with the
        final snapshot), created-then-deleted cancels out, deleted-
        then-recreated becomes an update.
        """
        return ChangeSet.merge_all([self, other])

    @staticmethod
    def merge_all(changesets) -> "ChangeSet":
        """One-pass fold of an ordered sequence of ChangeSets."""
        state: dict[tuple[str, str], tuple[str, EntryRecord]] = {}
        session_tag = ""
        for cs in changesets:
            session_tag = session_tag or cs.session_tag
            for verb in ("created", "updated", "deleted"):
                for kind, key, rec in getattr(cs, verb):
                    slot = (kind, key)
                    prior = state.get(slot)
                    if prior is None:
                        state[slot] = (verb, rec)
                    elif verb == "deleted" and prior[0] == "created":
                        state[slot] = ("dropped", rec)
                    elif verb == "created" and prior[0] == "deleted":
                        state[slot] = ("updated", rec)
                    elif prior[0] == "created":
                        state[slot] = ("created", rec)
                    else:
                        state[slot] = (verb, rec)
        merged = ChangeSet(session_tag=session_tag)
        for (kind, key), (verb, rec) in state.items():
            if verb != "dropped":
                getattr(merged, verb).append((kind, key, rec))
        return merged


def _content_equal(a: EntryRecord, b: EntryRecord) -> bool:
    return replace(a, revision=0) == replace(b, revision=0)


class ChangeTracker:
    """Collects before-snapshots of touched entries and diffs at the end.

    Mutations call :meth:`touch` before writing a key and leave revision
    numbers alone; :meth:`finalize` settles them against the snapshots.
    A touched entry whose content ends up unchanged gets its old
    revision back and drops out of the ChangeSet, so a retract-then-
    derive of the same key nets out to nothing. ``force_bump`` marks
    slots that must count as an edit even without a content change
    (a straight re-put of an identical record).
    """

    def __init__(self, lexicon):
        self._lex = lexicon
        self._pre: dict[tuple[str, str], EntryRecord | None] = {}

    def touch(self, kind: str, key: str) -> None:
        slot = (kind, key)
        if slot not in self._pre:
            current = self._lex.table_for(kind).get(key)
            self._pre[slot] = current.copy() if current is not None else None

    def finalize(self, force_bump=frozenset(), session_tag: str = "") -> ChangeSet:
        cs = ChangeSet(session_tag=session_tag)
        for (kind, key), before in self._pre.items():
            after = self._lex.table_for(kind).get(key)
            if before is None and after is not None:
                cs.created.append((kind, key, after.copy()))
            elif before is not None and after is None:
                cs.deleted.append((kind, key, before))
            elif before is not None and after is not None:
                if _content_equal(before, after) and (kind, key) not in force_bump:
                    after.revision = before.revision
                    continue
                after.revision = before.revision + 1
                cs.updated.append((kind, key, after.copy()))
        return cs
