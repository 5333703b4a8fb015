"""The twin in-memory dictionaries and their mutation lifecycle.

A :class:`Lexicon` holds two tables keyed by normalized headword, one
per translation direction. English-side mutations keep the Sindhi side
synchronized through the crosslink operations; every mutation returns a
:class:`~lughat.records.ChangeSet` describing its net effect.
"""

from __future__ import annotations

from bisect import bisect_left
from collections.abc import MutableMapping

from . import crosslink, textops
from .errors import NotFoundError, RepertoireViolationError
from .records import (
    DERIVED,
    E2S,
    MANUAL,
    ChangeSet,
    ChangeTracker,
    EntryRecord,
    check_kind,
    clean_record,
    key_side,
    normalize_key,
)


class SortedAssocTable(MutableMapping):
    """Association list kept sorted by key.

    Reference backing used to show the engine's behavior does not
    depend on hash-table iteration order; only lookup speed may differ.
    """

    def __init__(self):
        self._keys: list[str] = []
        self._values: list[EntryRecord] = []

    def __getitem__(self, key):
        i = bisect_left(self._keys, key)
        if i < len(self._keys) and self._keys[i] == key:
            return self._values[i]
        raise KeyError(key)

    def __setitem__(self, key, value):
        i = bisect_left(self._keys, key)
        if i < len(self._keys) and self._keys[i] == key:
            self._values[i] = value
        else:
            self._keys.insert(i, key)
            self._values.insert(i, value)

    def __delitem__(self, key):
        i = bisect_left(self._keys, key)
        if i < len(self._keys) and self._keys[i] == key:
            del self._keys[i]
            del self._values[i]
        else:
            raise KeyError(key)

    def __iter__(self):
        return iter(list(self._keys))

    def __len__(self):
        return len(self._keys)


class Lexicon:
    """Twin dictionaries plus the script repertoire they validate against.

    Single-writer, multiple-reader: callers serialize mutations.
    ``dirty`` is True only while a mutation is in flight; the crosslink
    invariants hold whenever it is False.
    """

    def __init__(self, repertoire=None, table_factory=None):
        self.repertoire = repertoire if repertoire is not None else textops.load_repertoire()
        factory = table_factory or dict
        self.e2s = factory()
        self.s2e = factory()
        self.dirty = False
        self.repair_report: ChangeSet | None = None

    def table_for(self, kind: str):
        return self.e2s if check_kind(kind) == E2S else self.s2e

    # -- mutations ---------------------------------------------------

    def put(self, kind: str, record: EntryRecord, session_tag: str = "") -> ChangeSet:
        """Insert or replace the record keyed by its headword.

        English-side puts re-derive the Sindhi reverse entries; Sindhi-
        side puts are manual edits that keep their derived links alive.
        Raises EmptyKeyError or RepertoireViolationError before any
        state is touched.
        """
        side = key_side(kind)
        rec = clean_record(record)
        key = normalize_key(rec.headword, side)
        self._check_sindhi_fields(rec, side)

        table = self.table_for(kind)
        old = table.get(key)
        rec.provenance = MANUAL
        rec.revision = old.revision if old is not None else 1
        if kind == E2S:
            rec.derived_from = []
        else:
            rec.derived_from = list(old.derived_from) if old is not None else []
            self._reappend_source_glosses(rec)

        self.dirty = True
        tracker = ChangeTracker(self)
        tracker.touch(kind, key)
        table[key] = rec
        if kind == E2S:
            crosslink.reconcile(self, old, rec, tracker=tracker)
        cs = tracker.finalize(force_bump={(kind, key)}, session_tag=session_tag)
        self.dirty = False
        return cs

    def delete(self, kind: str, raw_word: str, session_tag: str = "") -> ChangeSet:
        """Remove the entry under the given word.

        Deleting an English entry retracts its derived reverse entries.
        Deleting a Sindhi entry that live English records still point at
        demotes it back to a purely derived record instead of breaking
        the reverse index.
        """
        side = key_side(kind)
        key = normalize_key(raw_word, side)
        table = self.table_for(kind)
        old = table.get(key)
        if old is None:
            raise NotFoundError(f"no {kind} entry for {raw_word!r}")

        self.dirty = True
        tracker = ChangeTracker(self)
        tracker.touch(kind, key)
        del table[key]
        if kind == E2S:
            crosslink.retract(self, key, tracker=tracker)
        else:
            live = [k for k in old.derived_from if k in self.e2s]
            if live:
                sources = [self.e2s[k] for k in live]
                table[key] = EntryRecord(
                    headword=old.headword,
                    grammar=sources[0].grammar,
                    english_glosses=[s.headword for s in sources],
                    provenance=DERIVED,
                    derived_from=list(live),
                    revision=old.revision,
                )
        cs = tracker.finalize(session_tag=session_tag)
        self.dirty = False
        return cs

    # -- queries -----------------------------------------------------

    def get(self, kind: str, raw_word: str) -> EntryRecord | None:
        side = key_side(kind)
        key = textops.normalize_text(raw_word, textops.KEY, side)
        if not key:
            return None
        return self.table_for(kind).get(key)

    def list_words(self, kind: str, prefix: str = "", offset: int = 0, limit: int = 50):
        """Collation-ordered page of (headword, provenance) pairs."""
        if limit <= 0:
            raise ValueError("limit must be positive")
        if offset < 0:
            raise ValueError("offset must be non-negative")
        keys = self._matching_keys(kind, prefix)
        table = self.table_for(kind)
        page = keys[offset : offset + limit]
        return [(table[k].headword, table[k].provenance) for k in page]

    def count_words(self, kind: str, prefix: str = "") -> int:
        return len(self._matching_keys(kind, prefix))

    def stats(self) -> dict:
        return {
            "entries_e2s": len(self.e2s),
            "entries_s2e": len(self.s2e),
            "repertoire_version": self.repertoire.version,
        }

    # -- helpers -----------------------------------------------------

    def _matching_keys(self, kind: str, prefix: str) -> list[str]:
        side = key_side(kind)
        want = textops.normalize_text(prefix, textops.KEY, side)
        table = self.table_for(kind)
        keys = [k for k in table if k.startswith(want)]
        keys.sort(key=lambda k: textops.collation_key(k, side, self.repertoire))
        return keys

    def _check_sindhi_fields(self, rec: EntryRecord, side: str) -> None:
        if side == textops.SINDHI:
            report = textops.validate_repertoire(rec.headword, self.repertoire)
            if report:
                raise RepertoireViolationError("headword", report)
        for i, gloss in enumerate(rec.sindhi_glosses):
            report = textops.validate_repertoire(gloss, self.repertoire)
            if report:
                raise RepertoireViolationError(f"sindhi_glosses[{i}]", report)

    def _reappend_source_glosses(self, rec: EntryRecord) -> None:
        # manual edits win on their own fields, but glosses backing live
        # derived links are not allowed to vanish
        present = {crosslink.english_fold(g) for g in rec.english_glosses}
        for src_key in rec.derived_from:
            src = self.e2s.get(src_key)
            if src is not None and src_key not in present:
                rec.english_glosses.append(src.headword)
                present.add(src_key)
