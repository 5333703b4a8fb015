"""Keeping the Sindhi-to-English dictionary derived from the English one.

Every English record's Sindhi meanings are tokenized into words; each
word must exist as a Sindhi headword whose English glosses include the
source headword. These operations create, extend, shrink and audit
those links so the two tables stay mutually consistent under every
put/edit/delete.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import textops
from .errors import RepertoireViolationError
from .records import (
    DERIVED,
    E2S,
    S2E,
    ChangeSet,
    ChangeTracker,
    EntryRecord,
    normalize_key,
)


def english_fold(text: str) -> str:
    """Key-fold an English gloss for membership and removal checks."""
    return textops.normalize_text(text, textops.KEY, textops.ENGLISH)


def _sindhi_key(text: str) -> str:
    return textops.normalize_text(text, textops.KEY, textops.SINDHI)


def _meaning_tokens(lex, source: EntryRecord) -> list[tuple[str, str]]:
    """Distinct (display, key) token pairs over all Sindhi glosses.

    Tokens that fold to an empty key (pure tatweel or harakat) cannot
    head an entry and are dropped. Raises RepertoireViolationError
    before any caller mutates state.
    """
    out: list[tuple[str, str]] = []
    seen: set[str] = set()
    for i, gloss in enumerate(source.sindhi_glosses):
        for tok in textops.tokenize_sindhi(gloss, lex.repertoire.delimiters):
            report = textops.validate_repertoire(tok.text, lex.repertoire)
            if report:
                raise RepertoireViolationError(f"sindhi_glosses[{i}]", report)
            key = _sindhi_key(tok.text)
            if key and key not in seen:
                seen.add(key)
                out.append((tok.text, key))
    return out


def derive(lex, source: EntryRecord, tracker: ChangeTracker | None = None) -> ChangeSet:
    """Materialize the reverse entries for one English record.

    New Sindhi headwords get a fresh derived record carrying the source
    grammar; existing ones (manual or derived) only gain the gloss and
    the back-link, all other fields untouched. Atomic: validation runs
    before the first write.
    """
    own = tracker is None
    if own:
        tracker = ChangeTracker(lex)
    source_key = normalize_key(source.headword, textops.ENGLISH)
    tokens = _meaning_tokens(lex, source)
    for display, key in tokens:
        tracker.touch(S2E, key)
        rec = lex.s2e.get(key)
        if rec is None:
            lex.s2e[key] = EntryRecord(
                headword=display,
                grammar=source.grammar,
                english_glosses=[source.headword],
                provenance=DERIVED,
                derived_from=[source_key],
                revision=1,
            )
            continue
        if source_key not in rec.derived_from:
            rec.derived_from = sorted(set(rec.derived_from) | {source_key})
        if not any(english_fold(g) == source_key for g in rec.english_glosses):
            rec.english_glosses.append(source.headword)
    return tracker.finalize() if own else ChangeSet()


def retract(lex, source_key: str, tracker: ChangeTracker | None = None) -> ChangeSet:
    """Withdraw one English record's contribution from the reverse table.

    Idempotent. Derived records left with no glosses disappear; manual
    records merely lose the gloss and the back-link.
    """
    own = tracker is None
    if own:
        tracker = ChangeTracker(lex)
    candidates = [k for k in lex.s2e if source_key in lex.s2e[k].derived_from]
    candidates.sort(key=lambda k: textops.collation_key(k, textops.SINDHI, lex.repertoire))
    for key in candidates:
        tracker.touch(S2E, key)
        rec = lex.s2e[key]
        rec.derived_from = [k for k in rec.derived_from if k != source_key]
        rec.english_glosses = [g for g in rec.english_glosses if english_fold(g) != source_key]
        if rec.provenance == DERIVED and not rec.english_glosses:
            del lex.s2e[key]
    return tracker.finalize() if own else ChangeSet()


def reconcile(
    lex,
    old: EntryRecord | None,
    new: EntryRecord,
    tracker: ChangeTracker | None = None,
) -> ChangeSet:
    """Replace one English record's reverse contribution with another's.

    Equivalent to retract(old) followed by derive(new), validated up
    front so the pair applies atomically.
    """
    own = tracker is None
    if own:
        tracker = ChangeTracker(lex)
    _meaning_tokens(lex, new)  # validate before touching anything
    if old is not None:
        retract(lex, normalize_key(old.headword, textops.ENGLISH), tracker=tracker)
    derive(lex, new, tracker=tracker)
    return tracker.finalize() if own else ChangeSet()


@dataclass(frozen=True)
class Violation:
    code: str
    kind: str
    key: str
    message: str

    def __str__(self):
        return f"[{self.code}] {self.kind}/{self.key}: {self.message}"


def check_consistency(lex) -> list[Violation]:
    """Full-scan audit of the derivation invariants.

    Checks that every Sindhi meaning token of every English record is
    present, linked and glossed in the reverse table, that back-links
    point at live English records, and that no derived record sits
    empty. Returns all violations; an empty list means consistent.
    """
    violations: list[Violation] = []
    rep = lex.repertoire
    for e_key in sorted(lex.e2s):
        rec = lex.e2s[e_key]
        fold = english_fold(rec.headword)
        for display, s_key in _tokens_lenient(lex, rec):
            reverse = lex.s2e.get(s_key)
            if reverse is None:
                violations.append(
                    Violation("missing-reverse-entry", E2S, e_key, f"token {display!r} has no reverse entry")
                )
                continue
            if not any(english_fold(g) == fold for g in reverse.english_glosses):
                violations.append(
                    Violation("missing-reverse-gloss", S2E, s_key, f"gloss for {e_key!r} missing")
                )
            if e_key not in reverse.derived_from:
                violations.append(
                    Violation("missing-reverse-link", S2E, s_key, f"no back-link to {e_key!r}")
                )
    s_keys = sorted(lex.s2e, key=lambda k: textops.collation_key(k, textops.SINDHI, rep))
    for s_key in s_keys:
        rec = lex.s2e[s_key]
        for ref in rec.derived_from:
            if ref not in lex.e2s:
                violations.append(
                    Violation("dangling-source", S2E, s_key, f"back-link to missing {ref!r}")
                )
        if rec.provenance == DERIVED and not rec.english_glosses:
            violations.append(
                Violation("empty-derived", S2E, s_key, "derived record with no glosses")
            )
    return violations


def repair_crosslinks(lex) -> ChangeSet:
    """Rebuild every derived link from the English records alone.

    Derived records are regenerated from scratch; manual records keep
    their own fields and get fresh back-links. Glosses a manual record
    accumulated from sources that no longer exist are left in place
    (they are indistinguishable from hand-entered ones).
    """
    lex.dirty = True
    tracker = ChangeTracker(lex)
    rep = lex.repertoire
    for key in sorted(lex.s2e, key=lambda k: textops.collation_key(k, textops.SINDHI, rep)):
        tracker.touch(S2E, key)
        rec = lex.s2e[key]
        if rec.provenance == DERIVED:
            del lex.s2e[key]
        else:
            rec.derived_from = []
    for e_key in sorted(lex.e2s):
        derive(lex, lex.e2s[e_key], tracker=tracker)
    cs = tracker.finalize()
    lex.dirty = False
    return cs


def _tokens_lenient(lex, source: EntryRecord):
    """Token pairs for auditing: never raises, skips unkeyable tokens."""
    seen: set[str] = set()
    for gloss in source.sindhi_glosses:
        for tok in textops.tokenize_sindhi(gloss, lex.repertoire.delimiters):
            key = _sindhi_key(tok.text)
            if key and key not in seen:
                seen.add(key)
                yield tok.text, key
