"""Canonical JSON projections shared by the store file, CLI and HTTP API.

Field order is fixed and encoding is byte-deterministic: the CLI's
--json output and the service's responses for the same query are
identical bytes, and the store file's record lines never reorder.
"""

from __future__ import annotations

import json

from .records import DERIVED, MANUAL, ChangeSet, EntryRecord, check_kind, key_side, normalize_key

RECORD_FIELDS = (
    "headword",
    "pronunciation",
    "grammar",
    "sindhi_glosses",
    "english_glosses",
    "provenance",
    "derived_from",
    "revision",
)


def encode_json(obj) -> bytes:
    """UTF-8 JSON, compact separators, raw (non-escaped) Unicode, one LF."""
    return (json.dumps(obj, ensure_ascii=False, separators=(",", ":")) + "\n").encode("utf-8")


def record_to_obj(rec: EntryRecord) -> dict:
    return {
        "headword": rec.headword,
        "pronunciation": rec.pronunciation,
        "grammar": rec.grammar,
        "sindhi_glosses": list(rec.sindhi_glosses),
        "english_glosses": list(rec.english_glosses),
        "provenance": rec.provenance,
        "derived_from": list(rec.derived_from),
        "revision": rec.revision,
    }


def record_from_obj(obj) -> EntryRecord:
    """Strict inverse of record_to_obj; raises ValueError on bad shape."""
    if not isinstance(obj, dict):
        raise ValueError("record must be a JSON object")
    unknown = set(obj) - set(RECORD_FIELDS) - {"kind", "key"}
    if unknown:
        raise ValueError(f"unknown record fields: {sorted(unknown)}")
    for name in ("headword", "pronunciation", "grammar"):
        if not isinstance(obj.get(name, ""), str):
            raise ValueError(f"{name} must be a string")
    for name in ("sindhi_glosses", "english_glosses", "derived_from"):
        items = obj.get(name, [])
        if not isinstance(items, list) or any(not isinstance(x, str) for x in items):
            raise ValueError(f"{name} must be a list of strings")
    provenance = obj.get("provenance", MANUAL)
    if provenance not in (MANUAL, DERIVED):
        raise ValueError(f"provenance must be {MANUAL!r} or {DERIVED!r}")
    revision = obj.get("revision", 1)
    if not isinstance(revision, int) or isinstance(revision, bool) or revision < 1:
        raise ValueError("revision must be a positive integer")
    if "headword" not in obj:
        raise ValueError("headword is required")
    return EntryRecord(
        headword=obj["headword"],
        pronunciation=obj.get("pronunciation", ""),
        grammar=obj.get("grammar", ""),
        sindhi_glosses=list(obj.get("sindhi_glosses", [])),
        english_glosses=list(obj.get("english_glosses", [])),
        provenance=provenance,
        derived_from=list(obj.get("derived_from", [])),
        revision=revision,
    )


def entry_payload(kind: str, rec: EntryRecord) -> dict:
    check_kind(kind)
    key = normalize_key(rec.headword, key_side(kind))
    return {"kind": kind, "key": key, **record_to_obj(rec)}


def listing_payload(kind, prefix, offset, limit, total, rows) -> dict:
    side = key_side(kind)
    words = [
        {"headword": headword, "key": normalize_key(headword, side), "provenance": provenance}
        for headword, provenance in rows
    ]
    return {
        "kind": kind,
        "prefix": prefix,
        "offset": offset,
        "limit": limit,
        "total": total,
        "words": words,
    }


def changeset_payload(cs: ChangeSet) -> dict:
    def entries(triples):
        return [entry_payload(kind, rec) for kind, _key, rec in triples]

    return {
        "session_tag": cs.session_tag,
        "created": entries(cs.created),
        "updated": entries(cs.updated),
        "deleted": entries(cs.deleted),
    }


def health_payload(lex) -> dict:
    return {"status": "ok", "entries_e2s": len(lex.e2s), "entries_s2e": len(lex.s2e)}


def error_payload(error: str, message: str = "", **extra) -> dict:
    obj = {"error": error}
    if message:
        obj["message"] = message
    obj.update(extra)
    return obj


def violations_payload(exc) -> dict:
    return error_payload(
        "RepertoireViolation",
        str(exc),
        field=exc.field,
        violations=[
            {"offset": off, "codepoint": f"{ord(ch):04X}"} for off, ch in exc.violations
        ],
    )
