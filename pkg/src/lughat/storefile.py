"""Deterministic single-file persistence plus TSV interchange.

Store file layout: UTF-8 text, LF line endings. Line 1 is a JSON header
object (magic, format_version, repertoire_version, entry counts); then
every English-side record, then every Sindhi-side record, one compact
JSON object per line with a fixed field order, each section sorted by
the collation for its side. Equal lexicon state therefore always
produces identical bytes, and files diff cleanly.
"""

from __future__ import annotations

import json
import os
import tempfile

from . import crosslink, textops, wire
from .errors import (
    BadMagicError,
    ConsistencyError,
    DuplicateKeyError,
    EmptyKeyError,
    RepertoireViolationError,
    StoreParseError,
    UnsupportedVersionError,
)
from .records import DERIVED, E2S, S2E, ChangeSet, EntryRecord, key_side, normalize_key
from .store import Lexicon

MAGIC = "LUGHAT01"
FORMAT_VERSION = 1

TSV_COLUMNS = ("headword", "pronunciation", "grammar", "sindhi_meaning", "english_meaning")
TSV_HEADER = "\t".join(TSV_COLUMNS)
GLOSS_JOIN = "\u060c "  # arabic comma + space


def _sorted_keys(lex: Lexicon, kind: str) -> list[str]:
    side = key_side(kind)
    return sorted(lex.table_for(kind), key=lambda k: textops.collation_key(k, side, lex.repertoire))


def dumps(lex: Lexicon) -> bytes:
    """Serialize; refuses to persist an inconsistent lexicon."""
    violations = crosslink.check_consistency(lex)
    if violations:
        raise ConsistencyError(violations)
    header = {
        "magic": MAGIC,
        "format_version": FORMAT_VERSION,
        "repertoire_version": lex.repertoire.version,
        "entry_count_e2s": len(lex.e2s),
        "entry_count_s2e": len(lex.s2e),
    }
    lines = [json.dumps(header, ensure_ascii=False, separators=(",", ":"))]
    for kind in (E2S, S2E):
        table = lex.table_for(kind)
        for key in _sorted_keys(lex, kind):
            obj = wire.record_to_obj(table[key])
            lines.append(json.dumps(obj, ensure_ascii=False, separators=(",", ":")))
    return ("\n".join(lines) + "\n").encode("utf-8")


def save(lex: Lexicon, path) -> int:
    """Atomic write (temp sibling then rename); returns bytes written."""
    data = dumps(lex)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=os.path.basename(path) + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
    return len(data)


def loads(data: bytes, repertoire=None, table_factory=None, repair: bool = False) -> Lexicon:
    text = data.decode("utf-8")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    if not lines:
        raise BadMagicError("empty file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError:
        raise BadMagicError("first line is not a store header") from None
    if not isinstance(header, dict) or header.get("magic") != MAGIC:
        raise BadMagicError(f"bad magic {header.get('magic')!r}" if isinstance(header, dict) else "bad header")
    if header.get("format_version") != FORMAT_VERSION:
        raise UnsupportedVersionError(f"format_version {header.get('format_version')!r}")
    counts = {}
    for name in ("entry_count_e2s", "entry_count_s2e"):
        value = header.get(name)
        if not isinstance(value, int) or value < 0:
            raise StoreParseError(1, f"bad {name}")
        counts[name] = value

    lex = Lexicon(repertoire=repertoire, table_factory=table_factory)
    line_no = 1
    for kind, count in ((E2S, counts["entry_count_e2s"]), (S2E, counts["entry_count_s2e"])):
        table = lex.table_for(kind)
        side = key_side(kind)
        for _ in range(count):
            line_no += 1
            if line_no > len(lines):
                raise StoreParseError(line_no, "unexpected end of file")
            key, rec = _parse_record_line(lines[line_no - 1], line_no, side)
            if key in table:
                raise DuplicateKeyError(line_no, key)
            table[key] = rec
    if line_no < len(lines):
        raise StoreParseError(line_no + 1, "trailing data after final record")

    violations = crosslink.check_consistency(lex)
    if violations:
        if not repair:
            raise ConsistencyError(violations)
        lex.repair_report = crosslink.repair_crosslinks(lex)
        remaining = crosslink.check_consistency(lex)
        if remaining:
            raise ConsistencyError(remaining)
    return lex


def load(path, repertoire=None, table_factory=None, repair: bool = False) -> Lexicon:
    with open(path, "rb") as f:
        data = f.read()
    return loads(data, repertoire=repertoire, table_factory=table_factory, repair=repair)


def _parse_record_line(line: str, line_no: int, side: str):
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise StoreParseError(line_no, f"invalid JSON ({exc.msg})") from None
    try:
        rec = wire.record_from_obj(obj)
    except ValueError as exc:
        raise StoreParseError(line_no, str(exc)) from None
    display = textops.normalize_text(rec.headword, textops.DISPLAY, side)
    if rec.headword != display:
        raise StoreParseError(line_no, f"headword {rec.headword!r} is not display-normalized")
    try:
        key = normalize_key(rec.headword, side)
    except EmptyKeyError:
        raise StoreParseError(line_no, f"headword {rec.headword!r} has no usable key") from None
    for name in ("sindhi_glosses", "english_glosses"):
        items = getattr(rec, name)
        if any(not g for g in items):
            raise StoreParseError(line_no, f"{name} contains an empty gloss")
        if len(set(items)) != len(items):
            raise StoreParseError(line_no, f"{name} contains duplicates")
    if rec.provenance == DERIVED and not rec.derived_from:
        raise StoreParseError(line_no, "derived record without back-links")
    return key, rec


# -- TSV interchange --------------------------------------------------


def _escape(field: str) -> str:
    return field.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def _unescape(field: str) -> str:
    out = []
    i = 0
    while i < len(field):
        ch = field[i]
        if ch == "\\" and i + 1 < len(field):
            nxt = field[i + 1]
            out.append({"t": "\t", "n": "\n", "\\": "\\"}.get(nxt, nxt))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def _split_glosses(cell: str) -> list[str]:
    return [piece.strip() for piece in cell.split("\u060c") if piece.strip()]


def import_tsv(lex: Lexicon, path, kind: str):
    """Bulk-load records, one put per line.

    Returns (merged ChangeSet, [(line_no, reason), ...]). Bad lines are
    skipped and reported; each good line's effect is applied and saved
    state is left to the caller.
    """
    with open(path, encoding="utf-8") as f:
        lines = f.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != TSV_HEADER:
        raise StoreParseError(1, f"expected header {TSV_HEADER!r}")

    applied: list[ChangeSet] = []
    errors: list[tuple[int, str]] = []
    for line_no, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        cells = line.split("\t")
        if len(cells) != len(TSV_COLUMNS):
            errors.append((line_no, f"expected {len(TSV_COLUMNS)} columns, got {len(cells)}"))
            continue
        headword, pronunciation, grammar, sindhi, english = (_unescape(c) for c in cells)
        record = EntryRecord(
            headword=headword,
            pronunciation=pronunciation,
            grammar=grammar,
            sindhi_glosses=_split_glosses(sindhi),
            english_glosses=_split_glosses(english),
        )
        try:
            applied.append(lex.put(kind, record))
        except (EmptyKeyError, RepertoireViolationError) as exc:
            errors.append((line_no, str(exc)))
    return ChangeSet.merge_all(applied), errors


def export_tsv(lex: Lexicon, path, kind: str) -> int:
    """Write one side as five-column TSV in collation order.

    Returns the number of lines written, header included.
    """
    table = lex.table_for(kind)
    lines = [TSV_HEADER]
    for key in _sorted_keys(lex, kind):
        rec = table[key]
        lines.append(
            "\t".join(
                _escape(cell)
                for cell in (
                    rec.headword,
                    rec.pronunciation,
                    rec.grammar,
                    GLOSS_JOIN.join(rec.sindhi_glosses),
                    GLOSS_JOIN.join(rec.english_glosses),
                )
            )
        )
    data = ("\n".join(lines) + "\n").encode("utf-8")
    with open(path, "wb") as f:
        f.write(data)
    return len(lines)
