"""Unicode-level text operations for Sindhi and English.

Everything the engine knows about script-level text lives here: the
canonicalization applied to lookup keys and display strings, the
repertoire of codepoints legal in Sindhi fields, word tokenization of
meanings, and the dictionary sort order.

All functions are pure; the repertoire is immutable once loaded.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from importlib import resources

from .errors import RepertoireFormatError

# Normalization profiles
KEY = "key"
DISPLAY = "display"

# Text sides
SINDHI = "sindhi"
ENGLISH = "english"

TATWEEL = "ـ"

# Vowel diacritics optional in written Sindhi: fathatan through sukun.
# Stripped from lookup keys, kept in display text.
HARAKAT = frozenset(chr(cp) for cp in range(0x064B, 0x0653))
_HARAKAT_TABLE = {ord(c): None for c in HARAKAT}

# Non-whitespace delimiters used when no repertoire is supplied. Matches
# the shipped repertoire data file: ASCII punctuation plus the Arabic
# comma, semicolon, question mark and full stop. Unicode whitespace is
# always a delimiter on top of these.
DEFAULT_DELIMITERS = frozenset(
    "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~" + "،؛؟۔"
)


@dataclass(frozen=True)
class Token:
    """One word cut out of a meaning string.

    ``start``/``end`` are codepoint offsets into the source text, so
    ``source[start:end] == text``.
    """

    text: str
    start: int
    end: int


@dataclass(frozen=True)
class SindhiRepertoire:
    """Data-driven table of codepoints legal in Sindhi fields.

    ``letters`` maps each letter to its collation rank (unique,
    contiguous from 0, in dictionary order). ``extras`` are permitted
    non-letter codepoints (digits, harakat, punctuation, space).
    ``delimiters`` are the non-whitespace codepoints that cut meanings
    into words.
    """

    version: int
    letters: tuple[tuple[str, int], ...]
    extras: frozenset[str]
    delimiters: frozenset[str]

    def __post_init__(self):
        ranks = [rank for _, rank in self.letters]
        if sorted(ranks) != list(range(len(ranks))):
            raise RepertoireFormatError("letter ranks must be unique and contiguous from 0")
        seen = set()
        for ch, _ in self.letters:
            if ch in seen:
                raise RepertoireFormatError(f"duplicate letter U+{ord(ch):04X}")
            seen.add(ch)
        overlap = seen & self.extras
        if overlap:
            cp = next(iter(overlap))
            raise RepertoireFormatError(f"U+{ord(cp):04X} listed as both letter and extra")
        object.__setattr__(self, "_rank", {ch: rank for ch, rank in self.letters})
        object.__setattr__(self, "_allowed", seen | self.extras)

    def rank_of(self, ch: str) -> int | None:
        return self._rank.get(ch)

    def allows(self, ch: str) -> bool:
        return ch in self._allowed


_REPERTOIRE_LINE = re.compile(
    r"^(?:(version)\s+(\d+)|(letter)\s+([0-9A-Fa-f]{4,6})\s+(\d+)|(extra|delimiter)\s+([0-9A-Fa-f]{4,6}))$"
)


def parse_repertoire(text: str) -> SindhiRepertoire:
    """Parse the line-oriented repertoire format.

    Grammar: ``version <int>``, ``letter <codepoint-hex> <rank>``,
    ``extra <codepoint-hex>``, ``delimiter <codepoint-hex>``; ``#``
    starts a comment; blank lines ignored.
    """
    version = None
    letters: list[tuple[str, int]] = []
    extras: set[str] = set()
    delimiters: set[str] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _REPERTOIRE_LINE.match(line)
        if not m:
            raise RepertoireFormatError(f"line {line_no}: cannot parse {line!r}")
        if m.group(1):
            if version is not None:
                raise RepertoireFormatError(f"line {line_no}: duplicate version line")
            version = int(m.group(2))
        elif m.group(3):
            letters.append((chr(int(m.group(4), 16)), int(m.group(5))))
        else:
            target = extras if m.group(6) == "extra" else delimiters
            target.add(chr(int(m.group(7), 16)))
    if version is None:
        raise RepertoireFormatError("missing version line")
    letters.sort(key=lambda pair: pair[1])
    return SindhiRepertoire(
        version=version,
        letters=tuple(letters),
        extras=frozenset(extras),
        delimiters=frozenset(delimiters),
    )


def load_repertoire(path=None) -> SindhiRepertoire:
    """Load a repertoire file, defaulting to the one shipped in the package."""
    if path is None:
        text = resources.files("lughat.data").joinpath("repertoire.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    return parse_repertoire(text)


def normalize_text(raw: str, profile: str, side: str) -> str:
    """Canonicalize text for storage (display) or lookup (key).

    Both profiles produce NFC text with surrounding whitespace removed
    and internal whitespace runs collapsed to one space. The key profile
    additionally strips tatweel, strips harakat on the Sindhi side, and
    case-folds on the English side; removals are re-composed so the
    result stays NFC. Total and idempotent; empty output is legal and
    means the input cannot serve as a key.
    """
    if profile not in (KEY, DISPLAY):
        raise ValueError(f"unknown profile {profile!r}")
    if side not in (SINDHI, ENGLISH):
        raise ValueError(f"unknown side {side!r}")
    s = unicodedata.normalize("NFC", raw)
    if profile == KEY:
        s = s.replace(TATWEEL, "")
        if side == SINDHI:
            s = s.translate(_HARAKAT_TABLE)
        else:
            s = s.casefold()
        # removing a mark or folding can expose new compositions
        s = unicodedata.normalize("NFC", s)
    return " ".join(s.split())


def tokenize_sindhi(text: str, delimiters: frozenset[str] | None = None) -> list[Token]:
    """Cut a display-normalized meaning into its distinct words.

    Splits on Unicode whitespace plus the delimiter set, drops empty
    pieces, and keeps only the first occurrence of each word text.
    """
    if delimiters is None:
        delimiters = DEFAULT_DELIMITERS
    pattern = _token_pattern(delimiters)
    seen = set()
    tokens: list[Token] = []
    for m in pattern.finditer(text):
        piece = m.group()
        if piece in seen:
            continue
        seen.add(piece)
        tokens.append(Token(text=piece, start=m.start(), end=m.end()))
    return tokens


_PATTERN_CACHE: dict[frozenset[str], re.Pattern] = {}


def _token_pattern(delimiters: frozenset[str]) -> re.Pattern:
    pat = _PATTERN_CACHE.get(delimiters)
    if pat is None:
        cls = "".join(re.escape(c) for c in sorted(delimiters))
        pat = re.compile(f"[^\\s{cls}]+")
        _PATTERN_CACHE[delimiters] = pat
    return pat


def validate_repertoire(text: str, rep: SindhiRepertoire) -> list[tuple[int, str]]:
    """Report codepoints of display-normalized text outside the repertoire.

    Returns ``(offset, codepoint)`` pairs; empty list means the text is
    clean. Never raises.
    """
    return [(i, ch) for i, ch in enumerate(text) if not rep.allows(ch)]


def collation_key(text: str, side: str, rep: SindhiRepertoire):
    """Sort key realizing the dictionary order for one side.

    Sindhi compares codepoint-wise by repertoire rank; codepoints with
    no rank order after all ranked ones, among themselves by scalar
    value. English compares by plain codepoint (inputs are already
    key-folded). Prefixes sort before their extensions on both sides.
    """
    if side == ENGLISH:
        return text
    ranks = rep._rank
    out = []
    for ch in text:
        r = ranks.get(ch)
        out.append((0, r) if r is not None else (1, ord(ch)))
    return tuple(out)


def collate(a: str, b: str, side: str, rep: SindhiRepertoire) -> int:
    """Three-way comparison of key-normalized strings: -1, 0 or 1."""
    ka = collation_key(a, side, rep)
    kb = collation_key(b, side, rep)
    return (ka > kb) - (ka < kb)
