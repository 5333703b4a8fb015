"""Exception types shared across the engine."""

from __future__ import annotations


class LughatError(Exception):
    """Base class for all engine errors."""


class EmptyKeyError(LughatError):
    """A headword normalized to the empty string and cannot be keyed."""


class RepertoireViolationError(LughatError):
    """Sindhi text contains codepoints outside the repertoire.

    ``violations`` is a list of ``(offset, codepoint)`` pairs into the
    offending field; ``field`` names which record field failed.
    """

    def __init__(self, field: str, violations: list[tuple[int, str]]):
        self.field = field
        self.violations = violations
        shown = ", ".join(f"U+{ord(c):04X} at {i}" for i, c in violations[:5])
        more = "" if len(violations) <= 5 else f" (+{len(violations) - 5} more)"
        super().__init__(f"{field}: disallowed codepoints: {shown}{more}")


class NotFoundError(LughatError):
    """No entry under the given key."""


class RepertoireFormatError(LughatError):
    """The repertoire data file is malformed."""


class StoreFileError(LughatError):
    """Base class for store-file load/save failures."""


class BadMagicError(StoreFileError):
    """The file does not start with a recognizable store header."""


class UnsupportedVersionError(StoreFileError):
    """The store file declares a format version this build cannot read."""


class StoreParseError(StoreFileError):
    """A store or TSV file line failed to parse."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class DuplicateKeyError(StoreFileError):
    """Two records in one store-file section share a key."""

    def __init__(self, line_no: int, key: str):
        self.line_no = line_no
        self.key = key
        super().__init__(f"line {line_no}: duplicate key {key!r}")


class ConsistencyError(StoreFileError):
    """The lexicon violates the cross-link invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(str(v) for v in self.violations[:3])
        more = "" if len(self.violations) <= 3 else f" (+{len(self.violations) - 3} more)"
        super().__init__(f"{len(self.violations)} consistency violations: {head}{more}")
