"""Bilingual English-Sindhi dictionary engine.

Twin key/value dictionaries over normalized headwords; the Sindhi-to-
English side is derived automatically by tokenizing the Sindhi meanings
of English records. Ships with deterministic file persistence, TSV
interchange, a CLI and a local HTTP editor service.
"""

__version__ = "0.1.0"

from .errors import (
    BadMagicError,
    ConsistencyError,
    DuplicateKeyError,
    EmptyKeyError,
    LughatError,
    NotFoundError,
    RepertoireViolationError,
    StoreFileError,
    StoreParseError,
    UnsupportedVersionError,
)
from .records import DERIVED, E2S, MANUAL, S2E, ChangeSet, EntryRecord
from .store import Lexicon
from .textops import SindhiRepertoire, Token, load_repertoire

__all__ = [
    "BadMagicError",
    "ChangeSet",
    "ConsistencyError",
    "DERIVED",
    "DuplicateKeyError",
    "E2S",
    "EmptyKeyError",
    "EntryRecord",
    "Lexicon",
    "LughatError",
    "MANUAL",
    "NotFoundError",
    "RepertoireViolationError",
    "S2E",
    "SindhiRepertoire",
    "StoreFileError",
    "StoreParseError",
    "Token",
    "UnsupportedVersionError",
    "load_repertoire",
    "__version__",
]
