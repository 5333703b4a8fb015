import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lughat import textops
from lughat.store import Lexicon, SortedAssocTable


@pytest.fixture(scope="session")
def repertoire():
    return textops.load_repertoire()


@pytest.fixture(params=["hash", "sorted-list"])
def make_lexicon(request, repertoire):
    """Factory for lexicons over both table implementations.

    Everything observable must behave identically regardless of the
    backing, so most store-level tests run against both.
    """
    factory = dict if request.param == "hash" else SortedAssocTable

    def _make():
        return Lexicon(repertoire=repertoire, table_factory=factory)

    return _make


@pytest.fixture
def lexicon(make_lexicon):
    return make_lexicon()


@pytest.fixture
def rng():
    return random.Random(20260810)


# A small pool of real Sindhi words for readable test data.
SINDHI_WORDS = [
    "پاڻي",      # water
    "آب",        # water (literary)
    "درسگاهه",   # school
    "اسڪول",     # school (loan)
    "ڪتاب",      # book
    "قلم",       # pen
    "ٻار",       # child
    "ماءُ",      # mother
    "پيءُ",      # father
    "گهر",       # house
    "ماني",      # bread
    "کير",       # milk
    "وڻ",        # tree
    "گل",        # flower
    "سج",        # sun
    "چنڊ",       # moon
    "رات",       # night
    "ڏينهن",     # day
    "هٿ",        # hand
    "اک",        # eye
]

ENGLISH_WORDS = [
    "water", "school", "book", "pen", "child", "mother", "father", "house",
    "bread", "milk", "tree", "flower", "sun", "moon", "night", "day",
    "hand", "eye", "rain", "river",
]


def random_sindhi_word(rng, rep, length=None):
    letters = [ch for ch, _ in rep.letters]
    n = length or rng.randint(2, 7)
    return "".join(rng.choice(letters) for _ in range(n))


def random_english_word(rng, length=None):
    n = length or rng.randint(2, 9)
    return "".join(rng.choice("abcdefghijklmnopqrstuvwxyz") for _ in range(n))


def build_random_lexicon(rng, rep, n_entries=12, table_factory=None):
    """A lexicon grown through the public mutation API only."""
    from lughat.errors import NotFoundError
    from lughat.records import E2S, S2E, EntryRecord

    lex = Lexicon(repertoire=rep, table_factory=table_factory)
    english = [random_english_word(rng) for _ in range(n_entries)]
    sindhi_pool = [random_sindhi_word(rng, rep) for _ in range(max(4, n_entries))]
    for word in english:
        glosses = [
            " ".join(rng.sample(sindhi_pool, rng.randint(1, 2)))
            for _ in range(rng.randint(1, 3))
        ]
        lex.put(
            E2S,
            EntryRecord(
                headword=word,
                pronunciation=random_english_word(rng, 4) if rng.random() < 0.5 else "",
                grammar=rng.choice(["", "noun", "verb", "adj"]),
                sindhi_glosses=glosses,
            ),
        )
    for _ in range(n_entries // 4):
        lex.put(
            S2E,
            EntryRecord(
                headword=rng.choice(sindhi_pool),
                pronunciation=random_english_word(rng, 4),
                english_glosses=[random_english_word(rng)],
            ),
        )
    for _ in range(n_entries // 5):
        try:
            lex.delete(E2S, rng.choice(english))
        except NotFoundError:
            pass
    return lex
