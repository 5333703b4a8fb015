import random

from conftest import ENGLISH_WORDS, SINDHI_WORDS
from lughat import crosslink, textops
from lughat.crosslink import check_consistency, derive, reconcile, repair_crosslinks, retract
from lughat.errors import NotFoundError
from lughat.records import DERIVED, E2S, MANUAL, S2E, EntryRecord

REP = textops.load_repertoire()


def put_word(lex, word, glosses, **fields):
    return lex.put(E2S, EntryRecord(headword=word, sindhi_glosses=list(glosses), **fields))


def observable(lex):
    return (
        {k: lex.e2s[k] for k in sorted(lex.e2s)},
        {k: lex.s2e[k] for k in sorted(lex.s2e)},
    )


class TestDerive:
    def test_comma_separated_meaning_makes_two_entries(self, lexicon):
        put_word(lexicon, "school", ["درسگاهه، اسڪول"])
        for word in ["درسگاهه", "اسڪول"]:
            rec = lexicon.get(S2E, word)
            assert rec is not None
            assert rec.english_glosses == ["school"]
            assert rec.provenance == DERIVED

    def test_empty_glosses_derive_nothing(self, lexicon):
        cs = put_word(lexicon, "void", [])
        assert len(lexicon.s2e) == 0
        assert [key for _, key, _ in cs.created] == ["void"]

    def test_shared_token_accumulates_glosses_in_order(self, lexicon):
        put_word(lexicon, "water", ["پاڻي"])
        put_word(lexicon, "rain", ["پاڻي"])
        rec = lexicon.get(S2E, "پاڻي")
        assert rec.english_glosses == ["water", "rain"]
        assert rec.derived_from == ["rain", "water"]  # links kept sorted

    def test_grammar_copied_pronunciation_left_empty(self, lexicon):
        put_word(lexicon, "water", ["پاڻي"], grammar="noun", pronunciation="waa-ter")
        rec = lexicon.get(S2E, "پاڻي")
        assert rec.grammar == "noun"
        assert rec.pronunciation == ""

    def test_existing_manual_record_only_extended(self, lexicon):
        lexicon.put(
            S2E,
            EntryRecord(
                headword="پاڻي",
                pronunciation="paani",
                grammar="noun",
                english_glosses=["aqua"],
            ),
        )
        put_word(lexicon, "water", ["پاڻي"], grammar="verb")
        rec = lexicon.get(S2E, "پاڻي")
        assert rec.provenance == MANUAL
        assert rec.grammar == "noun"  # untouched
        assert rec.pronunciation == "paani"
        assert rec.english_glosses == ["aqua", "water"]
        assert rec.derived_from == ["water"]

    def test_harakat_bearing_token_keys_folded(self, lexicon):
        put_word(lexicon, "water", ["پاڻِي"])  # kasra inside
        rec = lexicon.get(S2E, "پاڻي")
        assert rec is not None
        assert rec.headword == "پاڻِي"  # display keeps the mark

    def test_tatweel_only_token_is_skipped(self, lexicon):
        put_word(lexicon, "stretch", ["ــ پاڻي"])
        assert len(lexicon.s2e) == 1
        assert lexicon.get(S2E, "پاڻي") is not None


class TestRetract:
    def test_sole_source_removes_derived_record(self, lexicon):
        put_word(lexicon, "water", ["پاڻي"])
        cs = retract(lexicon, "water")
        assert lexicon.get(S2E, "پاڻي") is None
        assert [key for _, key, _ in cs.deleted] == ["پاڻي"]

    def test_one_of_two_sources_shrinks_record(self, lexicon):
        put_word(lexicon, "water", ["پاڻي"])
        put_word(lexicon, "rain", ["پاڻي"])
        cs = retract(lexicon, "water")
        rec = lexicon.get(S2E, "پاڻي")
        assert rec.english_glosses == ["rain"]
        assert rec.derived_from == ["rain"]
        assert [key for _, key, _ in cs.updated] == ["پاڻي"]

    def test_retract_twice_is_noop(self, lexicon):
        put_word(lexicon, "water", ["پاڻي"])
        retract(lexicon, "water")
        cs = retract(lexicon, "water")
        assert cs.is_empty()

    def test_unknown_source_is_noop(self, lexicon):
        cs = retract(lexicon, "ghost")
        assert cs.is_empty()

    def test_manual_record_never_deleted(self, lexicon):
        lexicon.put(S2E, EntryRecord(headword="پاڻي", english_glosses=["water"]))
        put_word(lexicon, "water", ["پاڻي"])
        retract(lexicon, "water")
        rec = lexicon.get(S2E, "پاڻي")
        assert rec is not None and rec.provenance == MANUAL
        # the gloss naming the retracted source is gone
        assert rec.english_glosses == []


class TestReconcile:
    def test_gloss_change_swaps_derived_records(self, lexicon):
        put_word(lexicon, "water", ["پاڻي"])
        cs = put_word(lexicon, "water", ["آب"])
        assert lexicon.get(S2E, "پاڻي") is None
        assert lexicon.get(S2E, "آب").english_glosses == ["water"]
        assert [key for _, key, _ in cs.deleted] == ["پاڻي"]
        assert [key for _, key, _ in cs.created] == ["آب"]

    def test_edit_not_touching_glosses_leaves_reverse_alone(self, lexicon):
        put_word(lexicon, "water", ["پاڻي"])
        rev_before = lexicon.get(S2E, "پاڻي").copy()
        cs = put_word(lexicon, "water", ["پاڻي"], pronunciation="waa-ter")
        assert [(k, key) for k, key, _ in cs.updated] == [(E2S, "water")]
        assert cs.created == [] and cs.deleted == []
        assert lexicon.get(S2E, "پاڻي") == rev_before

    def test_reconcile_without_old_equals_derive(self, make_lexicon):
        a = make_lexicon()
        b = make_lexicon()
        rec = EntryRecord(headword="water", sindhi_glosses=["پاڻي"])
        a.e2s["water"] = rec.copy()
        b.e2s["water"] = rec.copy()
        reconcile(a, None, a.e2s["water"])
        derive(b, b.e2s["water"])
        assert observable(a) == observable(b)

    def test_reconcile_matches_delete_plus_put(self, make_lexicon):
        def seed(lex):
            put_word(lex, "water", ["پاڻي"])
            put_word(lex, "rain", ["پاڻي، مينهن"])

        via_edit = make_lexicon()
        seed(via_edit)
        put_word(via_edit, "rain", ["مينهن، برسات"], grammar="noun")

        via_delete = make_lexicon()
        seed(via_delete)
        via_delete.delete(E2S, "rain")
        put_word(via_delete, "rain", ["مينهن، برسات"], grammar="noun")

        a, b = observable(via_edit), observable(via_delete)
        # revisions may differ between the two routes; contents must not
        strip = lambda table: {
            k: (r.headword, r.pronunciation, r.grammar, tuple(r.sindhi_glosses),
                tuple(r.english_glosses), r.provenance, tuple(r.derived_from))
            for k, r in table.items()
        }
        assert strip(a[0]) == strip(b[0])
        assert strip(a[1]) == strip(b[1])

    def test_derive_then_retract_is_exact_inverse(self, lexicon):
        put_word(lexicon, "school", ["درسگاهه"])
        before = observable(lexicon)
        source = EntryRecord(headword="book", sindhi_glosses=["ڪتاب، پوٿي"])
        lexicon.e2s["book"] = source
        derive(lexicon, source)
        del lexicon.e2s["book"]
        retract(lexicon, "book")
        assert observable(lexicon) == before


class TestCheckConsistency:
    def test_empty_lexicon_ok(self, lexicon):
        assert check_consistency(lexicon) == []

    def test_built_lexicon_ok(self, lexicon):
        put_word(lexicon, "water", ["پاڻي"])
        put_word(lexicon, "school", ["درسگاهه، اسڪول"])
        lexicon.put(S2E, EntryRecord(headword="ڪتاب", english_glosses=["book"]))
        lexicon.delete(E2S, "water")
        assert check_consistency(lexicon) == []

    def test_dangling_backlink_reported_once(self, lexicon):
        put_word(lexicon, "water", ["پاڻي"])
        rec = lexicon.s2e["پاڻي"]
        rec.derived_from = sorted(set(rec.derived_from) | {"ghost"})
        report = check_consistency(lexicon)
        assert len(report) == 1
        assert report[0].code == "dangling-source"
        assert report[0].key == "پاڻي"

    def test_missing_reverse_entry_reported(self, lexicon):
        put_word(lexicon, "water", ["پاڻي"])
        del lexicon.s2e["پاڻي"]
        codes = {v.code for v in check_consistency(lexicon)}
        assert codes == {"missing-reverse-entry"}

    def test_missing_gloss_and_link_reported(self, lexicon):
        put_word(lexicon, "water", ["پاڻي"])
        rec = lexicon.s2e["پاڻي"]
        rec.english_glosses = ["other"]
        rec.derived_from = []
        codes = {v.code for v in check_consistency(lexicon)}
        assert codes == {"missing-reverse-gloss", "missing-reverse-link"}

    def test_empty_derived_reported(self, lexicon):
        put_word(lexicon, "water", ["پاڻي"])
        lexicon.s2e["پاڻي"].english_glosses = []
        codes = [v.code for v in check_consistency(lexicon)]
        assert "empty-derived" in codes


class TestRepair:
    def test_repair_restores_consistency(self, lexicon):
        put_word(lexicon, "water", ["پاڻي"])
        put_word(lexicon, "school", ["درسگاهه، اسڪول"])
        lexicon.put(S2E, EntryRecord(headword="قلم", english_glosses=["pen"]))
        # vandalize: drop one derived record, corrupt another's links
        del lexicon.s2e["پاڻي"]
        lexicon.s2e["درسگاهه"].derived_from = ["ghost"]
        assert check_consistency(lexicon) != []
        cs = repair_crosslinks(lexicon)
        assert check_consistency(lexicon) == []
        assert not cs.is_empty()
        # untouched manual record did not appear in the report
        assert all(key != "قلم" for _, key, _ in cs.created + cs.updated + cs.deleted)

    def test_repair_on_consistent_lexicon_reports_nothing(self, lexicon):
        put_word(lexicon, "water", ["پاڻي"])
        lexicon.put(S2E, EntryRecord(headword="ڪتاب", english_glosses=["book"]))
        before = observable(lexicon)
        cs = repair_crosslinks(lexicon)
        assert cs.is_empty()
        assert observable(lexicon) == before


class TestRandomSequences:
    """Smaller cousin of the acceptance soak: consistency after every op."""

    def test_consistency_held_through_random_ops(self, make_lexicon):
        rng = random.Random(424242)
        lex = make_lexicon()
        manual_keys = set()
        for w in SINDHI_WORDS[:5]:
            lex.put(S2E, EntryRecord(headword=w, english_glosses=["seed"]))
            manual_keys.add(textops.normalize_text(w, textops.KEY, textops.SINDHI))
        for step in range(150):
            word = rng.choice(ENGLISH_WORDS)
            if rng.random() < 0.65:
                glosses = [
                    " ".join(rng.sample(SINDHI_WORDS, rng.randint(1, 2)))
                    for _ in range(rng.randint(1, 3))
                ]
                put_word(lex, word, glosses)
            else:
                try:
                    lex.delete(E2S, word)
                except NotFoundError:
                    pass
            assert check_consistency(lex) == []
            for key in manual_keys:
                rec = lex.s2e.get(key)
                assert rec is not None and rec.provenance == MANUAL
