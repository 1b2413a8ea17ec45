import random

import pytest

import gen
from xwalk.errors import LpapError, MissingIdentifierError, MissingLanguageNameError, WrongSchemaError
from xwalk.lpap import (
    SHORTLIST_FIELDS,
    LanguageFacts,
    LpapRecord,
    Speakers,
    from_dc,
    from_record,
    to_dc,
    to_record,
    validate_lpap,
)
from xwalk.record import Record, add_value, get_values, leaves, strict_check

SORA_FAMILY = ("Austroasiatic", "Munda", "Sora-Gorum")


def dc(*pairs):
    r = Record("dc")
    for path, value in pairs:
        r = add_value(r, path, value)
    return r


def full_record(**overrides):
    fields = dict(
        identifier="hdl:1/2", language_name="Sora", script=("Sorang Sompeng",),
        vowels=("a", "e", "i", "o", "u"), consonants=("p", "t", "k"),
        country_region=("India",), community=("Lanjia Sora",), speakers=Speakers(410000, "2011"),
        linguistic_family=SORA_FAMILY, rights="CC-BY 4.0", legal_body_name="Language Archive",
        source=("tape 14",), creator=("A. Linguist",),
    )
    fields.update(overrides)
    return LpapRecord(**fields)


def test_from_dc_basic():
    facts = LanguageFacts(language_name="Sora", linguistic_family=SORA_FAMILY)
    r = from_dc(dc((["identifier"], "hdl:1/2"), (["creator"], "A. Linguist")), facts)
    assert r.identifier == "hdl:1/2"
    assert r.creator == ("A. Linguist",)
    assert r.language_name == "Sora"
    assert r.linguistic_family == SORA_FAMILY


def test_from_dc_facts_only():
    r = from_dc(Record("dc"), LanguageFacts(identifier="urn:x", language_name="Gorum", vowels=("a",)))
    assert r.identifier == "urn:x" and r.vowels == ("a",)


def test_from_dc_missing_identifier():
    with pytest.raises(MissingIdentifierError):
        from_dc(dc((["title"], "x")), LanguageFacts(language_name="Sora"))


def test_from_dc_missing_language_name():
    with pytest.raises(MissingLanguageNameError):
        from_dc(dc((["identifier"], "i")), LanguageFacts())


def test_from_dc_wrong_schema():
    with pytest.raises(WrongSchemaError):
        from_dc(Record("lido"), LanguageFacts(language_name="x"))


def test_from_dc_field_map():
    record = dc(
        (["identifier"], "id"), (["date", "created"], "1998"), (["date", "available"], "vulnerable"),
        (["coverage", "spatial"], "Gajapati"), (["coverage", "spatial"], "Rayagada"),
        (["description"], "Narratives"), (["rights"], "CC0"), (["publisher"], "Archive"),
        (["source"], "tape 3"), (["language"], "Sora"),
    )
    r = from_dc(record)
    assert r.language_name == "Sora"
    assert r.date_created == "1998"
    assert r.designations == ("vulnerable",)
    assert r.origin == "Gajapati"
    assert r.spatial == ("Gajapati", "Rayagada")
    assert r.description == ("Narratives",)
    assert (r.rights, r.legal_body_name, r.source) == ("CC0", "Archive", ("tape 3",))


def test_facts_win():
    record = dc((["identifier"], "dc-id"), (["coverage", "spatial"], "A"), (["language"], "Saora"),
                (["description"], "vowels: a, e"))
    facts = LanguageFacts(identifier="facts-id", origin="B", language_name="Sora", vowels=("i",))
    r = from_dc(record, facts)
    assert (r.identifier, r.origin, r.language_name, r.vowels) == ("facts-id", "B", "Sora", ("i",))


def test_to_dc_echo():
    out = to_dc(LpapRecord(identifier="hdl:1/2", language_name="Sora"))
    assert get_values(out, ["identifier"]) == ["hdl:1/2"]
    assert [e.path for e in leaves(out)] == [("identifier",), ("language",)]


def test_to_dc_labels_language_facts():
    out = to_dc(full_record(vowels=("a", "e")))
    descriptions = get_values(out, ["description"])
    assert "vowels: a, e" in descriptions
    assert "speakers: 410000 (as of 2011)" in descriptions
    assert [d for d in descriptions if d.startswith("linguisticFamily: ")] == [
        "linguisticFamily: Austroasiatic", "linguisticFamily: Munda", "linguisticFamily: Sora-Gorum"]


def test_to_dc_language_facts_round_trip():
    original = full_record(grammatical_rules=("SOV, agglutinative",), alternate_names=("Saora",))
    back = from_dc(to_dc(original))
    assert back == original


def test_origin_not_first_spatial_survives():
    original = full_record(origin="Lanjia hills", spatial=("Rayagada",))
    assert from_dc(to_dc(original)).origin == "Lanjia hills"


@pytest.mark.parametrize("seed", range(40))
def test_shortlist_round_trip(seed):
    original = gen.lpap_record(random.Random(seed))
    back = from_dc(to_dc(original), LanguageFacts())
    for name in SHORTLIST_FIELDS:
        assert getattr(back, name) == getattr(original, name), name


@pytest.mark.parametrize("seed", range(40))
def test_to_dc_passes_strict_check(registry, seed):
    assert strict_check(registry, to_dc(gen.lpap_record(random.Random(seed)))) == []


@pytest.mark.parametrize("seed", range(20))
def test_canonical_lpap_round_trip(registry, seed):
    original = gen.lpap_record(random.Random(seed))
    as_record = to_record(original)
    assert strict_check(registry, as_record) == []
    assert from_record(as_record) == original


@pytest.mark.parametrize("kwargs", [
    dict(identifier="", language_name="Sora"),
    dict(identifier="x", language_name=" "),
    dict(identifier="x", language_name="Sora", vowels=("a", "a")),
    dict(identifier="x", language_name="Sora", consonants=("",)),
    dict(identifier="x", language_name="Sora", consonants=("p,t",)),
    dict(identifier="x", language_name="Sora", linguistic_family=("Munda", "Munda")),
])
def test_record_invariants(kwargs):
    with pytest.raises(LpapError):
        LpapRecord(**kwargs)


def test_speakers_non_negative():
    with pytest.raises(LpapError):
        Speakers(-1)
    with pytest.raises(LpapError):
        Speakers(True)


def test_facts_from_json():
    facts = LanguageFacts.from_json({
        "languageName": "Sora", "linguisticFamily": ["Austroasiatic", "Munda"],
        "speakers": {"count": 12, "asOf": "2020"}, "vowels": ["a"],
    })
    assert facts.speakers == Speakers(12, "2020")
    assert facts.linguistic_family == ("Austroasiatic", "Munda")
    with pytest.raises(LpapError):
        LanguageFacts.from_json({"favouriteColour": "blue"})


def test_fair_all_pass():
    report = validate_lpap(full_record())
    assert report.overall
    assert all(v.passed for v in (report.findable, report.accessible, report.interoperable, report.reusable))


def test_fair_missing_rights():
    report = validate_lpap(full_record(rights=None))
    assert not report.reusable.passed
    assert report.reusable.reasons == ("rights missing",)
    assert report.findable.passed and report.accessible.passed and report.interoperable.passed
    assert not report.overall


def test_fair_missing_family():
    report = validate_lpap(full_record(linguistic_family=()))
    assert not report.interoperable.passed
    assert report.findable.passed


def test_fair_no_custodian():
    report = validate_lpap(full_record(source=(), legal_body_name=None))
    assert not report.accessible.passed


def test_fair_draft_without_identifier():
    report = validate_lpap(LpapRecord(identifier="", language_name="", draft=True, rights="x"))
    assert not report.findable.passed
    assert set(report.findable.reasons) == {"identifier missing", "languageName missing"}


@pytest.mark.parametrize("seed", range(20))
def test_constructed_records_are_findable(seed):
    rng = random.Random(seed)
    original = gen.lpap_record(rng)
    assert validate_lpap(from_dc(to_dc(original))).findable.passed
