import json

import pytest

from xwalk.errors import (
    DuplicatePathError,
    OrphanPathError,
    SchemaParseError,
    UnknownPathError,
    UnknownSchemaError,
)
from xwalk.registry import SCHEMA_IDS, dump_schema, list_elements, load_schema, lookup_element

DC_QUALIFIERS = {
    "alternative", "available", "created", "issued", "modified", "valid", "temporal", "spatial",
    "tableOfContents", "abstract", "extent", "medium", "hasFormat", "hasPart", "hasVersion",
    "isFormatOf", "isPartOf", "isReferencedBy", "isReplacedBy", "isRequiredBy", "isVersionOf",
    "references", "replaces", "requires",
}
DC_CORE = {
    "title", "creator", "subject", "description", "publisher", "contributor", "date", "type",
    "format", "identifier", "source", "language", "relation", "coverage", "rights",
}


def test_exactly_five_schemas(registry):
    assert set(registry.ids) == set(SCHEMA_IDS)
    assert len(registry.ids) == 5


def test_dc_core_and_qualifiers(registry):
    paths = [el.path for el in list_elements(registry, "dc")]
    core = {p[0] for p in paths if len(p) == 1}
    qualifiers = {p[1] for p in paths if len(p) == 2}
    assert len(core) == 15
    assert core == DC_CORE
    assert qualifiers == DC_QUALIFIERS
    assert len(paths) == 15 + 24


def test_lookup_examples(registry):
    assert lookup_element(registry, "archaeo-core", ["Artefact Title"]).label == "Artefact Title"
    assert lookup_element(registry, "lido", ["titleSet", "appellationValue"]).path == (
        "titleSet", "appellationValue")
    assert lookup_element(registry, "carare", ["Appellation"]).label == "Appellation"
    assert lookup_element(registry, "dc", ["title"]).name == "title"


def test_lookup_errors_carry_identifier(registry):
    with pytest.raises(UnknownPathError) as err:
        lookup_element(registry, "lido", ["nonexistent"])
    assert err.value.path == ("nonexistent",)
    with pytest.raises(UnknownSchemaError) as err:
        lookup_element(registry, "marc21", ["title"])
    assert err.value.schema == "marc21"


def test_bare_appellation_value_is_not_an_element(registry):
    with pytest.raises(UnknownPathError):
        lookup_element(registry, "lido", ["appellationValue"])


def test_list_elements(registry):
    ac = [el.label for el in list_elements(registry, "archaeo-core")]
    assert "Artefact Munsell Number" in ac
    assert {"Artefact Techniques", "Artefact Comparatives"} <= set(ac)
    lpap = [el.name for el in list_elements(registry, "lpap")]
    assert "vowels" in lpap and "consonants" in lpap
    assert list_elements(registry, "carare") == list_elements(registry, "carare")
    with pytest.raises(UnknownSchemaError):
        list_elements(registry, "nope")


def test_uniques_registered(registry):
    carare = {el.name for el in list_elements(registry, "carare")}
    assert {
        "Provenance", "Heritage Asset Type", "Materials", "Craft", "Link", "Was Present at",
        "Is Successor to", "Is Replica of", "Was Digitised by", "Has Representation",
    } <= carare
    lido = {el.name for el in list_elements(registry, "lido")}
    assert {"repositoryName", "legalBodyWeblink", "gml", "term"} <= lido


def test_both_spellings_kept(registry):
    names = {el.name for el in list_elements(registry, "archaeo-core")}
    assert "Artifact Terminus Ante Quem" in names
    assert "Artefact Terminus Post Quem" in names


def test_every_table_source_path_resolves(registry, table):
    for rule in table.rules:
        assert lookup_element(registry, rule.source_schema, rule.source_path)
        assert lookup_element(registry, "dc", rule.dc_path)


def test_lpap_cardinality(registry):
    assert lookup_element(registry, "lpap", ["identifier"]).required
    assert lookup_element(registry, "lpap", ["languageName"]).required
    assert lookup_element(registry, "lpap", ["speakers", "count"]).datatype == "count"
    assert not lookup_element(registry, "lpap", ["vowels"]).required


def test_heritage_defaults_are_permissive(registry):
    for sid in ("archaeo-core", "carare", "lido"):
        for el in list_elements(registry, sid):
            assert el.repeatable and not el.required


def test_load_minimal_descriptor():
    schema = load_schema(json.dumps({"id": "x", "name": "X", "elements": [{"path": ["foo"]}]}))
    assert len(schema.elements) == 1
    assert schema.elements[0].label == "foo"


def test_duplicate_path_rejected():
    doc = {"id": "x", "name": "X", "elements": [{"path": ["foo"]}, {"path": ["foo"]}]}
    with pytest.raises(DuplicatePathError):
        load_schema(json.dumps(doc))


def test_orphan_child_rejected():
    doc = {"id": "x", "name": "X", "elements": [{"path": ["a", "b"]}]}
    with pytest.raises(OrphanPathError):
        load_schema(json.dumps(doc))


@pytest.mark.parametrize("path", [[], [""], ["  "], [" padded"], [1]])
def test_bad_segments_rejected(path):
    doc = {"id": "x", "name": "X", "elements": [{"path": path}]}
    with pytest.raises(SchemaParseError):
        load_schema(json.dumps(doc))


def test_parse_error_position():
    with pytest.raises(SchemaParseError) as err:
        load_schema('{"id": "x",\n  "name": }')
    assert err.value.line == 2
    assert err.value.column is not None


@pytest.mark.parametrize("sid", SCHEMA_IDS)
def test_descriptor_round_trip(registry, sid):
    original = registry.schema(sid)
    again = load_schema(dump_schema(original))
    assert again == original
    for a, b in zip(original.elements, again.elements):
        assert a.to_descriptor() == b.to_descriptor()
