"""Language Preservation Application Profile (LPAP v0.1).

An :class:`LpapRecord` combines the heritage-schema elements that carry
over to language description (identifier, creator, spatial coverage,
rights, ...) with language facts: script, vowel and consonant
inventories, grammar, region, community, speakers and family lineage.

Language facts have no Dublin Core home. When exported with
:func:`to_dc` they become ``description`` values with a ``label: ``
prefix, and :func:`from_dc` reads them back, so nothing is lost in DC
interchange.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, fields

from .errors import LpapError, MissingIdentifierError, MissingLanguageNameError, WrongSchemaError
from .record import Record, add_value, get_values, strict_check
from .registry import builtin_registry

PROFILE_VERSION = "0.1"


@dataclass(frozen=True)
class Speakers:
    count: int
    as_of: str | None = None

    def __post_init__(self):
        if isinstance(self.count, bool) or not isinstance(self.count, int) or self.count < 0:
            raise LpapError(f"speakers.count must be a non-negative integer, got {self.count!r}")


def _tuple(value) -> tuple:
    if value is None:
        return ()
    if isinstance(value, str):
        return (value,)
    return tuple(value)


def _check_inventory(name: str, tokens: tuple[str, ...]) -> None:
    if len(set(tokens)) != len(tokens):
        raise LpapError(f"{name} contains duplicate tokens")
    for tok in tokens:
        if not tok or not tok.strip() or tok != tok.strip() or "," in tok:
            raise LpapError(f"{name} token {tok!r} must be non-empty, trimmed and comma-free")


# python attribute -> profile element name (also the canonical record segment)
_ELEMENT_NAMES = {
    "identifier": "identifier",
    "language_name": "languageName",
    "alternate_names": "alternateNames",
    "script": "script",
    "vowels": "vowels",
    "consonants": "consonants",
    "grammatical_rules": "grammaticalRules",
    "country_region": "countryRegion",
    "community": "community",
    "speakers": "speakers",
    "linguistic_family": "linguisticFamily",
    "designations": "designations",
    "date_created": "dateCreated",
    "creator": "creator",
    "origin": "origin",
    "spatial": "spatial",
    "description": "description",
    "rights": "rights",
    "legal_body_name": "legalBodyName",
    "source": "source",
}

_LIST_FIELDS = {
    "alternate_names", "script", "vowels", "consonants", "grammatical_rules", "country_region",
    "community", "linguistic_family", "designations", "creator", "spatial", "description", "source",
}

SHORTLIST_FIELDS = (
    "identifier", "designations", "date_created", "creator", "origin",
    "spatial", "description", "rights", "legal_body_name", "source",
)

LANGUAGE_FIELDS = (
    "language_name", "alternate_names", "script", "vowels", "consonants", "grammatical_rules",
    "country_region", "community", "speakers", "linguistic_family",
)


@dataclass(frozen=True)
class LpapRecord:
    identifier: str
    language_name: str
    alternate_names: tuple[str, ...] = ()
    script: tuple[str, ...] = ()
    vowels: tuple[str, ...] = ()
    consonants: tuple[str, ...] = ()
    grammatical_rules: tuple[str, ...] = ()
    country_region: tuple[str, ...] = ()
    community: tuple[str, ...] = ()
    speakers: Speakers | None = None
    # broadest first
    linguistic_family: tuple[str, ...] = ()
    designations: tuple[str, ...] = ()
    date_created: str | None = None
    creator: tuple[str, ...] = ()
    origin: str | None = None
    spatial: tuple[str, ...] = ()
    description: tuple[str, ...] = ()
    rights: str | None = None
    legal_body_name: str | None = None
    source: tuple[str, ...] = ()
    # drafts skip the identifier/name requirement so incomplete records can be validated
    draft: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        for name in _LIST_FIELDS:
            object.__setattr__(self, name, _tuple(getattr(self, name)))
        if not self.draft:
            if not self.identifier or not self.identifier.strip():
                raise MissingIdentifierError()
            if not self.language_name or not self.language_name.strip():
                raise MissingLanguageNameError()
        _check_inventory("vowels", self.vowels)
        _check_inventory("consonants", self.consonants)
        if len(set(self.linguistic_family)) != len(self.linguistic_family):
            raise LpapError("linguisticFamily contains duplicate entries")
        # origin defaults to the first spatial value, the same rule from_dc applies
        if self.origin is None and self.spatial:
            object.__setattr__(self, "origin", self.spatial[0])


@dataclass(frozen=True)
class LanguageFacts:
    """Language-specific values supplied alongside a DC record.

    ``identifier`` and ``origin`` may also be given here; facts override
    whatever the DC record says.
    """

    language_name: str | None = None
    alternate_names: tuple[str, ...] = ()
    script: tuple[str, ...] = ()
    vowels: tuple[str, ...] = ()
    consonants: tuple[str, ...] = ()
    grammatical_rules: tuple[str, ...] = ()
    country_region: tuple[str, ...] = ()
    community: tuple[str, ...] = ()
    speakers: Speakers | None = None
    linguistic_family: tuple[str, ...] = ()
    identifier: str | None = None
    origin: str | None = None

    def __post_init__(self):
        for f in fields(self):
            if f.name in _LIST_FIELDS:
                object.__setattr__(self, f.name, _tuple(getattr(self, f.name)))
        _check_inventory("vowels", self.vowels)
        _check_inventory("consonants", self.consonants)
        if len(set(self.linguistic_family)) != len(self.linguistic_family):
            raise LpapError("linguisticFamily contains duplicate entries")

    @classmethod
    def from_json(cls, data: dict) -> "LanguageFacts":
        if not isinstance(data, dict):
            raise LpapError("language facts must be a JSON object")
        known = {f.name for f in fields(cls)}
        by_element = {v: k for k, v in _ELEMENT_NAMES.items()}
        kwargs = {}
        for key, value in data.items():
            attr = by_element.get(key, key)
            if attr not in known:
                raise LpapError(f"unknown language fact {key!r}")
            kwargs[attr] = value
        if isinstance(kwargs.get("speakers"), dict):
            sp = kwargs["speakers"]
            kwargs["speakers"] = Speakers(sp.get("count"), sp.get("asOf"))
        return cls(**kwargs)


# -- DC interchange ---------------------------------------------------------------

# language facts riding in dc:description, in emission order
_JOINED = ("vowels", "consonants")
_LABELED = (
    "alternate_names", "script", "vowels", "consonants", "grammatical_rules", "country_region",
    "community", "speakers", "linguistic_family", "origin",
)
_LABEL_RE = re.compile(r"^(%s): (.*)$" % "|".join(_ELEMENT_NAMES[n] for n in _LABELED), re.S)
_SPEAKERS_RE = re.compile(r"^(\d+)(?: \(as of (.+)\))?$")


def _first(values: list[str]) -> str | None:
    return values[0] if values else None


def _parse_labeled(descriptions: list[str]) -> tuple[dict, list[str]]:
    by_element = {v: k for k, v in _ELEMENT_NAMES.items()}
    found: dict = {}
    plain: list[str] = []
    for text in descriptions:
        m = _LABEL_RE.match(text)
        if not m:
            plain.append(text)
            continue
        attr, body = by_element[m.group(1)], m.group(2)
        if attr in _JOINED:
            found[attr] = tuple(body.split(", ")) if body else ()
        elif attr == "speakers":
            sm = _SPEAKERS_RE.match(body)
            if not sm:
                plain.append(text)
                continue
            found["speakers"] = Speakers(int(sm.group(1)), sm.group(2))
        elif attr == "origin":
            found["origin"] = body
        else:
            found[attr] = found.get(attr, ()) + (body,)
    return found, plain


def from_dc(dc_record: Record, facts: LanguageFacts | None = None) -> LpapRecord:
    """Build an LPAP record from a DC record plus language facts (facts win)."""
    if dc_record.schema != "dc":
        raise WrongSchemaError("dc", dc_record.schema)
    facts = facts or LanguageFacts()
    labeled, plain = _parse_labeled(get_values(dc_record, ["description"]))

    identifier = facts.identifier or _first(get_values(dc_record, ["identifier"]))
    if not identifier:
        raise MissingIdentifierError()
    language_name = facts.language_name or _first(get_values(dc_record, ["language"]))
    if not language_name:
        raise MissingLanguageNameError()

    spatial = get_values(dc_record, ["coverage", "spatial"])
    lang_fields = {}
    for name in LANGUAGE_FIELDS[1:]:
        ours = getattr(facts, name)
        lang_fields[name] = ours if ours else labeled.get(name, getattr(facts, name))

    return LpapRecord(
        identifier=identifier,
        language_name=language_name,
        designations=get_values(dc_record, ["date", "available"]),
        date_created=_first(get_values(dc_record, ["date", "created"])),
        creator=get_values(dc_record, ["creator"]),
        origin=facts.origin or labeled.get("origin") or _first(spatial),
        spatial=spatial,
        description=plain,
        rights=_first(get_values(dc_record, ["rights"])),
        legal_body_name=_first(get_values(dc_record, ["publisher"])),
        source=get_values(dc_record, ["source"]),
        **lang_fields,
    )


def _labeled_values(record: LpapRecord) -> list[str]:
    out = []
    for name in _LABELED:
        label = _ELEMENT_NAMES[name]
        value = getattr(record, name)
        if not value:
            continue
        if name in _JOINED:
            out.append(f"{label}: {', '.join(value)}")
        elif name == "speakers":
            when = f" (as of {value.as_of})" if value.as_of else ""
            out.append(f"{label}: {value.count}{when}")
        elif name == "origin":
            # implied when it equals the first spatial value
            if not record.spatial or record.spatial[0] != value:
                out.append(f"{label}: {value}")
        else:
            out.extend(f"{label}: {item}" for item in value)
    return out


def to_dc(record: LpapRecord) -> Record:
    dc = Record("dc")
    if record.identifier:
        dc = add_value(dc, ["identifier"], record.identifier)
    if record.language_name:
        dc = add_value(dc, ["language"], record.language_name)
    if record.date_created is not None:
        dc = add_value(dc, ["date", "created"], record.date_created)
    for value in record.creator:
        dc = add_value(dc, ["creator"], value)
    for value in record.spatial:
        dc = add_value(dc, ["coverage", "spatial"], value)
    for value in record.description:
        dc = add_value(dc, ["description"], value)
    for value in _labeled_values(record):
        dc = add_value(dc, ["description"], value)
    if record.rights is not None:
        dc = add_value(dc, ["rights"], record.rights)
    if record.legal_body_name is not None:
        dc = add_value(dc, ["publisher"], record.legal_body_name)
    for value in record.source:
        dc = add_value(dc, ["source"], value)
    for value in record.designations:
        dc = add_value(dc, ["date", "available"], value)
    return dc


# -- canonical record form (schema "lpap") ----------------------------------------

def to_record(record: LpapRecord) -> Record:
    out = Record("lpap")
    for name, element in _ELEMENT_NAMES.items():
        value = getattr(record, name)
        if value is None or value == ():
            continue
        if name == "speakers":
            out = add_value(out, ["speakers", "count"], str(value.count))
            if value.as_of is not None:
                out = add_value(out, ["speakers", "asOf"], value.as_of)
        elif name in _LIST_FIELDS:
            for item in value:
                out = add_value(out, [element], item)
        else:
            out = add_value(out, [element], value)
    return out


def from_record(record: Record, draft: bool = False) -> LpapRecord:
    """Read an ``lpap`` canonical record. ``draft=True`` tolerates missing required fields."""
    if record.schema != "lpap":
        raise WrongSchemaError("lpap", record.schema)
    kwargs: dict = {}
    for name, element in _ELEMENT_NAMES.items():
        if name == "speakers":
            counts = get_values(record, ["speakers", "count"])
            if counts:
                try:
                    count = int(counts[0])
                except ValueError:
                    raise LpapError(f"speakers.count is not an integer: {counts[0]!r}") from None
                kwargs["speakers"] = Speakers(count, _first(get_values(record, ["speakers", "asOf"])))
        elif name in _LIST_FIELDS:
            kwargs[name] = get_values(record, [element])
        else:
            kwargs[name] = _first(get_values(record, [element]))
    kwargs["identifier"] = kwargs["identifier"] or ""
    kwargs["language_name"] = kwargs["language_name"] or ""
    return LpapRecord(draft=draft, **kwargs)


# -- FAIR checks ------------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    passed: bool
    reasons: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"pass": self.passed, "reasons": list(self.reasons)}


@dataclass(frozen=True)
class FairReport:
    findable: Verdict
    accessible: Verdict
    interoperable: Verdict
    reusable: Verdict

    @property
    def overall(self) -> bool:
        return all(v.passed for v in (self.findable, self.accessible, self.interoperable, self.reusable))

    def to_json(self) -> dict:
        return {
            "findable": self.findable.to_json(),
            "accessible": self.accessible.to_json(),
            "interoperable": self.interoperable.to_json(),
            "reusable": self.reusable.to_json(),
            "overall": self.overall,
        }


def _verdict(reasons: list[str]) -> Verdict:
    return Verdict(not reasons, tuple(reasons))


def validate_lpap(record: LpapRecord) -> FairReport:
    """Record-level FAIR checks.

    findable: identifier and language name; accessible: a locatable
    custodian (source or legal body); interoperable: clean DC export and a
    linguistic family; reusable: a rights statement.
    """
    findable = []
    if not record.identifier or not record.identifier.strip():
        findable.append("identifier missing")
    if not record.language_name or not record.language_name.strip():
        findable.append("languageName missing")

    accessible = []
    if not record.source and not record.legal_body_name:
        accessible.append("no custodian: source and legalBodyName both missing")

    interoperable = []
    try:
        findings = strict_check(builtin_registry(), to_dc(record))
    except Exception as exc:  # any export failure is an interoperability failure
        interoperable.append(f"DC export failed: {exc}")
    else:
        interoperable.extend(f"DC export: {f}" for f in findings)
    if not record.linguistic_family:
        interoperable.append("linguisticFamily missing")

    reusable = [] if record.rights else ["rights missing"]
    return FairReport(_verdict(findable), _verdict(accessible), _verdict(interoperable), _verdict(reusable))
