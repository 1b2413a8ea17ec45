"""Schema definitions and the built-in registry.

Each schema is a flat, ordered list of :class:`ElementDef` entries keyed by
their label path, e.g. ``("titleSet", "appellationValue")``.  The five
built-in schemas ship as JSON descriptors under ``xwalk/schemas``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

from .errors import (
    DuplicatePathError,
    OrphanPathError,
    SchemaParseError,
    UnknownPathError,
    UnknownSchemaError,
)

SCHEMA_IDS = ("archaeo-core", "carare", "lido", "dc", "lpap")

DATATYPES = frozenset(
    {"text", "date", "coordinates", "identifier", "uri", "controlled-term", "count"}
)

Path = tuple[str, ...]


def as_path(path: Iterable[str] | str) -> Path:
    if isinstance(path, str):
        return (path,)
    return tuple(path)


@dataclass(frozen=True)
class ElementDef:
    schema: str
    path: Path
    label: str
    definition: str = ""
    repeatable: bool = True
    required: bool = False
    datatype: str = "text"
    # containers group children and never carry a mapped value of their own
    container: bool = False

    @property
    def name(self) -> str:
        return self.path[-1]

    def to_descriptor(self) -> dict:
        out = {
            "path": list(self.path),
            "label": self.label,
            "definition": self.definition,
            "datatype": self.datatype,
            "repeatable": self.repeatable,
            "required": self.required,
        }
        if self.container:
            out["container"] = True
        return out


@dataclass(frozen=True)
class SchemaDef:
    id: str
    name: str
    description: str
    elements: tuple[ElementDef, ...]
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        index: dict[Path, ElementDef] = {}
        for el in self.elements:
            _check_path(self.id, el.path)
            if el.path in index:
                raise DuplicatePathError(self.id, el.path)
            index[el.path] = el
        for el in self.elements:
            if len(el.path) > 1 and el.path[:-1] not in index:
                raise OrphanPathError(self.id, el.path)
        object.__setattr__(self, "_index", index)

    def get(self, path: Sequence[str]) -> ElementDef | None:
        return self._index.get(as_path(path))

    def __contains__(self, path) -> bool:
        return as_path(path) in self._index

    def to_descriptor(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "description": self.description,
            "elements": [el.to_descriptor() for el in self.elements],
        }


def _check_path(schema: str, path: Path) -> None:
    if not path:
        raise SchemaParseError(f"{schema}: element path must not be empty")
    for seg in path:
        if not isinstance(seg, str) or not seg.strip() or seg != seg.strip():
            raise SchemaParseError(f"{schema}: invalid path segment {seg!r} in {list(path)!r}")


class Registry:
    """Immutable mapping of schema id to :class:`SchemaDef`."""

    def __init__(self, schemas: Iterable[SchemaDef]):
        self._schemas = {s.id: s for s in schemas}

    def __contains__(self, schema_id: str) -> bool:
        return schema_id in self._schemas

    def __iter__(self):
        return iter(self._schemas.values())

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(self._schemas)

    def schema(self, schema_id: str) -> SchemaDef:
        try:
            return self._schemas[schema_id]
        except KeyError:
            raise UnknownSchemaError(schema_id) from None

    def lookup(self, schema_id: str, path: Sequence[str]) -> ElementDef:
        el = self.schema(schema_id).get(path)
        if el is None:
            raise UnknownPathError(schema_id, path)
        return el

    def elements(self, schema_id: str) -> list[ElementDef]:
        return list(self.schema(schema_id).elements)


def load_schema(document: str) -> SchemaDef:
    """Parse a JSON schema descriptor into a validated :class:`SchemaDef`."""
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SchemaParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise SchemaParseError("descriptor must be a JSON object")
    for key in ("id", "name", "elements"):
        if key not in data:
            raise SchemaParseError(f"descriptor is missing {key!r}")
    schema_id = data["id"]
    if not isinstance(schema_id, str) or not schema_id:
        raise SchemaParseError("descriptor id must be a non-empty string")
    if not isinstance(data["elements"], list):
        raise SchemaParseError("descriptor elements must be a list")

    elements = []
    for i, raw in enumerate(data["elements"]):
        if not isinstance(raw, dict) or not isinstance(raw.get("path"), list):
            raise SchemaParseError(f"{schema_id}: element #{i} needs a path list")
        path = tuple(raw["path"])
        _check_path(schema_id, path)
        datatype = raw.get("datatype", "text")
        if datatype not in DATATYPES:
            raise SchemaParseError(f"{schema_id}: element #{i} has unknown datatype {datatype!r}")
        elements.append(
            ElementDef(
                schema=schema_id,
                path=path,
                label=raw.get("label", path[-1]),
                definition=raw.get("definition", ""),
                repeatable=bool(raw.get("repeatable", True)),
                required=bool(raw.get("required", False)),
                datatype=datatype,
                container=bool(raw.get("container", False)),
            )
        )
    return SchemaDef(
        id=schema_id,
        name=data["name"],
        description=data.get("description", ""),
        elements=tuple(elements),
    )


def dump_schema(schema: SchemaDef) -> str:
    return json.dumps(schema.to_descriptor(), indent=2, ensure_ascii=False) + "\n"


@lru_cache(maxsize=None)
def builtin_registry() -> Registry:
    """The registry of the five shipped schemas, loaded once per process."""
    pkg = resources.files("xwalk") / "schemas"
    schemas = [load_schema((pkg / f"{sid}.json").read_text(encoding="utf-8")) for sid in SCHEMA_IDS]
    return Registry(schemas)


def lookup_element(registry: Registry, schema: str, path: Sequence[str]) -> ElementDef:
    return registry.lookup(schema, path)


def list_elements(registry: Registry, schema: str) -> list[ElementDef]:
    return registry.elements(schema)
