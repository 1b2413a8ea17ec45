"""Dublin Core pivot crosswalk.

Records move ``source -> dc -> target``. Only mappings *to* DC are
authored (the shipped table); every pairwise conversion is derived by
running a forward leg and then a reverse leg through the same table.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

from .errors import WrongSchemaError
from .formats import load_crosswalk_table
from .record import FlatEntry, Record, TreeBuilder, leaves
from .registry import ElementDef, Path, Registry, builtin_registry
from .table import CrosswalkTable, DcTarget, MappingRule, dc_label, dc_target_of

# Shared components as listed in the findings of the source study.
CLAIMED_SHARED = frozenset(
    {"source", "publisher", "identifier", "format", "coverage.spatial", "creator", "title"}
)

# Elements the source study calls unique to each standard.
CLAIMED_UNIQUE = {
    "archaeo-core": ("Artefact Techniques", "Artefact Munsell Number", "Artefact Comparatives"),
    "carare": (
        "Provenance", "Heritage Asset Type", "Materials", "Craft", "Link", "Was Present at",
        "Is Successor to", "Is Replica of", "Was Digitised by", "Has Representation",
    ),
    "lido": ("repositoryName", "legalBodyWeblink", "gml", "term"),
}

HERITAGE_SCHEMAS = ("archaeo-core", "carare", "lido")


@lru_cache(maxsize=None)
def builtin_table() -> CrosswalkTable:
    text = (resources.files("xwalk") / "data" / "table1.csv").read_text(encoding="utf-8")
    return load_crosswalk_table(text, builtin_registry())


@dataclass(frozen=True)
class Provenance:
    output_path: Path
    source_path: Path
    kind: str
    via: Path | None = None
    alternates: tuple[Path, ...] = ()

    @property
    def note(self) -> str:
        if not self.alternates:
            return ""
        return "alternates: " + "; ".join("/".join(p) for p in self.alternates)


@dataclass(frozen=True)
class LossReport:
    unmapped: tuple[tuple[Path, int], ...] = ()
    collisions: tuple[tuple[Path, tuple[Path, ...]], ...] = ()
    mapped: int = 0
    total: int = 0

    @property
    def fidelity(self) -> float:
        # an empty record loses nothing
        return 1.0 if self.total == 0 else self.mapped / self.total

    def to_json(self) -> dict:
        return {
            "fidelity": self.fidelity,
            "mapped": self.mapped,
            "total": self.total,
            "unmapped": [{"path": list(p), "count": n} for p, n in self.unmapped],
            "collisions": [
                {"target": list(t), "sources": [list(s) for s in srcs]} for t, srcs in self.collisions
            ],
        }


@dataclass(frozen=True)
class CrosswalkResult:
    output: Record
    loss: LossReport
    provenance: tuple[Provenance, ...] = field(default_factory=tuple)


def map_element(table: CrosswalkTable, schema: str, path: Sequence[str]) -> list[DcTarget]:
    return [r.target for r in table.forward(schema, path)]


def reverse_map(table: CrosswalkTable, dc_term: str, dc_qualifier: str | None, target: str) -> list[Path]:
    return [r.source_path for r in table.reverse(dc_term, dc_qualifier, target)]


def _collisions(pairs: Iterable[tuple[Path, Path]]) -> tuple:
    by_target: dict[Path, list[Path]] = {}
    for target, source in pairs:
        srcs = by_target.setdefault(target, [])
        if source not in srcs:
            srcs.append(source)
    return tuple((t, tuple(s)) for t, s in by_target.items() if len(s) > 1)


def _unmapped(paths: Iterable[Path]) -> tuple:
    return tuple(Counter(paths).items())


class _Leg:
    """One pass through the table, remembering which input leaf fed each output leaf."""

    def __init__(self, schema: str):
        self.builder = TreeBuilder(schema)
        self.provenance: list[Provenance] = []
        self.fed_by: list[int] = []
        self.lost: list[int] = []

    def put(self, idx: int, entry: FlatEntry, out_path: Path, prov: Provenance) -> None:
        self.builder.emit(out_path, entry.value, entry.lang, entry.attrs, origin=entry.position[0])
        self.provenance.append(prov)
        self.fed_by.append(idx)


def _forward(table: CrosswalkTable, record: Record) -> tuple[_Leg, list[FlatEntry]]:
    leg = _Leg("dc")
    entries = leaves(record)
    for i, entry in enumerate(entries):
        rules = table.forward(record.schema, entry.path)
        if not rules:
            leg.lost.append(i)
        for rule in rules:
            leg.put(i, entry, rule.dc_path, Provenance(rule.dc_path, entry.path, rule.kind))
    return leg, entries


def _reverse_rules(table: CrosswalkTable, path: Path, target: str) -> list[MappingRule]:
    if len(path) > 2:
        return []
    term, qualifier = dc_target_of(path)
    return table.reverse(term, qualifier, target)


def _backward(table: CrosswalkTable, dc_record: Record, target: str) -> tuple[_Leg, list[FlatEntry]]:
    leg = _Leg(target)
    entries = leaves(dc_record)
    for i, entry in enumerate(entries):
        rules = _reverse_rules(table, entry.path, target)
        if not rules:
            leg.lost.append(i)
            continue
        first, rest = rules[0], rules[1:]
        prov = Provenance(
            first.source_path, entry.path, first.kind,
            alternates=tuple(r.source_path for r in rest),
        )
        leg.put(i, entry, first.source_path, prov)
    return leg, entries


def _result(leg: _Leg, entries: list[FlatEntry], target_key) -> CrosswalkResult:
    mapped = len(entries) - len(leg.lost)
    loss = LossReport(
        unmapped=_unmapped(entries[i].path for i in leg.lost),
        collisions=_collisions((target_key(p), p.source_path) for p in leg.provenance),
        mapped=mapped,
        total=len(entries),
    )
    return CrosswalkResult(leg.builder.build(), loss, tuple(leg.provenance))


def to_pivot(table: CrosswalkTable, registry: Registry, record: Record) -> CrosswalkResult:
    """Forward leg: copy every mapped leaf value onto its Dublin Core term."""
    registry.schema(record.schema)
    leg, entries = _forward(table, record)
    return _result(leg, entries, lambda p: p.output_path)


def from_pivot(table: CrosswalkTable, registry: Registry, dc_record: Record, target: str) -> CrosswalkResult:
    """Reverse leg: emit each DC leaf at the first path the target schema maps to it."""
    if dc_record.schema != "dc":
        raise WrongSchemaError("dc", dc_record.schema)
    registry.schema(target)
    leg, entries = _backward(table, dc_record, target)
    return _result(leg, entries, lambda p: p.output_path)


def transform(table: CrosswalkTable, registry: Registry, record: Record, target: str) -> CrosswalkResult:
    """Convert ``record`` into ``target`` through the DC pivot.

    Fidelity is end to end: the share of input leaves that reach the
    target. Losses are reported against the original input paths.
    """
    registry.schema(record.schema)
    registry.schema(target)
    fwd, entries = _forward(table, record)
    pivot = fwd.builder.build()
    back, _ = _backward(table, pivot, target)

    survived = {fwd.fed_by[j] for j in back.fed_by}
    lost = [i for i in range(len(entries)) if i not in survived]
    provenance = []
    for j, prov in zip(back.fed_by, back.provenance):
        origin = fwd.provenance[j]
        provenance.append(
            Provenance(prov.output_path, origin.source_path, prov.kind, via=origin.output_path,
                       alternates=prov.alternates)
        )
    loss = LossReport(
        unmapped=_unmapped(entries[i].path for i in lost),
        collisions=_collisions((p.output_path, p.source_path) for p in provenance),
        mapped=len(survived),
        total=len(entries),
    )
    return CrosswalkResult(back.builder.build(), loss, tuple(provenance))


# -- coverage analysis -----------------------------------------------------------

def _group(target: DcTarget) -> str:
    """Core-element grouping, except spatial coverage which stays distinct."""
    term, qualifier = target
    if (term, qualifier) == ("coverage", "spatial"):
        return "coverage.spatial"
    return term


def _reachable(table: CrosswalkTable, schema: str) -> set[str]:
    return {_group(r.target) for r in table.for_schema(schema)}


def shared_terms(table: CrosswalkTable, schemas: Iterable[str]) -> frozenset[str]:
    """Grouped DC targets reached by at least one rule from every schema given.

    The empty set of schemas yields every DC target (vacuous truth).
    """
    schemas = list(schemas)
    if not schemas:
        return frozenset(_reachable(table, "dc"))
    common = _reachable(table, schemas[0])
    for schema in schemas[1:]:
        common &= _reachable(table, schema)
    return frozenset(common)


def unique_elements(table: CrosswalkTable, registry: Registry, schema: str) -> list[ElementDef]:
    return [
        el for el in registry.elements(schema)
        if not el.container and not table.forward(schema, el.path)
    ]


def coverage_report(table: CrosswalkTable, registry: Registry) -> dict:
    shared = shared_terms(table, HERITAGE_SCHEMAS)
    unique = {s: unique_elements(table, registry, s) for s in HERITAGE_SCHEMAS}

    counts = {}
    for s in HERITAGE_SCHEMAS:
        total = sum(1 for el in registry.elements(s) if not el.container)
        counts[s] = {
            "elements": total,
            "mapped": total - len(unique[s]),
            "unmapped": len(unique[s]),
            "rules": len(table.for_schema(s)),
        }

    plus = sorted(shared - CLAIMED_SHARED)
    minus = sorted(CLAIMED_SHARED - shared)
    parts = []
    if plus:
        parts.append(", ".join(f"+{t}" for t in plus) + " (computed, not claimed)")
    if minus:
        parts.append(", ".join(f"-{t}" for t in minus) + " (claimed, not supported by encoded cells)")

    footnotes = []
    for s, names in CLAIMED_UNIQUE.items():
        for el in registry.elements(s):
            if el.label in names or el.name in names:
                targets = map_element(table, s, el.path)
                if targets:
                    mapped_to = ", ".join(dc_label(*t) for t in targets)
                    footnotes.append(
                        f"{s}: {el.label!r} is claimed unique but the table maps it to {mapped_to}"
                    )

    return {
        "shared": sorted(shared),
        "unique": {s: ["/".join(el.path) for el in els] for s, els in unique.items()},
        "counts": counts,
        "delta": {
            "claimed": sorted(CLAIMED_SHARED),
            "computed_not_claimed": plus,
            "claimed_not_computed": minus,
            "summary": "; ".join(parts),
            "footnotes": footnotes,
            "ambiguous_rules": [
                {
                    "schema": r.source_schema,
                    "path": "/".join(r.source_path),
                    "dc": dc_label(r.dc_term, r.dc_qualifier),
                    "note": r.note,
                }
                for r in table.rules if r.ambiguous
            ],
        },
    }
