"""Mapping rules and the crosswalk table that indexes them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .registry import Path, Registry, as_path

RULE_KINDS = ("exact", "contextual", "aggregate")

DcTarget = tuple[str, "str | None"]


@dataclass(frozen=True)
class MappingRule:
    source_schema: str
    source_path: Path
    dc_term: str
    dc_qualifier: str | None = None
    kind: str = "exact"
    note: str = ""
    ambiguous: bool = False

    @property
    def target(self) -> DcTarget:
        return (self.dc_term, self.dc_qualifier)

    @property
    def dc_path(self) -> Path:
        if self.dc_qualifier:
            return (self.dc_term, self.dc_qualifier)
        return (self.dc_term,)

    @property
    def key(self) -> tuple:
        return (self.source_schema, self.source_path, self.dc_term, self.dc_qualifier)


def dc_target_of(path: Sequence[str]) -> DcTarget:
    """``("date", "created")`` for a qualified DC path, ``("title", None)`` for a core one."""
    path = as_path(path)
    return (path[0], path[1] if len(path) > 1 else None)


def dc_label(term: str, qualifier: str | None) -> str:
    return f"{term}.{qualifier}" if qualifier else term


class CrosswalkTable:
    """Ordered rules plus forward and reverse indexes.

    Table order is meaningful: reverse lookups return paths in rule order
    and the first one is where values are emitted.
    """

    def __init__(self, rules: Iterable[MappingRule]):
        self.rules: tuple[MappingRule, ...] = tuple(rules)
        seen = set()
        self._forward: dict[tuple[str, Path], list[MappingRule]] = {}
        self._reverse: dict[tuple[str, str | None, str], list[MappingRule]] = {}
        for rule in self.rules:
            if rule.key in seen:
                raise ValueError(f"duplicate mapping rule {rule.key!r}")
            seen.add(rule.key)
            self._forward.setdefault((rule.source_schema, rule.source_path), []).append(rule)
            self._reverse.setdefault((rule.dc_term, rule.dc_qualifier, rule.source_schema), []).append(rule)

    def __len__(self) -> int:
        return len(self.rules)

    def __eq__(self, other) -> bool:
        return isinstance(other, CrosswalkTable) and self.rules == other.rules

    def forward(self, schema: str, path: Sequence[str]) -> list[MappingRule]:
        return list(self._forward.get((schema, as_path(path)), ()))

    def reverse(self, term: str, qualifier: str | None, schema: str) -> list[MappingRule]:
        return list(self._reverse.get((term, qualifier, schema), ()))

    def for_schema(self, schema: str) -> list[MappingRule]:
        return [r for r in self.rules if r.source_schema == schema]


def identity_rules(registry: Registry) -> list[MappingRule]:
    """One rule per DC term (core and qualified) mapping it onto itself."""
    rules = []
    for el in registry.elements("dc"):
        term, qualifier = dc_target_of(el.path)
        rules.append(MappingRule("dc", el.path, term, qualifier, "exact", "identity"))
    return rules
