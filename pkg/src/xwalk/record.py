"""Hierarchical metadata records with value semantics.

A :class:`Record` is a schema id plus an ordered forest of
:class:`ElementInstance` nodes.  Both are frozen; every operation that
"changes" a record returns a new one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

from .errors import EmptyPathError
from .registry import Path, Registry, as_path


@dataclass(frozen=True)
class ElementInstance:
    segment: str
    value: str | None = None
    lang: str | None = None
    attrs: dict[str, str] = field(default_factory=dict)
    children: tuple["ElementInstance", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "attrs", dict(self.attrs))
        object.__setattr__(self, "children", tuple(self.children))

    @property
    def is_empty(self) -> bool:
        return self.value is None and not self.children


@dataclass(frozen=True)
class Record:
    schema: str
    roots: tuple[ElementInstance, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(self.roots))


class FlatEntry(NamedTuple):
    path: Path
    value: str | None
    lang: str | None
    attrs: dict[str, str]
    # index path from the roots, e.g. (0, 2) = third child of the first root
    position: tuple[int, ...]


def _walk(nodes, prefix: Path, pos: tuple[int, ...]) -> Iterator[FlatEntry]:
    for i, node in enumerate(nodes):
        path = prefix + (node.segment,)
        here = pos + (i,)
        yield FlatEntry(path, node.value, node.lang, dict(node.attrs), here)
        yield from _walk(node.children, path, here)


def flatten(record: Record) -> list[FlatEntry]:
    """Depth-first pre-order listing of every instance with its full path."""
    return list(_walk(record.roots, (), ()))


def leaves(record: Record) -> list[FlatEntry]:
    """Entries that carry a value; these are what crosswalks count and move."""
    return [e for e in flatten(record) if e.value is not None]


def get_values(record: Record, path: Sequence[str]) -> list[str]:
    target = as_path(path)
    return [e.value for e in flatten(record) if e.path == target and e.value is not None]


class _Node:
    """Mutable twin of ElementInstance used while building trees."""

    __slots__ = ("segment", "value", "lang", "attrs", "children")

    def __init__(self, segment, value=None, lang=None, attrs=None, children=None):
        self.segment = segment
        self.value = value
        self.lang = lang
        self.attrs = dict(attrs or {})
        self.children = list(children or [])

    @classmethod
    def thaw(cls, inst: ElementInstance) -> "_Node":
        return cls(inst.segment, inst.value, inst.lang, inst.attrs, [cls.thaw(c) for c in inst.children])

    def freeze(self) -> ElementInstance:
        return ElementInstance(
            self.segment, self.value, self.lang, self.attrs, tuple(c.freeze() for c in self.children)
        )


def _last_named(nodes: list[_Node], segment: str) -> _Node | None:
    for node in reversed(nodes):
        if node.segment == segment:
            return node
    return None


def add_value(
    record: Record,
    path: Sequence[str],
    value: str,
    lang: str | None = None,
    attrs: dict[str, str] | None = None,
) -> Record:
    """Return a copy of ``record`` with one new leaf at ``path``.

    Missing intermediate containers are created; existing ones are reused
    (the last sibling with a matching segment). The leaf itself is always new.
    """
    path = as_path(path)
    if not path:
        raise EmptyPathError()
    roots = [_Node.thaw(r) for r in record.roots]
    siblings = roots
    for seg in path[:-1]:
        parent = _last_named(siblings, seg)
        if parent is None:
            parent = _Node(seg)
            siblings.append(parent)
        siblings = parent.children
    siblings.append(_Node(path[-1], value, lang, attrs))
    return Record(record.schema, tuple(n.freeze() for n in roots))


class TreeBuilder:
    """Accumulates leaves into a new record, grouping by origin.

    A container is shared between consecutive leaves only when they came
    from the same source subtree (``origin``). This keeps separately
    recorded groups separate, e.g. two distinct ``titleSet`` wrappers.
    """

    def __init__(self, schema: str):
        self.schema = schema
        self._roots: list[_Node] = []
        self._origins: list[object] = []

    def emit(self, path: Sequence[str], value, lang=None, attrs=None, origin=None) -> None:
        path = as_path(path)
        if not path:
            raise EmptyPathError()
        if len(path) == 1:
            self._roots.append(_Node(path[0], value, lang, attrs))
            self._origins.append(origin)
            return
        if self._roots and self._roots[-1].segment == path[0] and self._origins[-1] == origin:
            node = self._roots[-1]
        else:
            node = _Node(path[0])
            self._roots.append(node)
            self._origins.append(origin)
        for seg in path[1:-1]:
            if node.children and node.children[-1].segment == seg:
                node = node.children[-1]
            else:
                child = _Node(seg)
                node.children.append(child)
                node = child
        node.children.append(_Node(path[-1], value, lang, attrs))

    def build(self) -> Record:
        return Record(self.schema, tuple(n.freeze() for n in self._roots))


class Finding(NamedTuple):
    path: Path
    position: tuple[int, ...]

    def __str__(self) -> str:
        return f"unknown path {'/'.join(self.path)!r} at {'.'.join(map(str, self.position))}"


def strict_check(registry: Registry, record: Record) -> list[Finding]:
    """One finding per instance whose full path is not defined by the schema."""
    schema = registry.schema(record.schema)
    return [Finding(e.path, e.position) for e in flatten(record) if e.path not in schema]
