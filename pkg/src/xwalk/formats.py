"""Text formats: canonical JSON records, generic XML, oai_dc XML, crosswalk CSV."""

from __future__ import annotations

import csv
import io
import json
import xml.etree.ElementTree as ET
from xml.sax.saxutils import escape, quoteattr

from .errors import (
    MalformedPathError,
    MixedContentError,
    RecordSyntaxError,
    TableSyntaxError,
    UnknownDcTermError,
    UnknownSchemaError,
    UnresolvableSourcePathError,
    WrongSchemaError,
)
from .record import ElementInstance, Record, leaves
from .registry import Registry, builtin_registry
from .table import RULE_KINDS, CrosswalkTable, MappingRule, identity_rules

XML_LANG = "{http://www.w3.org/XML/1998/namespace}lang"
OAI_DC_NS = "http://www.openarchives.org/OAI/2.0/oai_dc/"
DC_NS = "http://purl.org/dc/elements/1.1/"
XSI_NS = "http://www.w3.org/2001/XMLSchema-instance"
OAI_DC_XSD = "http://www.openarchives.org/OAI/2.0/oai_dc.xsd"

TABLE_HEADER = ["source_schema", "source_path", "dc_term", "dc_qualifier", "kind", "note"]
AMBIGUOUS_MARK = "[ambiguous]"


# -- canonical JSON -----------------------------------------------------------

def _node_from_json(obj, where: str) -> ElementInstance:
    if not isinstance(obj, dict):
        raise MalformedPathError(f"{where}: element must be an object")
    has_seg, has_path = "segment" in obj, "path" in obj
    if has_seg == has_path:
        raise MalformedPathError(f"{where}: element needs exactly one of 'segment' or 'path'")
    if has_seg:
        segments = [obj["segment"]]
    else:
        segments = obj["path"]
        if not isinstance(segments, list) or not segments:
            raise MalformedPathError(f"{where}: 'path' must be a non-empty list")
    for seg in segments:
        if not isinstance(seg, str) or not seg.strip():
            raise MalformedPathError(f"{where}: invalid path segment {seg!r}")

    value = obj.get("value")
    lang = obj.get("lang")
    attrs = obj.get("attrs") or {}
    if value is not None and not isinstance(value, str):
        raise MalformedPathError(f"{where}: 'value' must be a string")
    if lang is not None and not isinstance(lang, str):
        raise MalformedPathError(f"{where}: 'lang' must be a string")
    if not isinstance(attrs, dict) or not all(isinstance(v, str) for v in attrs.values()):
        raise MalformedPathError(f"{where}: 'attrs' must map names to strings")
    kids = obj.get("children") or []
    if not isinstance(kids, list):
        raise MalformedPathError(f"{where}: 'children' must be a list")
    children = tuple(_node_from_json(c, f"{where}/{i}") for i, c in enumerate(kids))

    # a "path" shorthand expands into nested containers around the leaf
    node = ElementInstance(segments[-1], value, lang, attrs, children)
    for seg in reversed(segments[:-1]):
        node = ElementInstance(seg, children=(node,))
    return node


def parse_canonical(text: str, registry: Registry | None = None) -> Record:
    registry = registry or builtin_registry()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RecordSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict) or "schema" not in doc:
        raise RecordSyntaxError("canonical record must be an object with a 'schema' key")
    schema = doc["schema"]
    if not isinstance(schema, str) or schema not in registry:
        raise UnknownSchemaError(str(schema))
    elements = doc.get("elements", [])
    if not isinstance(elements, list):
        raise RecordSyntaxError("'elements' must be a list")
    return Record(schema, tuple(_node_from_json(e, f"elements/{i}") for i, e in enumerate(elements)))


def _node_to_json(node: ElementInstance) -> dict:
    out: dict = {"segment": node.segment}
    if node.value is not None:
        out["value"] = node.value
    if node.lang is not None:
        out["lang"] = node.lang
    if node.attrs:
        out["attrs"] = {k: node.attrs[k] for k in sorted(node.attrs)}
    if node.children:
        out["children"] = [_node_to_json(c) for c in node.children]
    return out


def record_to_json(record: Record) -> dict:
    return {"schema": record.schema, "elements": [_node_to_json(n) for n in record.roots]}


def dumps(obj) -> str:
    """House JSON style: 2-space indent, UTF-8 text, trailing newline."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def serialize_canonical(record: Record) -> str:
    return dumps(record_to_json(record))


# -- XML ------------------------------------------------------------------------

def _local(name: str) -> str:
    return name.rsplit("}", 1)[-1].split(":")[-1]


def _node_from_xml(elem: ET.Element) -> ElementInstance:
    text = elem.text if elem.text and elem.text.strip() else None
    children = list(elem)
    if children and (text or any(c.tail and c.tail.strip() for c in children)):
        raise MixedContentError(f"element <{_local(elem.tag)}> mixes text and child elements")
    attrs = {}
    lang = None
    for key, val in elem.attrib.items():
        if key == XML_LANG:
            lang = val
        else:
            attrs[_local(key)] = val
    return ElementInstance(
        _local(elem.tag),
        text.strip() if text else None,
        lang,
        attrs,
        tuple(_node_from_xml(c) for c in children),
    )


def parse_xml(text: str | bytes, schema: str, registry: Registry | None = None) -> Record:
    """Map an XML document onto a record; the document element is a wrapper.

    Tags become segments (namespace prefixes dropped), text becomes the
    value, ``xml:lang`` the language tag and other attributes ``attrs``.
    """
    registry = registry or builtin_registry()
    registry.schema(schema)
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        line, col = exc.position
        raise RecordSyntaxError(f"malformed XML: {exc}", line, col + 1) from None
    wrapper = _node_from_xml(root)
    return Record(schema, wrapper.children)


def serialize_oai_dc(record: Record) -> str:
    """Serialize a DC record as ``oai_dc``; qualified terms collapse to their core element."""
    if record.schema != "dc":
        raise WrongSchemaError("dc", record.schema)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<oai_dc:dc xmlns:oai_dc="{OAI_DC_NS}" xmlns:dc="{DC_NS}" xmlns:xsi="{XSI_NS}" '
        f'xsi:schemaLocation="{OAI_DC_NS} {OAI_DC_XSD}">',
    ]
    for entry in leaves(record):
        term = entry.path[0]
        lang = f" xml:lang={quoteattr(entry.lang)}" if entry.lang else ""
        lines.append(f"  <dc:{term}{lang}>{escape(entry.value)}</dc:{term}>")
    lines.append("</oai_dc:dc>")
    return "\n".join(lines) + "\n"


# -- crosswalk CSV ----------------------------------------------------------------

def load_crosswalk_table(text: str, registry: Registry | None = None) -> CrosswalkTable:
    """Read a crosswalk CSV and validate every rule against the registry.

    DC identity rules are appended for any DC term the file does not map
    explicitly, so every table can route DC records through unchanged.
    """
    registry = registry or builtin_registry()
    dc = registry.schema("dc")
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise TableSyntaxError("empty crosswalk table") from None
    except csv.Error as exc:
        raise TableSyntaxError(str(exc), 1) from None
    if [h.strip() for h in header] != TABLE_HEADER:
        raise TableSyntaxError(f"header must be {','.join(TABLE_HEADER)}", 1)

    rules: list[MappingRule] = []
    seen: set = set()
    try:
        for row in reader:
            line = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(TABLE_HEADER):
                raise TableSyntaxError(f"expected {len(TABLE_HEADER)} fields, got {len(row)}", line)
            schema, raw_path, term, qualifier, kind, note = (c.strip() for c in row)
            if schema not in registry:
                raise UnknownSchemaError(schema)
            path = tuple(seg.strip() for seg in raw_path.split("/"))
            if not raw_path or any(not seg for seg in path):
                raise TableSyntaxError(f"malformed source path {raw_path!r}", line)
            if path not in registry.schema(schema):
                raise UnresolvableSourcePathError(schema, path, line)
            qualifier = qualifier or None
            dc_path = (term, qualifier) if qualifier else (term,)
            if not term or dc_path not in dc:
                raise UnknownDcTermError(term, qualifier, line)
            if kind not in RULE_KINDS:
                raise TableSyntaxError(f"unknown rule kind {kind!r}", line)
            if kind == "contextual" and len(path) < 2:
                raise TableSyntaxError("contextual rule needs a parent segment in its path", line)
            ambiguous = note.startswith(AMBIGUOUS_MARK)
            if ambiguous:
                note = note[len(AMBIGUOUS_MARK):].strip()
            rule = MappingRule(schema, path, term, qualifier, kind, note, ambiguous)
            if rule.key in seen:
                raise TableSyntaxError(f"duplicate rule for {raw_path!r} -> {'.'.join(dc_path)}", line)
            seen.add(rule.key)
            rules.append(rule)
    except csv.Error as exc:
        raise TableSyntaxError(str(exc), reader.line_num) from None

    rules.extend(r for r in identity_rules(registry) if r.key not in seen)
    return CrosswalkTable(rules)


def dump_crosswalk_table(table: CrosswalkTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_HEADER)
    for r in table.rules:
        note = f"{AMBIGUOUS_MARK} {r.note}".strip() if r.ambiguous else r.note
        writer.writerow([r.source_schema, "/".join(r.source_path), r.dc_term, r.dc_qualifier or "", r.kind, note])
    return buf.getvalue()
