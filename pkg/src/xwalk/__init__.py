"""Metadata crosswalks through a Dublin Core pivot, and a language preservation profile."""

from .crosswalk import (
    builtin_table,
    coverage_report,
    from_pivot,
    map_element,
    reverse_map,
    shared_terms,
    to_pivot,
    transform,
    unique_elements,
)
from .formats import (
    load_crosswalk_table,
    parse_canonical,
    parse_xml,
    serialize_canonical,
    serialize_oai_dc,
)
from .record import ElementInstance, Record, add_value, flatten, get_values, strict_check
from .registry import builtin_registry, list_elements, load_schema, lookup_element

__version__ = "0.1.0"

__all__ = [
    "ElementInstance",
    "Record",
    "add_value",
    "builtin_registry",
    "builtin_table",
    "coverage_report",
    "flatten",
    "from_pivot",
    "get_values",
    "list_elements",
    "load_crosswalk_table",
    "load_schema",
    "lookup_element",
    "map_element",
    "parse_canonical",
    "parse_xml",
    "reverse_map",
    "serialize_canonical",
    "serialize_oai_dc",
    "shared_terms",
    "strict_check",
    "to_pivot",
    "transform",
    "unique_elements",
]
