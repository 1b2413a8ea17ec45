"""Bulk record acquisition: a small OAI-PMH ListRecords client and directory ingest."""

from __future__ import annotations

import logging
import re
import time
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable
from urllib.parse import urlparse

import requests

from .errors import HarvestConfigError, NetworkError, ProtocolError, XwalkError
from .formats import parse_canonical, parse_xml
from .record import Record
from .registry import Registry, builtin_registry

log = logging.getLogger(__name__)

OAI_NS = "http://www.openarchives.org/OAI/2.0/"
_NS = {"oai": OAI_NS}
_UTC_DATE = re.compile(r"^\d{4}-\d{2}-\d{2}(T\d{2}:\d{2}:\d{2}Z)?$")


@dataclass(frozen=True)
class HarvestConfig:
    endpoint: str
    metadata_prefix: str = "oai_dc"
    from_date: str | None = None
    set_spec: str | None = None
    max_records: int | None = None
    retry_limit: int = 3
    backoff_base_millis: int = 500
    timeout: float = 30.0

    def __post_init__(self):
        url = urlparse(self.endpoint or "")
        if url.scheme not in ("http", "https") or not url.netloc:
            raise HarvestConfigError(f"endpoint must be an absolute http(s) URL: {self.endpoint!r}")
        if self.retry_limit < 0:
            raise HarvestConfigError("retry_limit must be >= 0")
        if self.backoff_base_millis < 0:
            raise HarvestConfigError("backoff_base_millis must be >= 0")
        if self.max_records is not None and self.max_records < 1:
            raise HarvestConfigError("max_records must be >= 1")
        if self.from_date is not None and not _UTC_DATE.match(self.from_date):
            raise HarvestConfigError(f"from must be a UTC date or datetime: {self.from_date!r}")
        if not self.metadata_prefix:
            raise HarvestConfigError("metadata_prefix must not be empty")

    def backoff_delays(self) -> list[float]:
        """Seconds slept before each retry; doubles per attempt, no jitter."""
        return [self.backoff_base_millis * (2 ** i) / 1000.0 for i in range(self.retry_limit)]


@dataclass(frozen=True)
class HarvestedRecord:
    identifier: str
    datestamp: str
    record: Record | None
    # raw metadata XML, kept when the prefix is not parsed
    raw: str | None = None
    note: str = ""


@dataclass
class HarvestBatch:
    records: list[HarvestedRecord] = field(default_factory=list)
    incomplete: bool = False
    errors: list[tuple[str, str]] = field(default_factory=list)


def _fetch(session, config: HarvestConfig, params: dict, sleep: Callable[[float], None]) -> bytes:
    delays = config.backoff_delays()
    last: BaseException | str = ""
    for attempt in range(config.retry_limit + 1):
        if attempt:
            sleep(delays[attempt - 1])
        try:
            resp = session.get(config.endpoint, params=params, timeout=config.timeout)
        except (requests.ConnectionError, requests.Timeout) as exc:
            last = exc
            log.warning("request to %s failed (attempt %d): %s", config.endpoint, attempt + 1, exc)
            continue
        if resp.status_code >= 500:
            last = f"HTTP {resp.status_code}"
            log.warning("request to %s got %s (attempt %d)", config.endpoint, resp.status_code, attempt + 1)
            continue
        if resp.status_code != 200:
            raise ProtocolError(f"HTTP{resp.status_code}", resp.reason or "")
        return resp.content
    raise NetworkError(config.endpoint, config.retry_limit + 1, last)


def _text(elem: ET.Element | None) -> str:
    return (elem.text or "").strip() if elem is not None else ""


def _parse_record(node: ET.Element, config: HarvestConfig, registry: Registry, batch: HarvestBatch):
    header = node.find("oai:header", _NS)
    identifier = _text(header.find("oai:identifier", _NS)) if header is not None else ""
    datestamp = _text(header.find("oai:datestamp", _NS)) if header is not None else ""
    if header is not None and header.get("status") == "deleted":
        batch.errors.append((identifier, "deleted record"))
        return None
    metadata = node.find("oai:metadata", _NS)
    payload = next(iter(metadata), None) if metadata is not None else None
    if payload is None:
        batch.errors.append((identifier, "record has no metadata payload"))
        return None
    raw = ET.tostring(payload, encoding="unicode")
    if config.metadata_prefix != "oai_dc":
        return HarvestedRecord(identifier, datestamp, None, raw, f"parse skipped for prefix {config.metadata_prefix!r}")
    # oai_dc payload: <oai_dc:dc> is the wrapper, its dc:* children the roots
    try:
        record = parse_xml(raw, "dc", registry)
    except XwalkError as exc:
        batch.errors.append((identifier, str(exc)))
        return None
    return HarvestedRecord(identifier, datestamp, record)


def harvest(
    config: HarvestConfig,
    session: requests.Session | None = None,
    sleep: Callable[[float], None] = time.sleep,
    registry: Registry | None = None,
) -> HarvestBatch:
    """Run ListRecords against ``config.endpoint``, following resumption tokens.

    Per-record problems land in ``batch.errors``; only transport failures
    and OAI error responses raise.
    """
    registry = registry or builtin_registry()
    session = session or requests.Session()
    batch = HarvestBatch()
    params = {"verb": "ListRecords", "metadataPrefix": config.metadata_prefix}
    if config.from_date:
        params["from"] = config.from_date
    if config.set_spec:
        params["set"] = config.set_spec

    while True:
        body = _fetch(session, config, params, sleep)
        try:
            root = ET.fromstring(body)
        except ET.ParseError as exc:
            raise ProtocolError("badResponse", f"unparseable OAI-PMH response: {exc}") from None
        error = root.find("oai:error", _NS)
        if error is not None:
            code = error.get("code", "unknown")
            if code == "noRecordsMatch":
                break
            raise ProtocolError(code, _text(error))
        listing = root.find("oai:ListRecords", _NS)
        if listing is None:
            raise ProtocolError("badResponse", "response has no ListRecords element")

        nodes = listing.findall("oai:record", _NS)
        token = _text(listing.find("oai:resumptionToken", _NS))
        for node in nodes:
            if config.max_records is not None and len(batch.records) >= config.max_records:
                batch.incomplete = True
                return batch
            item = _parse_record(node, config, registry, batch)
            if item is not None:
                batch.records.append(item)
        if not token:
            break
        if config.max_records is not None and len(batch.records) >= config.max_records:
            batch.incomplete = True
            break
        params = {"verb": "ListRecords", "resumptionToken": token}
    return batch


@dataclass(frozen=True)
class IngestEntry:
    name: str
    record: Record | None = None
    error: XwalkError | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def ingest_dir(path: str | Path, schema: str, registry: Registry | None = None) -> list[IngestEntry]:
    """Parse every ``.json`` (canonical) and ``.xml`` file in ``path``, by file name."""
    registry = registry or builtin_registry()
    directory = Path(path)
    if not directory.is_dir():
        raise FileNotFoundError(f"directory-not-found: {directory}")
    registry.schema(schema)
    results = []
    for file in sorted(directory.iterdir(), key=lambda p: p.name):
        if not file.is_file():
            continue
        suffix = file.suffix.lower()
        if suffix not in (".json", ".xml"):
            log.info("skipping %s: unsupported extension", file.name)
            continue
        try:
            text = file.read_text(encoding="utf-8")
            if suffix == ".json":
                record = parse_canonical(text, registry)
            else:
                record = parse_xml(text, schema, registry)
        except XwalkError as exc:
            results.append(IngestEntry(file.name, error=exc))
        except UnicodeDecodeError as exc:
            results.append(IngestEntry(file.name, error=XwalkError(f"not UTF-8: {exc}")))
        else:
            results.append(IngestEntry(file.name, record))
    return results
