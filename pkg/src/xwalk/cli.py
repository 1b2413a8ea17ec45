"""``xwalk`` command line.

Exit codes are a scripting contract:
0 success, 1 findings (lossy mapping, failed validation), 2 usage error,
3 input parse error, 4 network error.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from pathlib import Path

from .crosswalk import builtin_table, coverage_report, transform
from .errors import HarvestConfigError, LpapError, NetworkError, ProtocolError, XwalkError
from .formats import dumps, load_crosswalk_table, parse_canonical, parse_xml, serialize_canonical
from .harvest import HarvestConfig, harvest
from .lpap import LanguageFacts, from_dc, from_record, to_record, validate_lpap
from .registry import SCHEMA_IDS, builtin_registry

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_NETWORK = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_PARSE) from None


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_record(path: str, schema: str, in_format: str | None):
    fmt = in_format or Path(path).suffix.lower().lstrip(".")
    text = _read(path)
    try:
        if fmt == "json":
            record = parse_canonical(text)
        elif fmt == "xml":
            record = parse_xml(text, schema)
        else:
            raise CliError(f"cannot infer input format of {path}; use --in-format", EXIT_USAGE)
    except XwalkError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None
    if record.schema != schema:
        raise CliError(f"{path}: record schema is {record.schema!r}, expected {schema!r}", EXIT_PARSE)
    return record


def cmd_schemas(args) -> int:
    registry = builtin_registry()
    rows = [(s.id, s.name, len(s.elements)) for s in registry]
    if args.format == "json":
        sys.stdout.write(dumps({"schemas": [{"id": i, "name": n, "elements": c} for i, n, c in rows]}))
    else:
        for i, n, c in rows:
            print(f"{i}\t{n}\t{c}")
    return EXIT_OK


def cmd_map(args) -> int:
    record = _load_record(args.input, args.source, args.in_format)
    result = transform(builtin_table(), builtin_registry(), record, args.target)
    _write(serialize_canonical(result.output), args.out)
    sys.stderr.write(dumps(result.loss.to_json()))
    return EXIT_OK if result.loss.fidelity == 1.0 else EXIT_FINDINGS


def cmd_report(args) -> int:
    if args.table:
        try:
            table = load_crosswalk_table(_read(args.table))
        except XwalkError as exc:
            raise CliError(f"{args.table}: {exc}", EXIT_PARSE) from None
    else:
        table = builtin_table()
    report = coverage_report(table, builtin_registry())
    if args.format == "json":
        sys.stdout.write(dumps(report))
    else:
        print("shared: " + ", ".join(report["shared"]))
        for schema, names in report["unique"].items():
            print(f"unique {schema} ({len(names)}): " + ", ".join(names))
        print("delta: " + report["delta"]["summary"])
        for note in report["delta"]["footnotes"]:
            print("note: " + note)
    return EXIT_OK


def cmd_lpap_build(args) -> int:
    dc = _load_record(args.dc, "dc", args.in_format)
    try:
        facts = LanguageFacts.from_json(json.loads(_read(args.facts))) if args.facts else None
    except json.JSONDecodeError as exc:
        raise CliError(f"{args.facts}: {exc}", EXIT_PARSE) from None
    except LpapError as exc:
        raise CliError(f"{args.facts}: {exc}", EXIT_PARSE) from None
    try:
        record = from_dc(dc, facts)
    except LpapError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    _write(serialize_canonical(to_record(record)), args.out)
    return EXIT_OK


def cmd_lpap_validate(args) -> int:
    try:
        record = from_record(parse_canonical(_read(args.input)), draft=True)
    except XwalkError as exc:
        raise CliError(f"{args.input}: {exc}", EXIT_PARSE) from None
    report = validate_lpap(record)
    if args.format == "json":
        sys.stdout.write(dumps(report.to_json()))
    else:
        for name, verdict in report.to_json().items():
            if name == "overall":
                print(f"overall: {'pass' if verdict else 'fail'}")
            else:
                status = "pass" if verdict["pass"] else "fail: " + "; ".join(verdict["reasons"])
                print(f"{name}: {status}")
    return EXIT_OK if report.overall else EXIT_FINDINGS


def _safe_name(identifier: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", identifier).strip("._") or "record"


def cmd_harvest(args) -> int:
    try:
        config = HarvestConfig(
            endpoint=args.endpoint,
            metadata_prefix=args.prefix,
            from_date=args.from_date,
            set_spec=args.set_spec,
            max_records=args.max,
            retry_limit=args.retries,
            backoff_base_millis=args.backoff_ms,
        )
    except HarvestConfigError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    try:
        batch = harvest(config)
    except (NetworkError, ProtocolError) as exc:
        raise CliError(str(exc), EXIT_NETWORK) from None

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    used: set[str] = set()
    for item in batch.records:
        stem = _safe_name(item.identifier)
        name, n = stem, 1
        while name in used:
            n += 1
            name = f"{stem}_{n}"
        used.add(name)
        if item.record is not None:
            (out / f"{name}.json").write_text(serialize_canonical(item.record), encoding="utf-8")
        else:
            (out / f"{name}.xml").write_text(item.raw or "", encoding="utf-8")
    for identifier, reason in batch.errors:
        logging.getLogger("xwalk").warning("%s: %s", identifier, reason)
    if not args.quiet:
        incomplete = "true" if batch.incomplete else "false"
        sys.stderr.write(
            f"harvested {len(batch.records)} record(s); incomplete={incomplete}; errors={len(batch.errors)}\n"
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="xwalk", parents=[common],
        description="Crosswalk heritage metadata through Dublin Core and build language preservation records.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schemas", parents=[common], help="list registered schemas")
    p.set_defaults(func=cmd_schemas)

    p = sub.add_parser("map", parents=[common], help="transform a record between schemas")
    p.add_argument("input")
    p.add_argument("--from", dest="source", required=True, choices=SCHEMA_IDS)
    p.add_argument("--to", dest="target", required=True, choices=SCHEMA_IDS)
    p.add_argument("--out")
    p.add_argument("--in-format", choices=("json", "xml"))
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("report", parents=[common], help="coverage report for a crosswalk table")
    p.add_argument("--table", help="crosswalk CSV (default: built-in table)")
    p.set_defaults(func=cmd_report)

    lpap = sub.add_parser("lpap", help="language preservation profile records")
    lsub = lpap.add_subparsers(dest="lpap_command", required=True)
    p = lsub.add_parser("build", parents=[common], help="build an LPAP record from DC plus language facts")
    p.add_argument("--dc", required=True)
    p.add_argument("--facts")
    p.add_argument("--out")
    p.add_argument("--in-format", choices=("json", "xml"))
    p.set_defaults(func=cmd_lpap_build)
    p = lsub.add_parser("validate", parents=[common], help="FAIR checks for an LPAP record")
    p.add_argument("input")
    p.set_defaults(func=cmd_lpap_validate)

    p = sub.add_parser("harvest", parents=[common], help="harvest records over OAI-PMH")
    p.add_argument("--endpoint", required=True)
    p.add_argument("--prefix", default="oai_dc")
    p.add_argument("--max", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--from", dest="from_date")
    p.add_argument("--set", dest="set_spec")
    p.add_argument("--retries", type=int, default=3)
    p.add_argument("--backoff-ms", type=int, default=500)
    p.set_defaults(func=cmd_harvest)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    # listings read best as text; everything else is machine-readable by default
    args.format = getattr(args, "format", "text" if args.command == "schemas" else "json")
    args.quiet = getattr(args, "quiet", False)
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"xwalk: {exc}\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
