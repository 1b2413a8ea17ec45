"""Exception types raised across the package.

Every error derives from :class:`XwalkError` so callers (the CLI in
particular) can catch one base class and still inspect the specific kind.
"""

from __future__ import annotations


class XwalkError(Exception):
    """Base class for all package errors."""


class UnknownSchemaError(XwalkError, KeyError):
    def __init__(self, schema: str):
        self.schema = schema
        super().__init__(f"unknown schema: {schema!r}")

    def __str__(self) -> str:
        return self.args[0]


class UnknownPathError(XwalkError, KeyError):
    def __init__(self, schema: str, path):
        self.schema = schema
        self.path = tuple(path)
        super().__init__(f"unknown path in {schema!r}: {'/'.join(self.path)!r}")

    def __str__(self) -> str:
        return self.args[0]


class ParseError(XwalkError, ValueError):
    """Input text could not be parsed. ``line``/``column`` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


class SchemaParseError(ParseError):
    pass


class DuplicatePathError(XwalkError, ValueError):
    def __init__(self, schema: str, path):
        self.schema = schema
        self.path = tuple(path)
        super().__init__(f"duplicate element path in {schema!r}: {'/'.join(self.path)!r}")


class OrphanPathError(XwalkError, ValueError):
    def __init__(self, schema: str, path):
        self.schema = schema
        self.path = tuple(path)
        super().__init__(
            f"element {'/'.join(self.path)!r} in {schema!r} has no declared parent"
        )


class RecordSyntaxError(ParseError):
    pass


class MalformedPathError(ParseError):
    pass


class MixedContentError(ParseError):
    pass


class EmptyPathError(XwalkError, ValueError):
    def __init__(self):
        super().__init__("element path must not be empty")


class WrongSchemaError(XwalkError, ValueError):
    def __init__(self, expected: str, actual: str):
        self.expected = expected
        self.actual = actual
        super().__init__(f"expected a {expected!r} record, got {actual!r}")


class TableSyntaxError(ParseError):
    pass


class UnresolvableSourcePathError(XwalkError, ValueError):
    def __init__(self, schema: str, path, line: int | None = None):
        self.schema = schema
        self.path = tuple(path)
        self.line = line
        at = f" (line {line})" if line is not None else ""
        super().__init__(
            f"source path {'/'.join(self.path)!r} does not resolve in {schema!r}{at}"
        )


class UnknownDcTermError(XwalkError, ValueError):
    def __init__(self, term: str, qualifier: str | None, line: int | None = None):
        self.term = term
        self.qualifier = qualifier
        self.line = line
        name = f"{term}.{qualifier}" if qualifier else term
        at = f" (line {line})" if line is not None else ""
        super().__init__(f"unknown Dublin Core term {name!r}{at}")


class LpapError(XwalkError, ValueError):
    """An LPAP record or language-facts value violates the profile."""


class MissingIdentifierError(LpapError):
    def __init__(self):
        super().__init__("missing-identifier: neither the DC record nor the facts supply an identifier")


class MissingLanguageNameError(LpapError):
    def __init__(self):
        super().__init__("missing-language-name: no languageName in facts or DC language")


class HarvestConfigError(XwalkError, ValueError):
    pass


class NetworkError(XwalkError):
    def __init__(self, url: str, attempts: int, cause: BaseException | str):
        self.url = url
        self.attempts = attempts
        self.cause = cause
        super().__init__(f"network-unreachable: {url} failed after {attempts} attempt(s): {cause}")


class ProtocolError(XwalkError):
    """The OAI-PMH endpoint answered with an error; ``code`` is passed through verbatim."""

    def __init__(self, code: str, message: str = ""):
        self.code = code
        self.message = message
        super().__init__(f"OAI-PMH error {code}: {message}" if message else f"OAI-PMH error {code}")
