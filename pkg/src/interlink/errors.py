"""Exception types raised across the package."""


class InterlinkError(Exception):
    """Base class for all package errors."""


class EmptyTitle(InterlinkError, ValueError):
    def __init__(self, raw):
        super().__init__(f"title is empty after canonicalization: {raw!r}")
        self.raw = raw


class InvalidParams(InterlinkError, ValueError):
    pass


class NodeOutsideUniverse(InterlinkError, ValueError):
    def __init__(self, title):
        super().__init__(f"node not in universe: {title!r}")
        self.title = title


class ParseError(InterlinkError):
    """Input could not be parsed; maps to CLI exit code 2."""


class MalformedLine(ParseError):
    def __init__(self, line_no, reason=""):
        msg = f"malformed line {line_no}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)
        self.line_no = line_no


class DuplicatePage(ParseError):
    def __init__(self, title):
        super().__init__(f"duplicate page: {title!r}")
        self.title = title


class DumpSyntaxError(ParseError):
    def __init__(self, byte_offset, reason=""):
        msg = f"SQL syntax error at byte {byte_offset}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)
        self.byte_offset = byte_offset


class UnknownTable(ParseError):
    def __init__(self, table):
        super().__init__(f"no INSERT or CREATE TABLE for `{table}` in dump")
        self.table = table


class UniverseMismatch(InterlinkError, ValueError):
    """Metrics compared over different node universes."""
