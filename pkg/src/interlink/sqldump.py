"""Streaming reader for MediaWiki ``page`` and ``langlinks`` SQL dumps.

Only the subset of SQL that mysqldump emits for these tables is understood:
``INSERT INTO `table` VALUES (...),(...);`` with integer, float, NULL and
single-quoted string values.  Every other statement is skipped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import BinaryIO, Iterator, Union

from .errors import DumpSyntaxError, UnknownTable

TABLES = ("page", "langlinks")

_WS = re.compile(rb"[ \t\r\n]*")
_OUTSIDE = re.compile(rb"[';]")
# rest of a string literal after its opening quote, closing quote included
_STRING_TAIL = re.compile(rb"[^'\\]*(?:\\.[^'\\]*)*'", re.S)

_INSERT = re.compile(rb"INSERT\s+INTO\s+`?(\w+)`?\s*(?:\([^)]*\)\s*)?VALUES\s*", re.I)
_CREATE = re.compile(rb"CREATE\s+TABLE\s+(?:IF\s+NOT\s+EXISTS\s+)?`?(\w+)`?", re.I)
_VALUE = re.compile(
    rb"""\s*(?:
        '([^'\\]*(?:(?:\\.|'')[^'\\]*)*)'
      | (NULL)
      | ([-+]?\d+(?:\.\d*)?(?:[eE][-+]?\d+)?)
    )\s*""",
    re.S | re.X | re.I,
)
_ESCAPE = re.compile(rb"\\(.)|''", re.S)
_ESCAPES = {b"0": b"\0", b"b": b"\b", b"n": b"\n", b"r": b"\r", b"t": b"\t", b"Z": b"\x1a"}
_LANG_CODE = re.compile(r"[a-z-]+")


@dataclass(frozen=True)
class PageRow:
    page_id: int
    namespace: int
    title: str


@dataclass(frozen=True)
class LangLinkRow:
    from_page_id: int
    lang_code: str
    target_title: str


DumpRecord = Union[PageRow, LangLinkRow]


def _unescape(match: re.Match) -> bytes:
    char = match.group(1)
    if char is None:
        return b"'"
    return _ESCAPES.get(char, char)


def decode_string(body: bytes) -> str:
    """Decode the bytes between the quotes of a SQL string literal."""
    return _ESCAPE.sub(_unescape, body).decode("utf-8", errors="replace")


def iter_statements(stream: BinaryIO) -> Iterator[tuple[int, bytes]]:
    """Split a dump into ``(byte_offset, statement)`` pairs.

    Statements end at a ``;`` outside string literals.  Lines starting with
    ``--`` between statements are comments.  An unterminated final statement
    is yielded as-is so the caller can report it.
    """
    offset = 0
    parts: list[bytes] = []
    start = None
    in_string = False
    for line in stream:
        pos = 0
        end = len(line)
        while pos < end:
            seg = pos
            if start is None:
                pos = _WS.match(line, pos).end()
                if pos >= end or line.startswith(b"--", pos):
                    break
                start = offset + pos
                seg = pos
            if in_string:
                m = _STRING_TAIL.match(line, pos)
                if m is None:
                    parts.append(line[seg:])
                    break
                in_string = False
                pos = m.end()
            m = _OUTSIDE.search(line, pos)
            while m is not None and m.group() == b"'":
                tail = _STRING_TAIL.match(line, m.end())
                if tail is None:
                    in_string = True
                    break
                m = _OUTSIDE.search(line, tail.end())
            if m is None or in_string:
                parts.append(line[seg:])
                break
            parts.append(line[seg:m.end()])
            yield start, b"".join(parts)
            parts = []
            start = None
            pos = m.end()
        offset += end
    if start is not None:
        yield start, b"".join(parts)


def _tuples(stmt: bytes, pos: int, base: int) -> Iterator[tuple[int, list]]:
    """Yield ``(byte_offset, values)`` for each tuple of an INSERT body."""
    end = len(stmt)
    while True:
        pos = _WS.match(stmt, pos).end()
        if pos >= end or stmt[pos:pos + 1] != b"(":
            raise DumpSyntaxError(base + pos, "expected '('")
        tuple_start = pos
        pos += 1
        values = []
        while True:
            m = _VALUE.match(stmt, pos)
            if m is None:
                raise DumpSyntaxError(base + pos, "bad value")
            text, null, number = m.groups()
            if text is not None:
                values.append(decode_string(text))
            elif null is not None:
                values.append(None)
            elif b"." in number or b"e" in number or b"E" in number:
                values.append(float(number))
            else:
                values.append(int(number))
            pos = m.end()
            sep = stmt[pos:pos + 1]
            pos += 1
            if sep == b")":
                break
            if sep != b",":
                raise DumpSyntaxError(base + pos - 1, "expected ',' or ')'")
        yield base + tuple_start, values
        pos = _WS.match(stmt, pos).end()
        sep = stmt[pos:pos + 1]
        if sep == b",":
            pos += 1
            continue
        if sep == b";" and not stmt[pos + 1:].strip():
            return
        raise DumpSyntaxError(base + pos, "expected ',' or ';'")


def _record(table: str, offset: int, values: list) -> DumpRecord | None:
    if len(values) < 3:
        raise DumpSyntaxError(offset, f"{table} row needs at least 3 fields")
    first, second, third = values[:3]
    if not isinstance(first, int) or first < 0:
        raise DumpSyntaxError(offset, "id must be a non-negative integer")
    if table == "page":
        if not isinstance(second, int) or not isinstance(third, str):
            raise DumpSyntaxError(offset, "expected (page_id, namespace, title, ...)")
        if second != 0:
            return None
        return PageRow(first, second, third)
    if not isinstance(second, str) or not isinstance(third, str):
        raise DumpSyntaxError(offset, "expected (ll_from, ll_lang, ll_title)")
    if not _LANG_CODE.fullmatch(second):
        return None
    return LangLinkRow(first, second, third)


def parse_sql_dump(stream: BinaryIO, table: str) -> Iterator[DumpRecord]:
    """Yield records of ``table`` (``"page"`` or ``"langlinks"``) from a dump.

    Page rows outside namespace 0 and langlink rows with an invalid language
    code are dropped.  Raises :class:`UnknownTable` at the end of a non-empty
    dump that neither creates nor inserts into ``table``.
    """
    if table not in TABLES:
        raise ValueError(f"unsupported table {table!r}; expected one of {TABLES}")
    name = table.encode()
    seen_statement = False
    seen_table = False
    for offset, stmt in iter_statements(stream):
        seen_statement = True
        m = _INSERT.match(stmt)
        if m is None:
            c = _CREATE.match(stmt)
            if c is not None and c.group(1) == name:
                seen_table = True
            elif not stmt.rstrip().endswith(b";"):
                raise DumpSyntaxError(offset + len(stmt), "unterminated statement")
            continue
        if m.group(1) != name:
            continue
        seen_table = True
        for tuple_offset, values in _tuples(stmt, m.end(), offset):
            record = _record(table, tuple_offset, values)
            if record is not None:
                yield record
    if seen_statement and not seen_table:
        raise UnknownTable(table)
