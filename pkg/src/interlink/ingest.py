"""Readers and writers for the graph JSONL and mapping TSV formats."""

from __future__ import annotations

import io
import json
from typing import BinaryIO

from .errors import DuplicatePage, EmptyTitle, MalformedLine
from .graph import GraphBuilder, PageGraph, canonicalize_title
from .mapping import TitleMapping


def _text_lines(stream: BinaryIO):
    for line_no, raw in enumerate(stream, start=1):
        try:
            yield line_no, raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedLine(line_no, str(exc)) from None


def load_graph_jsonl(stream: BinaryIO) -> PageGraph:
    """Read one ``{"title": ..., "links": [...]}`` object per line.

    Link targets that never appear as a page still become nodes.
    """
    builder = GraphBuilder()
    seen: set[str] = set()
    for line_no, line in _text_lines(stream):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except ValueError as exc:
            raise MalformedLine(line_no, str(exc)) from None
        if not isinstance(obj, dict):
            raise MalformedLine(line_no, "expected a JSON object")
        raw_title = obj.get("title")
        links = obj.get("links", [])
        if not isinstance(raw_title, str) or not isinstance(links, list):
            raise MalformedLine(line_no, "title must be a string and links a list")
        if not all(isinstance(link, str) for link in links):
            raise MalformedLine(line_no, "links must be strings")
        try:
            title = canonicalize_title(raw_title)
            if title in seen:
                raise DuplicatePage(title)
            seen.add(title)
            builder.add_node(title)
            for link in links:
                builder.add_edge(title, link)
        except EmptyTitle as exc:
            raise MalformedLine(line_no, str(exc)) from None
    return builder.build()


def write_graph_jsonl(graph: PageGraph, stream: BinaryIO) -> None:
    """Write ``graph`` sorted by title, each link list sorted."""
    titles = graph.titles
    for node, links in enumerate(graph.adjacency()):
        # node ids follow sorted title order, so links are already sorted
        record = {"title": titles[node], "links": [titles[j] for j in links]}
        stream.write(json.dumps(record, ensure_ascii=False).encode("utf-8"))
        stream.write(b"\n")


def dumps_graph(graph: PageGraph) -> bytes:
    buf = io.BytesIO()
    write_graph_jsonl(graph, buf)
    return buf.getvalue()


def loads_graph(data: bytes) -> PageGraph:
    return load_graph_jsonl(io.BytesIO(data))


def load_mapping_tsv(stream: BinaryIO) -> TitleMapping:
    """Read ``small<TAB>large`` lines; ``#`` lines and blank lines are skipped."""
    pairs = []
    for line_no, line in _text_lines(stream):
        line = line.rstrip("\n").rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise MalformedLine(line_no, "expected exactly one TAB")
        try:
            pairs.append((canonicalize_title(fields[0]), canonicalize_title(fields[1])))
        except EmptyTitle as exc:
            raise MalformedLine(line_no, str(exc)) from None
    return TitleMapping.from_pairs(pairs)


def write_mapping_tsv(mapping: TitleMapping, stream: BinaryIO) -> None:
    for small, large in mapping.pairs():
        stream.write(f"{small}\t{large}\n".encode("utf-8"))
