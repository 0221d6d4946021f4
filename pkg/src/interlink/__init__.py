"""Enrich a small wiki's link graph with links projected from a larger wiki."""

from .analysis import (
    ComparisonReport,
    GraphMetrics,
    SccResult,
    compare,
    format_report,
    metrics,
    tarjan_scc,
)
from .enrich import EnrichmentStats, enrich, enrich_multi
from .errors import (
    DumpSyntaxError,
    DuplicatePage,
    EmptyTitle,
    InterlinkError,
    InvalidParams,
    MalformedLine,
    NodeOutsideUniverse,
    ParseError,
    UniverseMismatch,
    UnknownTable,
)
from .graph import (
    GraphBuilder,
    GraphDelta,
    PageGraph,
    add_edge,
    canonicalize_title,
    combine,
    generate_fixture,
    normalize,
)
from .ingest import load_graph_jsonl, load_mapping_tsv, write_graph_jsonl, write_mapping_tsv
from .mapping import TitleMapping, build_mapping
from .sqldump import LangLinkRow, PageRow, parse_sql_dump

__version__ = "0.1.0"
