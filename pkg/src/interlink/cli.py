"""Command line entry point: ``interlink <subcommand> ...``.

Exit codes: 0 success, 2 parse error, 3 I/O error, 4 semantic error.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import os
import sys
import tempfile
from dataclasses import asdict
from pathlib import Path

from .analysis import compare, format_metrics, metrics
from .enrich import enrich
from .errors import InvalidParams, NodeOutsideUniverse, ParseError, UniverseMismatch
from .graph import PageGraph, combine, generate_fixture, normalize
from .ingest import dumps_graph, load_graph_jsonl, load_mapping_tsv, write_mapping_tsv
from .mapping import TitleMapping, build_mapping
from .sqldump import parse_sql_dump

log = logging.getLogger("interlink")

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_IO = 3
EXIT_SEMANTIC = 4


def _dump_json(obj) -> bytes:
    return (json.dumps(obj, indent=2, sort_keys=True) + "\n").encode("utf-8")


def _mapping_bytes(mapping: TitleMapping) -> bytes:
    buf = io.BytesIO()
    write_mapping_tsv(mapping, buf)
    return buf.getvalue()


def write_outputs(output_dir: Path, files: dict[str, bytes]) -> None:
    """Write every file to a temporary name first, then rename them all.

    Nothing under its final name is touched unless every temporary write
    succeeded.
    """
    output_dir.mkdir(parents=True, exist_ok=True)
    staged = []
    try:
        for name, data in files.items():
            fd, tmp = tempfile.mkstemp(dir=output_dir, prefix=f".{name}.", suffix=".tmp")
            staged.append((tmp, output_dir / name))
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
        for tmp, final in staged:
            os.replace(tmp, final)
    finally:
        for tmp, _ in staged:
            if os.path.exists(tmp):
                os.unlink(tmp)


def _read_graph(path) -> PageGraph:
    with open(path, "rb") as fh:
        return load_graph_jsonl(fh)


def _read_mapping(args) -> TitleMapping:
    if args.mapping:
        with open(args.mapping, "rb") as fh:
            return load_mapping_tsv(fh)
    return _mapping_from_sql(args)


def _mapping_from_sql(args) -> TitleMapping:
    with open(args.page_sql, "rb") as fh:
        pages = list(parse_sql_dump(fh, "page"))
    with open(args.langlinks_sql, "rb") as fh:
        langlinks = list(parse_sql_dump(fh, "langlinks"))
    return build_mapping(pages, langlinks, args.small_lang)


def _check_mapping_source(parser: argparse.ArgumentParser, args, required: bool = True) -> None:
    sql = [args.page_sql, args.langlinks_sql, args.small_lang]
    if args.mapping and any(sql):
        parser.error("give either --mapping or the SQL dump options, not both")
    if any(sql) and not all(sql):
        parser.error("--page-sql, --langlinks-sql and --small-lang go together")
    if required and not args.mapping and not any(sql):
        parser.error("a mapping is required: --mapping or --page-sql/--langlinks-sql/--small-lang")


def _report_files(report, fmt: str) -> dict[str, bytes]:
    files = {}
    if fmt in ("json", "both"):
        files["report.json"] = _dump_json(report.to_dict())
    if fmt in ("text", "both"):
        files["report.txt"] = report.to_text().encode("utf-8")
    return files


def _mapping_counts(mapping: TitleMapping) -> str:
    return f"pairs kept: {len(mapping)}, conflicts discarded: {mapping.conflicts}, dangling langlinks: {mapping.dangling}"


def cmd_build_mapping(args) -> int:
    mapping = _mapping_from_sql(args)
    write_outputs(Path(args.output_dir), {"mapping.tsv": _mapping_bytes(mapping)})
    print(_mapping_counts(mapping))
    return EXIT_OK


def cmd_enrich(args) -> int:
    small = _read_graph(args.small)
    large = _read_graph(args.large)
    mapping = _read_mapping(args)
    enriched, stats = enrich(small, large, mapping)
    write_outputs(
        Path(args.output_dir),
        {"enriched.jsonl": dumps_graph(enriched), "enrich_stats.json": _dump_json(stats.to_dict())},
    )
    print(json.dumps(stats.to_dict(), sort_keys=True))
    return EXIT_OK


def cmd_combine(args) -> int:
    vanilla = _read_graph(args.vanilla)
    enriched = _read_graph(args.enriched)
    combined, delta = combine(vanilla, enriched)
    write_outputs(
        Path(args.output_dir),
        {"combined.jsonl": dumps_graph(combined), "combine_delta.json": _dump_json(asdict(delta))},
    )
    print(json.dumps(asdict(delta), sort_keys=True))
    return EXIT_OK


def _emit(files: dict[str, bytes], output_dir) -> None:
    if output_dir:
        write_outputs(Path(output_dir), files)
    else:
        for data in files.values():
            sys.stdout.write(data.decode("utf-8"))


def cmd_analyze(args) -> int:
    graphs = [_read_graph(path) for path in args.graphs]
    if len(graphs) == 1:
        m = metrics(graphs[0])
        files = {}
        if args.format in ("json", "both"):
            files["metrics.json"] = _dump_json(m.to_dict())
        if args.format in ("text", "both"):
            files["metrics.txt"] = format_metrics(m).encode("utf-8")
        _emit(files, args.output_dir)
        return EXIT_OK
    vanilla, enriched, combined = graphs
    universe = vanilla.nodes
    enriched, _ = normalize(enriched, universe)
    combined, _ = normalize(combined, universe)
    report = compare(metrics(vanilla), metrics(enriched), metrics(combined))
    _emit(_report_files(report, args.format), args.output_dir)
    return EXIT_OK


def cmd_fixture(args) -> int:
    small, large, mapping = generate_fixture(
        args.seed, args.small_size, args.large_size, args.overlap, args.mean_degree
    )
    write_outputs(
        Path(args.output_dir),
        {"small.jsonl": dumps_graph(small), "large.jsonl": dumps_graph(large), "mapping.tsv": _mapping_bytes(mapping)},
    )
    return EXIT_OK


def cmd_pipeline(args) -> int:
    files: dict[str, bytes] = {}
    if args.seed is not None:
        small, large, mapping = generate_fixture(
            args.seed, args.small_size, args.large_size, args.overlap, args.mean_degree
        )
        files["small.jsonl"] = dumps_graph(small)
        files["large.jsonl"] = dumps_graph(large)
    else:
        small = _read_graph(args.small)
        large = _read_graph(args.large)
        mapping = _read_mapping(args)
    files["mapping.tsv"] = _mapping_bytes(mapping)
    log.info("mapping: %s", _mapping_counts(mapping))

    enriched, stats = enrich(small, large, mapping)
    enriched, _ = normalize(enriched, small.nodes)
    combined, delta = combine(small, enriched)
    combined, _ = normalize(combined, small.nodes)
    report = compare(metrics(small), metrics(enriched), metrics(combined))

    files["enriched.jsonl"] = dumps_graph(enriched)
    files["enrich_stats.json"] = _dump_json(stats.to_dict())
    files["combined.jsonl"] = dumps_graph(combined)
    files["combine_delta.json"] = _dump_json(asdict(delta))
    files.update(_report_files(report, args.format))
    write_outputs(Path(args.output_dir), files)
    if args.format in ("text", "both"):
        sys.stdout.write(report.to_text())
    return EXIT_OK


def _add_mapping_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mapping", help="mapping TSV (small_title TAB large_title)")
    p.add_argument("--page-sql", help="large wiki page table SQL dump")
    p.add_argument("--langlinks-sql", help="large wiki langlinks table SQL dump")
    p.add_argument("--small-lang", help="language code of the small wiki, e.g. sco")


def _add_fixture_options(p: argparse.ArgumentParser, seed_required: bool) -> None:
    p.add_argument("--seed", type=int, required=seed_required, help="generate a synthetic corpus from this seed")
    p.add_argument("--small-size", type=int, default=5000)
    p.add_argument("--large-size", type=int, default=50000)
    p.add_argument("--overlap", type=float, default=0.7, help="fraction of small pages with a mapping")
    p.add_argument("--mean-degree", type=float, default=25.0, help="mean out-degree of the large graph")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="interlink", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-mapping", help="join page and langlinks dumps into a mapping TSV")
    p.add_argument("--page-sql", required=True)
    p.add_argument("--langlinks-sql", required=True)
    p.add_argument("--small-lang", required=True)
    p.add_argument("--output-dir", required=True)
    p.set_defaults(func=cmd_build_mapping)

    p = sub.add_parser("enrich", help="project large-wiki links onto the small wiki")
    p.add_argument("--small", required=True, help="small wiki graph JSONL")
    p.add_argument("--large", required=True, help="large wiki graph JSONL")
    _add_mapping_options(p)
    p.add_argument("--output-dir", required=True)
    p.set_defaults(func=cmd_enrich)

    p = sub.add_parser("combine", help="union of a vanilla and an enriched graph")
    p.add_argument("--vanilla", required=True)
    p.add_argument("--enriched", required=True)
    p.add_argument("--output-dir", required=True)
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("analyze", help="metrics for one graph, or a vanilla/enriched/combined report")
    p.add_argument("graphs", nargs="+", metavar="GRAPH", help="one graph, or vanilla enriched combined")
    p.add_argument("--format", choices=("json", "text", "both"), default="text")
    p.add_argument("--output-dir", help="write files here instead of stdout")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("pipeline", help="mapping, enrich, combine and analyze in one go")
    p.add_argument("--small")
    p.add_argument("--large")
    _add_mapping_options(p)
    _add_fixture_options(p, seed_required=False)
    p.add_argument("--output-dir", required=True)
    p.add_argument("--format", choices=("json", "text", "both"), default="both")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("fixture", help="write a synthetic small/large/mapping corpus")
    _add_fixture_options(p, seed_required=True)
    p.add_argument("--output-dir", required=True)
    p.set_defaults(func=cmd_fixture)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")

    if args.command == "enrich":
        _check_mapping_source(parser, args)
    elif args.command == "analyze" and len(args.graphs) not in (1, 3):
        parser.error("analyze takes one graph or three (vanilla enriched combined)")
    elif args.command == "pipeline":
        if args.seed is None:
            if not (args.small and args.large):
                parser.error("pipeline needs --small and --large, or --seed")
            _check_mapping_source(parser, args)
        elif args.small or args.large or args.mapping or args.page_sql:
            parser.error("--seed generates its own inputs; drop --small/--large/mapping options")

    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UniverseMismatch, NodeOutsideUniverse, InvalidParams) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
