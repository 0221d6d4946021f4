"""Project a large wiki's links onto a small wiki through a title mapping."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .graph import PageGraph, _csr_from_pairs, combine
from .mapping import TitleMapping


@dataclass(frozen=True)
class EnrichmentStats:
    pages_total: int = 0
    pages_mapped: int = 0
    edges_created: int = 0
    neighbors_scanned: int = 0
    neighbors_unmapped: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def _gather_ranges(indptr: np.ndarray, rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Positions into ``indices`` covering the given CSR rows, and each row's length."""
    starts = indptr[rows]
    lengths = indptr[rows + 1] - starts
    total = int(lengths.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64), lengths
    # position k of the flattened ranges is starts[r] + (k - offset of row r)
    offsets = np.cumsum(lengths) - lengths
    positions = np.arange(total, dtype=np.int64) + np.repeat(starts - offsets, lengths)
    return positions, lengths


def enrich(small: PageGraph, large: PageGraph, mapping: TitleMapping) -> tuple[PageGraph, EnrichmentStats]:
    """Build the enriched graph on ``small``'s nodes.

    For every small page ``v`` whose mapped title is a node of ``large``, each
    large out-link ``(SL(v), u)`` becomes ``(v, LS(u))`` when ``LS(u)`` is a
    node of ``small``.  The small graph's own edges are not carried over.

    Work is proportional to the number of mapped pages times their large
    out-degree; the large graph is only touched through its adjacency rows.
    """
    small_index = small.index
    large_index = large.index
    small_ids: list[int] = []
    large_ids: list[int] = []
    for small_title, large_title in mapping.forward.items():
        s = small_index.get(small_title)
        if s is None:
            continue
        l = large_index.get(large_title)
        if l is None:
            continue
        small_ids.append(s)
        large_ids.append(l)

    src_small = np.asarray(small_ids, dtype=np.int64)
    src_large = np.asarray(large_ids, dtype=np.int64)
    positions, lengths = _gather_ranges(large.indptr, src_large)
    neighbors = large.indices[positions]
    sources = np.repeat(src_small, lengths)
    if neighbors.size:
        # the pairs found above are exactly the LS entries that land inside small
        lookup = np.full(large.node_count, -1, dtype=np.int64)
        lookup[src_large] = src_small
        targets = lookup[neighbors]
    else:
        targets = np.empty(0, dtype=np.int64)
    hit = targets >= 0
    indptr, indices = _csr_from_pairs(small.node_count, sources[hit], targets[hit])
    result = PageGraph(small.titles, indptr, indices)
    stats = EnrichmentStats(
        pages_total=small.node_count,
        pages_mapped=len(small_ids),
        edges_created=result.edge_count,
        neighbors_scanned=int(neighbors.size),
        neighbors_unmapped=int(neighbors.size - hit.sum()),
    )
    return result, stats


def enrich_multi(
    small: PageGraph, sources: Sequence[tuple[PageGraph, TitleMapping]]
) -> tuple[PageGraph, list[EnrichmentStats]]:
    """Union of the enrichments from several large wikis, one stats entry each."""
    result = PageGraph(small.titles)
    stats = []
    for large, mapping in sources:
        enriched, st = enrich(small, large, mapping)
        result, _ = combine(result, enriched)
        stats.append(st)
    return result, stats
