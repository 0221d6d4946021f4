"""Directed page-link graphs stored in compressed sparse row form.

Nodes are canonical page titles kept in sorted order, so a node's integer id
is its rank among the titles.  Out-links of node ``i`` are
``indices[indptr[i]:indptr[i + 1]]``, sorted, unique and never equal to ``i``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Iterator

import numpy as np

from .errors import EmptyTitle, InvalidParams, NodeOutsideUniverse

if TYPE_CHECKING:
    from .mapping import TitleMapping

_WHITESPACE = re.compile(r"\s+")


def canonicalize_title(raw: str) -> str:
    """Map a raw title to its canonical form.

    Underscores become spaces, runs of whitespace collapse to a single space
    and the ends are stripped.  Case is preserved.
    """
    title = _WHITESPACE.sub(" ", raw.replace("_", " ")).strip()
    if not title:
        raise EmptyTitle(raw)
    return title


@dataclass(frozen=True)
class GraphDelta:
    added_edges: int = 0
    added_nodes: int = 0
    skipped_duplicate_edges: int = 0


def _csr_from_pairs(n: int, src: np.ndarray, dst: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sort, deduplicate and drop self-loops from an edge list."""
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    keep = src != dst
    if not keep.all():
        src, dst = src[keep], dst[keep]
    keys = np.unique(src * n + dst) if n else np.empty(0, dtype=np.int64)
    rows = keys // n if n else keys
    indices = (keys - rows * n).astype(np.int32 if n < 2**31 else np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
    return indptr, indices


class PageGraph:
    """Immutable directed graph over page titles.

    Build one with :meth:`from_edges`, :class:`GraphBuilder`, or the array
    constructor used by the bulk routines.
    """

    __slots__ = ("titles", "indptr", "indices", "_index", "_nodes")

    def __init__(self, titles: Iterable[str] = (), indptr=None, indices=None):
        self.titles: tuple[str, ...] = tuple(titles)
        n = len(self.titles)
        if indptr is None:
            indptr = np.zeros(n + 1, dtype=np.int64)
            indices = np.empty(0, dtype=np.int32)
        self.indptr = np.asarray(indptr)
        self.indices = np.asarray(indices)
        self.indptr.flags.writeable = False
        self.indices.flags.writeable = False
        self._index: dict[str, int] | None = None
        self._nodes: frozenset[str] | None = None

    @classmethod
    def from_arrays(cls, titles: Iterable[str], src, dst, *, sort_titles: bool = True) -> PageGraph:
        """Build from parallel source/target id arrays indexing ``titles``.

        ``titles`` must be canonical and distinct.  Ids are remapped when the
        titles are not already sorted.
        """
        titles = list(titles)
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        if sort_titles and any(titles[i] >= titles[i + 1] for i in range(len(titles) - 1)):
            order = sorted(range(len(titles)), key=titles.__getitem__)
            rank = np.empty(len(titles), dtype=np.int64)
            rank[np.asarray(order, dtype=np.int64)] = np.arange(len(titles), dtype=np.int64)
            titles = [titles[i] for i in order]
            src, dst = rank[src], rank[dst]
        indptr, indices = _csr_from_pairs(len(titles), src, dst)
        return cls(titles, indptr, indices)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str]] = (), nodes: Iterable[str] = ()) -> PageGraph:
        builder = GraphBuilder()
        for title in nodes:
            builder.add_node(title)
        for source, target in edges:
            builder.add_edge(source, target)
        return builder.build()

    def __len__(self) -> int:
        return len(self.titles)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PageGraph):
            return NotImplemented
        return (
            self.titles == other.titles
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"PageGraph(nodes={self.node_count}, edges={self.edge_count})"

    @property
    def node_count(self) -> int:
        return len(self.titles)

    @property
    def edge_count(self) -> int:
        return int(self.indices.shape[0])

    @property
    def index(self) -> dict[str, int]:
        """Title to node id lookup, built on first use."""
        if self._index is None:
            self._index = {title: i for i, title in enumerate(self.titles)}
        return self._index

    @property
    def nodes(self) -> frozenset[str]:
        if self._nodes is None:
            self._nodes = frozenset(self.titles)
        return self._nodes

    @property
    def edges(self) -> set[tuple[str, str]]:
        return set(self.iter_edges())

    def __contains__(self, title: str) -> bool:
        return title in self.index

    def iter_edges(self) -> Iterator[tuple[str, str]]:
        titles = self.titles
        for i, j in zip(self.edge_sources().tolist(), self.indices.tolist()):
            yield titles[i], titles[j]

    def edge_sources(self) -> np.ndarray:
        """Source id for every entry of ``indices``."""
        return np.repeat(np.arange(self.node_count, dtype=np.int64), np.diff(self.indptr))

    def out_degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def successor_ids(self, node: int) -> np.ndarray:
        return self.indices[self.indptr[node]:self.indptr[node + 1]]

    def successors(self, title: str) -> list[str]:
        return [self.titles[j] for j in self.successor_ids(self.index[title]).tolist()]

    def adjacency(self) -> list[list[int]]:
        """Out-neighbour id lists; convenient for pure-Python traversals."""
        flat = self.indices.tolist()
        bounds = self.indptr.tolist()
        return [flat[bounds[i]:bounds[i + 1]] for i in range(self.node_count)]


class GraphBuilder:
    """Mutable accumulator for a :class:`PageGraph`.

    Titles are canonicalized on the way in; self-loops and repeated edges are
    discarded when :meth:`build` runs.
    """

    def __init__(self):
        self._ids: dict[str, int] = {}
        self._titles: list[str] = []
        self._src: list[int] = []
        self._dst: list[int] = []

    def add_node(self, title: str) -> int:
        title = canonicalize_title(title)
        node = self._ids.get(title)
        if node is None:
            node = self._ids[title] = len(self._titles)
            self._titles.append(title)
        return node

    def __contains__(self, title: str) -> bool:
        return canonicalize_title(title) in self._ids

    def add_edge(self, source: str, target: str) -> None:
        s = self.add_node(source)
        t = self.add_node(target)
        if s != t:
            self._src.append(s)
            self._dst.append(t)

    def build(self) -> PageGraph:
        return PageGraph.from_arrays(self._titles, self._src, self._dst)


def add_edge(graph: PageGraph, source: str, target: str) -> PageGraph:
    """Return a copy of ``graph`` with the edge added.

    Both endpoints join the node set; a self-loop only adds the node.
    """
    builder = GraphBuilder()
    for title in graph.titles:
        builder.add_node(title)
    for s, t in graph.iter_edges():
        builder.add_edge(s, t)
    builder.add_edge(source, target)
    return builder.build()


def _merge_titles(*graphs: PageGraph) -> tuple[list[str], list[np.ndarray]]:
    """Sorted union of node titles plus an old-id to new-id map per graph."""
    titles = sorted(set().union(*(g.titles for g in graphs)))
    index = {title: i for i, title in enumerate(titles)}
    remaps = [np.fromiter((index[t] for t in g.titles), dtype=np.int64, count=g.node_count) for g in graphs]
    return titles, remaps


def combine(vanilla: PageGraph, enriched: PageGraph) -> tuple[PageGraph, GraphDelta]:
    """Union of node and edge sets, with counts of what ``enriched`` added."""
    if vanilla.titles == enriched.titles:
        titles = list(vanilla.titles)
        ident = np.arange(len(titles), dtype=np.int64)
        remaps = [ident, ident]
    else:
        titles, remaps = _merge_titles(vanilla, enriched)
    src = np.concatenate([remaps[0][vanilla.edge_sources()], remaps[1][enriched.edge_sources()]])
    dst = np.concatenate([remaps[0][vanilla.indices], remaps[1][enriched.indices]])
    indptr, indices = _csr_from_pairs(len(titles), src, dst)
    result = PageGraph(titles, indptr, indices)
    added_edges = result.edge_count - vanilla.edge_count
    delta = GraphDelta(
        added_edges=added_edges,
        added_nodes=result.node_count - vanilla.node_count,
        skipped_duplicate_edges=enriched.edge_count - added_edges,
    )
    return result, delta


def normalize(graph: PageGraph, universe: Iterable[str]) -> tuple[PageGraph, GraphDelta]:
    """Pad ``graph`` with isolated nodes so its node set equals ``universe``."""
    universe = set(universe)
    for title in graph.titles:
        if title not in universe:
            raise NodeOutsideUniverse(title)
    added = len(universe) - graph.node_count
    if added == 0:
        return graph, GraphDelta()
    padding = PageGraph(sorted(universe))
    result, _ = combine(padding, graph)
    return result, GraphDelta(added_nodes=added)


@dataclass(frozen=True)
class Fixture:
    small: PageGraph
    large: PageGraph
    mapping: TitleMapping

    def __iter__(self):
        return iter((self.small, self.large, self.mapping))


def _random_edges(rng: np.random.Generator, n: int, mean_degree: float) -> tuple[np.ndarray, np.ndarray]:
    degrees = rng.poisson(mean_degree, size=n).astype(np.int64)
    src = np.repeat(np.arange(n, dtype=np.int64), degrees)
    # offset in [1, n) so no self-loop is ever drawn
    dst = (src + rng.integers(1, n, size=src.shape[0])) % n
    return src, dst


def generate_fixture(
    seed: int,
    small_size: int,
    large_size: int,
    overlap_fraction: float,
    mean_degree: float,
    small_mean_degree: float | None = None,
) -> Fixture:
    """Synthetic small/large wiki pair with an interlanguage mapping.

    Out-degrees are Poisson with targets drawn uniformly.  The large graph has
    ``mean_degree`` links per page; the small one defaults to the same
    density scaled by the size ratio, clamped to ``[1, mean_degree]``.  The
    mapping pairs ``round(overlap_fraction * small_size)`` (half-up) random
    small pages with distinct random large pages.
    """
    from .mapping import TitleMapping

    if small_size < 1 or large_size < 2 or small_size > large_size:
        raise InvalidParams("need 1 <= small_size <= large_size and large_size >= 2")
    if not 0.0 <= overlap_fraction <= 1.0:
        raise InvalidParams("overlap_fraction must lie in [0, 1]")
    if mean_degree <= 0:
        raise InvalidParams("mean_degree must be positive")
    n_mapped = int(np.floor(overlap_fraction * small_size + 0.5))
    if n_mapped < 1:
        raise InvalidParams("overlap_fraction * small_size must be at least 1")
    if small_mean_degree is None:
        small_mean_degree = min(max(mean_degree * small_size / large_size, 1.0), mean_degree)

    rng = np.random.default_rng(seed)
    width_s = len(str(small_size - 1))
    width_l = len(str(large_size - 1))
    small_titles = [f"S{i:0{width_s}d}" for i in range(small_size)]
    large_titles = [f"L{i:0{width_l}d}" for i in range(large_size)]

    if small_size > 1:
        src, dst = _random_edges(rng, small_size, small_mean_degree)
    else:
        src = dst = np.empty(0, dtype=np.int64)
    small = PageGraph(small_titles, *_csr_from_pairs(small_size, src, dst))
    src, dst = _random_edges(rng, large_size, mean_degree)
    large = PageGraph(large_titles, *_csr_from_pairs(large_size, src, dst))
    del src, dst

    small_pick = np.sort(rng.choice(small_size, size=n_mapped, replace=False))
    large_pick = rng.choice(large_size, size=n_mapped, replace=False)
    mapping = TitleMapping.from_pairs(
        (small_titles[i], large_titles[j]) for i, j in zip(small_pick.tolist(), large_pick.tolist())
    )
    return Fixture(small, large, mapping)
