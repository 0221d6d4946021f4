"""Connectivity metrics for link graphs and vanilla/enriched/combined reports."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Optional

from .errors import UniverseMismatch
from .graph import PageGraph

_CENT = Decimal("0.01")


def round2(value) -> Decimal:
    """Round half-up to two decimals."""
    # adding zero turns -0.00 into 0.00
    return Decimal(value).quantize(_CENT, rounding=ROUND_HALF_UP) + 0


def percent(part, whole) -> Decimal:
    if not whole:
        return round2(0)
    return round2(Decimal(part) * 100 / Decimal(whole))


@dataclass(frozen=True)
class SccResult:
    """Partition of a graph's nodes into strongly connected components.

    ``components`` holds sorted title tuples ordered by their first title.
    """

    components: list[tuple[str, ...]]
    labels: list[int]
    node_count: int

    @property
    def largest_size(self) -> int:
        return max((len(c) for c in self.components), default=0)

    @property
    def largest_fraction(self) -> float:
        return self.largest_size / self.node_count if self.node_count else 0.0

    def partition(self) -> set[frozenset[str]]:
        return {frozenset(c) for c in self.components}


def tarjan_scc(graph: PageGraph) -> SccResult:
    """Strongly connected components via Tarjan's algorithm.

    Uses an explicit work stack, so path length is not limited by the
    interpreter's recursion depth.
    """
    n = graph.node_count
    adj = graph.adjacency()
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    labels = [-1] * n
    stack: list[int] = []
    raw_components: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work_nodes = [root]
        work_pos = [0]
        while work_nodes:
            v = work_nodes[-1]
            nbrs = adj[v]
            i = work_pos[-1]
            if i < len(nbrs):
                w = nbrs[i]
                work_pos[-1] = i + 1
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work_nodes.append(w)
                    work_pos.append(0)
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work_nodes.pop()
            work_pos.pop()
            if work_nodes:
                u = work_nodes[-1]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                raw_components.append(comp)

    raw_components.sort(key=min)
    titles = graph.titles
    components = []
    for label, comp in enumerate(raw_components):
        comp.sort()
        for node in comp:
            labels[node] = label
        components.append(tuple(titles[node] for node in comp))
    return SccResult(components, labels, n)


@dataclass(frozen=True)
class GraphMetrics:
    node_count: int
    largest_scc: int
    largest_scc_pct: Decimal
    avg_degree: Decimal
    deadend_count: int
    deadend_pct: Decimal

    @classmethod
    def from_counts(cls, node_count: int, largest_scc: int, deadend_count: int, avg_degree) -> GraphMetrics:
        """Metrics from raw counts; ``avg_degree`` is rounded to two decimals."""
        return cls(
            node_count=node_count,
            largest_scc=largest_scc,
            largest_scc_pct=percent(largest_scc, node_count),
            avg_degree=round2(Decimal(str(avg_degree)) if isinstance(avg_degree, float) else avg_degree),
            deadend_count=deadend_count,
            deadend_pct=percent(deadend_count, node_count),
        )

    def to_dict(self) -> dict:
        return {
            "node_count": self.node_count,
            "largest_scc": self.largest_scc,
            "largest_scc_pct": float(self.largest_scc_pct),
            "avg_degree": float(self.avg_degree),
            "deadend_count": self.deadend_count,
            "deadend_pct": float(self.deadend_pct),
        }


def metrics(graph: PageGraph) -> GraphMetrics:
    n = graph.node_count
    avg = Decimal(graph.edge_count) / Decimal(n) if n else Decimal(0)
    deadends = int((graph.out_degrees() == 0).sum())
    return GraphMetrics.from_counts(n, tarjan_scc(graph).largest_size, deadends, avg)


def _relative(diff, base) -> Optional[Decimal]:
    if base == 0:
        return None
    return round2(Decimal(diff) * 100 / Decimal(base))


@dataclass(frozen=True)
class ComparisonReport:
    """Three-way metrics with combined-versus-vanilla percentage changes.

    A change is ``None`` when the vanilla value it divides by is zero.
    """

    vanilla: GraphMetrics
    enriched: GraphMetrics
    combined: GraphMetrics
    scc_improvement_pct: Optional[Decimal]
    degree_improvement_pct: Optional[Decimal]
    deadend_reduction_pct: Optional[Decimal]

    def to_dict(self) -> dict:
        def num(value):
            return None if value is None else float(value)

        return {
            "vanilla": self.vanilla.to_dict(),
            "enriched": self.enriched.to_dict(),
            "combined": self.combined.to_dict(),
            "improvements": {
                "scc_pct": num(self.scc_improvement_pct),
                "degree_pct": num(self.degree_improvement_pct),
                "deadend_reduction_pct": num(self.deadend_reduction_pct),
            },
        }

    def to_text(self) -> str:
        return format_report(self)


def compare(vanilla: GraphMetrics, enriched: GraphMetrics, combined: GraphMetrics) -> ComparisonReport:
    if not vanilla.node_count == enriched.node_count == combined.node_count:
        raise UniverseMismatch(
            f"node counts differ: vanilla={vanilla.node_count} "
            f"enriched={enriched.node_count} combined={combined.node_count}"
        )
    return ComparisonReport(
        vanilla=vanilla,
        enriched=enriched,
        combined=combined,
        scc_improvement_pct=_relative(combined.largest_scc - vanilla.largest_scc, vanilla.largest_scc),
        degree_improvement_pct=_relative(combined.avg_degree - vanilla.avg_degree, vanilla.avg_degree),
        deadend_reduction_pct=_relative(vanilla.deadend_count - combined.deadend_count, vanilla.deadend_count),
    )


def _fmt(value) -> str:
    return "n/a" if value is None else f"{value:.2f}"


def _table(caption: str, header: tuple[str, ...], rows: list[tuple[str, ...]]) -> list[str]:
    cells = [header, *rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    lines = [caption]
    for k, row in enumerate(cells):
        first = row[0].ljust(widths[0])
        rest = " ".join(cell.rjust(w) for cell, w in zip(row[1:], widths[1:]))
        lines.append(f"{first} | {rest}")
        if k == 0:
            lines.append("-" * len(lines[-1]))
    return lines


def format_metrics(m: GraphMetrics) -> str:
    return "\n".join(
        [
            f"Nodes:          {m.node_count}",
            f"Largest SCC:    {m.largest_scc} ({_fmt(m.largest_scc_pct)}%)",
            f"Avg. degree:    {_fmt(m.avg_degree)}",
            f"Dead-end nodes: {m.deadend_count} ({_fmt(m.deadend_pct)}%)",
        ]
    ) + "\n"


def format_report(report: ComparisonReport) -> str:
    """Plain-text rendering laid out as three small tables plus the deltas."""
    rows = [("Vanilla", report.vanilla), ("Enriched", report.enriched), ("Combined", report.combined)]
    total = report.vanilla.node_count
    lines = _table(
        f"Size of the SCC ({total} nodes total)",
        ("Graph type", "Nodes in SCC", "%"),
        [(name, str(m.largest_scc), _fmt(m.largest_scc_pct)) for name, m in rows],
    )
    lines.append("")
    lines += _table(
        "Average degree of a node",
        ("Graph type", "Avg. Degree"),
        [(name, _fmt(m.avg_degree)) for name, m in rows],
    )
    lines.append("")
    lines += _table(
        f"Dead-end articles ({total} nodes total)",
        ("Graph type", "Dead-end nodes", "%"),
        [(name, str(m.deadend_count), _fmt(m.deadend_pct)) for name, m in rows],
    )
    lines.append("")
    lines.append("Combined vs vanilla")
    lines.append(f"SCC size change:    {_fmt(report.scc_improvement_pct)}%")
    lines.append(f"Avg. degree change: {_fmt(report.degree_improvement_pct)}%")
    lines.append(f"Dead-end reduction: {_fmt(report.deadend_reduction_pct)}%")
    return "\n".join(lines) + "\n"
