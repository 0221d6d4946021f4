"""Independent slow reference implementations used to check the fast paths."""

import random
from collections import deque

from interlink import PageGraph, TitleMapping


def canon_reference(raw):
    """Character-by-character title canonicalization."""
    out = []
    pending_space = False
    for ch in raw:
        if ch == "_" or ch.isspace():
            pending_space = True
            continue
        if pending_space and out:
            out.append(" ")
        pending_space = False
        out.append(ch)
    return "".join(out)


def enrich_oracle(small_nodes, large_edges, forward):
    """Literal reading of the projection: for every small page scan every large edge.

    Returns the edge set plus (scanned, unmapped) neighbour counts.
    """
    backward = {large: small for small, large in forward.items()}
    edges = set()
    scanned = unmapped = 0
    for v in small_nodes:
        if v not in forward:
            continue
        image = forward[v]
        for source, u in large_edges:
            if source != image:
                continue
            scanned += 1
            back = backward.get(u)
            if back is None or back not in small_nodes:
                unmapped += 1
                continue
            if back != v:
                edges.add((v, back))
    return edges, scanned, unmapped


def reachable(adj, start):
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in adj.get(v, ()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def scc_oracle(nodes, edges):
    """Partition by mutual reachability, computed from full reachability sets."""
    adj = {}
    for s, t in edges:
        adj.setdefault(s, []).append(t)
    reach = {v: reachable(adj, v) for v in nodes}
    parts = set()
    for v in nodes:
        parts.add(frozenset(u for u in reach[v] if v in reach[u]))
    return parts


def random_graph(rng, max_nodes=64, prefix="n", density=None):
    n = rng.randint(0, max_nodes)
    nodes = [f"{prefix}{i}" for i in range(n)]
    edges = set()
    if n > 1:
        p = density if density is not None else rng.choice([0.01, 0.03, 0.06, 0.12, 0.25])
        for s in nodes:
            for t in nodes:
                if s != t and rng.random() < p:
                    edges.add((s, t))
    return nodes, edges


def random_instance(rng, max_nodes=64, max_pairs=16):
    """Random (small, large, mapping) triple with some dangling mapping entries."""
    small_nodes, small_edges = random_graph(rng, max_nodes, "s")
    large_nodes, large_edges = random_graph(rng, max_nodes, "L")
    # candidate titles include some that are in neither graph
    small_pool = small_nodes + [f"s_extra{i}" for i in range(3)]
    large_pool = large_nodes + [f"L_extra{i}" for i in range(3)]
    k = rng.randint(0, min(max_pairs, len(small_pool), len(large_pool)))
    pairs = list(zip(rng.sample(small_pool, k), rng.sample(large_pool, k)))
    small = PageGraph.from_edges(small_edges, small_nodes)
    large = PageGraph.from_edges(large_edges, large_nodes)
    return small, large, TitleMapping.from_pairs(pairs)


def seeded(seed):
    return random.Random(seed)


def reference_sql_tuples(text, table):
    """Character-level tokenizer: every tuple of every INSERT INTO `table`.

    Whole-text, non-streaming, and written without regular expressions.
    """
    simple = {"n": "\n", "t": "\t", "0": "\0", "r": "\r", "b": "\b", "Z": "\x1a"}
    head = f"INSERT INTO `{table}` VALUES "
    rows = []
    i = 0
    in_str = False
    while i < len(text):
        ch = text[i]
        if in_str:
            if ch == "\\":
                i += 2
                continue
            if ch == "'":
                in_str = False
            i += 1
            continue
        if ch == "'":
            in_str = True
            i += 1
            continue
        if not text.startswith(head, i):
            i += 1
            continue
        i += len(head)
        while True:
            assert text[i] == "("
            i += 1
            row = []
            while True:
                if text[i] == "'":
                    i += 1
                    buf = []
                    while True:
                        c = text[i]
                        if c == "\\":
                            buf.append(simple.get(text[i + 1], text[i + 1]))
                            i += 2
                        elif c == "'" and text[i + 1] == "'":
                            buf.append("'")
                            i += 2
                        elif c == "'":
                            i += 1
                            break
                        else:
                            buf.append(c)
                            i += 1
                    row.append("".join(buf))
                else:
                    j = i
                    while text[j] not in ",)":
                        j += 1
                    token = text[i:j]
                    if token == "NULL":
                        row.append(None)
                    elif any(c in token for c in ".eE"):
                        row.append(float(token))
                    else:
                        row.append(int(token))
                    i = j
                if text[i] == ",":
                    i += 1
                    continue
                i += 1  # closing paren
                break
            rows.append(row)
            if text[i] == ",":
                i += 1
                continue
            assert text[i] == ";"
            i += 1
            break
    return rows
