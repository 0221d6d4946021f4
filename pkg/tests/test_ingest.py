import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from interlink import (
    DuplicatePage,
    MalformedLine,
    PageGraph,
    TitleMapping,
    load_graph_jsonl,
    load_mapping_tsv,
    write_graph_jsonl,
    write_mapping_tsv,
)
from interlink.ingest import dumps_graph, loads_graph
from strategies import graphs


def stream(text):
    return io.BytesIO(text.encode("utf-8"))


def test_load_empty():
    g = load_graph_jsonl(io.BytesIO(b""))
    assert g.node_count == 0 and g.edge_count == 0


def test_load_two_pages():
    g = load_graph_jsonl(stream('{"title":"A","links":["B"]}\n{"title":"B","links":[]}\n'))
    assert g.nodes == {"A", "B"}
    assert g.edges == {("A", "B")}


def test_load_drops_self_loops_and_duplicates():
    g = load_graph_jsonl(stream('{"title":"A","links":["A","B","B"]}\n'))
    assert g.edges == {("A", "B")}
    assert g.nodes == {"A", "B"}


def test_load_canonicalizes():
    g = load_graph_jsonl(stream('{"title":"River_Clyde","links":["Firth_o  Clyde"]}\n'))
    assert g.edges == {("River Clyde", "Firth o Clyde")}


def test_load_without_trailing_newline():
    g = load_graph_jsonl(stream('{"title":"A","links":["B"]}'))
    assert g.edges == {("A", "B")}


@pytest.mark.parametrize(
    "text, line_no",
    [
        ('{"title":"A","links":[]}\n{not json}\n', 2),
        ('["A"]\n', 1),
        ('{"title":3,"links":[]}\n', 1),
        ('{"title":"A","links":"B"}\n', 1),
        ('{"title":"A","links":[1]}\n', 1),
        ('{"title":"__","links":[]}\n', 1),
    ],
)
def test_load_malformed(text, line_no):
    with pytest.raises(MalformedLine) as info:
        load_graph_jsonl(stream(text))
    assert info.value.line_no == line_no


def test_load_bad_utf8():
    with pytest.raises(MalformedLine):
        load_graph_jsonl(io.BytesIO(b'{"title":"\xff"}\n'))


def test_load_duplicate_page():
    with pytest.raises(DuplicatePage) as info:
        load_graph_jsonl(stream('{"title":"A B","links":[]}\n{"title":"A_B","links":[]}\n'))
    assert info.value.title == "A B"


def test_write_empty_is_zero_bytes():
    buf = io.BytesIO()
    write_graph_jsonl(PageGraph(), buf)
    assert buf.getvalue() == b""


def test_write_sorted_lines():
    data = dumps_graph(PageGraph.from_edges([("A", "B")]))
    assert data == b'{"title": "A", "links": ["B"]}\n{"title": "B", "links": []}\n'


def test_write_sorts_links_and_keeps_unicode():
    g = PageGraph.from_edges([("Z", "é"), ("Z", "b"), ("Z", "A")])
    z_line = [line for line in dumps_graph(g).splitlines() if line.startswith(b'{"title": "Z"')][0]
    assert z_line == '{"title": "Z", "links": ["A", "b", "é"]}'.encode("utf-8")


def test_write_canonical_form():
    raw = '{"title":"b_c","links":["a","a"]}\n{"title":"a","links":["b c"]}\n'
    once = dumps_graph(load_graph_jsonl(stream(raw)))
    assert once == dumps_graph(loads_graph(once))
    assert once.splitlines()[0].startswith(b'{"title": "a"')


@given(graphs(max_nodes=16))
def test_jsonl_round_trip(g):
    data = dumps_graph(g)
    assert loads_graph(data) == g
    assert not data.endswith(b"\n\n")


def test_mapping_single_line():
    m = load_mapping_tsv(stream("Glesga\tGlasgow\n"))
    assert m.forward == {"Glesga": "Glasgow"}
    assert m.backward == {"Glasgow": "Glesga"}


def test_mapping_empty():
    m = load_mapping_tsv(io.BytesIO(b""))
    assert len(m) == 0 and m.conflicts == 0


def test_mapping_tie_break():
    m = load_mapping_tsv(stream("Glesga\tGlasgow_City\nGlesga\tGlasgow\n"))
    assert m.forward == {"Glesga": "Glasgow"}
    assert m.conflicts == 1


def test_mapping_comments_and_canonical_titles():
    m = load_mapping_tsv(stream("# small\tlarge\n\nRiver_Clyde\tRiver  Clyde\r\n"))
    assert m.forward == {"River Clyde": "River Clyde"}


@pytest.mark.parametrize("text", ["Glesga Glasgow\n", "a\tb\tc\n", "\tb\n"])
def test_mapping_malformed(text):
    with pytest.raises(MalformedLine) as info:
        load_mapping_tsv(stream("ok\tfine\n" + text))
    assert info.value.line_no == 2


pairs_strategy = st.lists(
    st.tuples(st.sampled_from("abcde"), st.sampled_from("VWXYZ")), max_size=12
)


@given(pairs_strategy)
def test_mapping_is_bijection(pairs):
    m = TitleMapping.from_pairs(pairs)
    assert len(m.forward) == len(m.backward)
    assert all(m.backward[v] == k for k, v in m.forward.items())
    assert set(m.forward.items()) <= set(pairs)
    assert len(m) + m.conflicts == len(set(pairs))


@given(pairs_strategy, st.randoms())
def test_mapping_order_independent(pairs, rnd):
    shuffled = list(pairs)
    rnd.shuffle(shuffled)
    assert TitleMapping.from_pairs(pairs) == TitleMapping.from_pairs(shuffled)


@given(pairs_strategy)
def test_mapping_tsv_round_trip(pairs):
    m = TitleMapping.from_pairs(pairs)
    buf = io.BytesIO()
    write_mapping_tsv(m, buf)
    assert load_mapping_tsv(io.BytesIO(buf.getvalue())) == m
