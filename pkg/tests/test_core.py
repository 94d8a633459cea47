import random

import pytest
from hypothesis import given, settings

from helpers import random_temporal_graph, temporal_graphs
from tardis.core import (StaticGraph, TemporalGraph, classify, locally_earliest_endpoints,
                         parse_temporal_graph, serialize_temporal_graph, weakly_locally_earliest_edges)
from tardis.errors import ParseError


def test_parse_smallest_graph():
    g = parse_temporal_graph("p tg 2 1\n1 2 1\n")
    assert g.n == 2 and g.lifetime == 1 and g.num_time_edges == 1


def test_parse_transcribes_edges():
    g = parse_temporal_graph(b"p tg 3 2\n1 2 2\n2 3 1\n")
    assert g.lifetime == 2
    assert g.times == {(0, 1): (2,), (1, 2): (1,)}


@pytest.mark.parametrize("text, line, fragment", [
    ("p tg 2 1\n1 1 1\n", 2, "self-loop"),
    ("p tg 2 1\n1 3 1\n", 2, "out of range"),
    ("p tg 2 1\n1 2 0\n", 2, "time 0"),
    ("p tg 2 2\n1 2 1\n2 1 1\n", 3, "duplicate time-edge"),
    ("c hi\np tg 2 1\n1 2 x\n", 3, "integer"),
    ("p tg 2 1\np tg 2 1\n", 2, "duplicate header"),
    ("1 2 1\n", 1, "before header"),
])
def test_parse_errors_name_the_line(text, line, fragment):
    with pytest.raises(ParseError) as exc:
        parse_temporal_graph(text)
    assert exc.value.line == line
    assert fragment in str(exc.value)
    assert str(exc.value).startswith(f"line {line}:")


def test_parse_count_mismatch_and_missing_header():
    with pytest.raises(ParseError, match="declares 2"):
        parse_temporal_graph("p tg 2 2\n1 2 1\n")
    with pytest.raises(ParseError, match="missing"):
        parse_temporal_graph("c only a comment\n")


def test_comments_and_blank_lines_are_skipped():
    g = parse_temporal_graph("c a\n\np tg 3 1\nc b\n2 3 4\n")
    assert g.times == {(1, 2): (4,)} and g.lifetime == 4


def test_classify_examples():
    one = TemporalGraph(2, [(0, 1, 1)])
    assert (classify(one).simple, classify(one).proper, classify(one).happy) == (True, True, True)
    path = TemporalGraph(3, [(0, 1, 1), (1, 2, 1)])
    c = classify(path)
    assert c.simple and not c.proper and not c.happy
    multi = TemporalGraph(2, [(0, 1, 1), (0, 1, 2)])
    assert not classify(multi).simple and classify(multi).proper


def test_footprint_examples():
    g = TemporalGraph(2, [(0, 1, 1), (0, 1, 2)])
    assert g.footprint().edges == ((0, 1),)
    assert TemporalGraph(3).footprint().m == 0
    assert TemporalGraph(3).lifetime == 0


def test_lee_examples():
    single = TemporalGraph(2, [(0, 1, 1)])
    assert weakly_locally_earliest_edges(single, True) == {((0, 1), 1)}
    assert weakly_locally_earliest_edges(single, False) == {((0, 1), 1)}
    # u=0, v=1, w=2: u-v at 2, v-w at 1
    path = TemporalGraph(3, [(0, 1, 2), (1, 2, 1)])
    assert weakly_locally_earliest_edges(path, True) == {((1, 2), 1)}
    star = TemporalGraph(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)])
    assert len(weakly_locally_earliest_edges(star, True)) == 3
    assert weakly_locally_earliest_edges(star, False) == set()
    assert locally_earliest_endpoints(star, True) == {0, 1, 2, 3}


@given(temporal_graphs())
def test_strict_lee_subset_of_weak(g):
    assert weakly_locally_earliest_edges(g, False) <= weakly_locally_earliest_edges(g, True)


@given(temporal_graphs())
def test_proper_graphs_have_equal_lee_sets(g):
    if classify(g).proper:
        assert weakly_locally_earliest_edges(g, False) == weakly_locally_earliest_edges(g, True)


@given(temporal_graphs())
def test_serialize_round_trip(g):
    assert parse_temporal_graph(serialize_temporal_graph(g, ["x"])) == g


def test_classify_invariant_under_relabeling():
    rng = random.Random(3)
    for _ in range(100):
        g = random_temporal_graph(rng, rng.randint(1, 8), 4, max_apps=2)
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert classify(g) == classify(g.relabel(perm))


@settings(max_examples=50)
@given(temporal_graphs())
def test_happy_is_simple_and_proper(g):
    c = classify(g)
    assert c.happy == (c.simple and c.proper)


def test_static_graph_basics():
    h = StaticGraph(5, [(0, 1), (1, 2), (3, 4)])
    assert h.components() == [[0, 1, 2], [3, 4]]
    assert h.is_forest() and h.max_degree() == 2
    assert h.distances_from(0) == [0, 1, 2, None, None]
    assert not StaticGraph(3, [(0, 1), (1, 2), (0, 2)]).is_forest()
