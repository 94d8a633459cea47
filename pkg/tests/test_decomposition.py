import random
import re

import pytest
from hypothesis import given, settings

from helpers import static_graphs
from tardis.core import StaticGraph
from tardis.decomposition import (FORGET, INTRODUCE, JOIN, LEAF, TreeDecomposition, compute_tree_decomposition,
                                  make_nice, parse_gr, parse_td, write_gr, write_td)
from tardis.errors import InvalidDecompositionError, ParseError


def test_tree_has_width_one():
    h = StaticGraph(6, [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)])
    assert compute_tree_decomposition(h).width == 1


def test_cycle_has_width_two():
    assert compute_tree_decomposition(StaticGraph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])).width == 2


def test_p3_two_bags():
    td = compute_tree_decomposition(StaticGraph(3, [(0, 1), (1, 2)]))
    assert td.width == 1
    assert sorted(map(sorted, td.bags)) == [[0, 1], [1, 2]]


def test_exact_width_on_known_graphs():
    k4 = StaticGraph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    assert compute_tree_decomposition(k4).width == 3
    grid = StaticGraph(9, [(r * 3 + c, r * 3 + c + 1) for r in range(3) for c in range(2)]
                       + [(r * 3 + c, r * 3 + c + 3) for r in range(2) for c in range(3)])
    assert compute_tree_decomposition(grid).width == 3
    assert compute_tree_decomposition(StaticGraph(5)).width == 0


@settings(max_examples=60, deadline=None)
@given(static_graphs(max_n=9))
def test_decompositions_are_valid_and_nice(h):
    td = compute_tree_decomposition(h)
    assert td.violations(h) == []
    ntd = make_nice(td, h)
    assert ntd.violations() == []
    assert ntd.width == td.width
    assert ntd.nodes[ntd.root].bag == frozenset()
    assert len(ntd.nodes) <= 4 * (td.width + 2) * max(h.n, 1) + 1


def test_heuristic_route_for_larger_graphs():
    rng = random.Random(0)
    for _ in range(20):
        n = rng.randint(13, 30)
        h = StaticGraph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.15])
        td = compute_tree_decomposition(h)
        td.validate(h)
        assert make_nice(td, h).violations() == []


def test_single_bag_chain():
    ntd = make_nice(TreeDecomposition(1, [frozenset({0})]))
    assert [x.kind for x in ntd.nodes] == [LEAF, INTRODUCE, FORGET]


def test_p3_nice_deltas_are_single_vertices():
    h = StaticGraph(3, [(0, 1), (1, 2)])
    ntd = make_nice(compute_tree_decomposition(h), h)
    for x in ntd.nodes:
        for c in x.children:
            delta = x.bag ^ ntd.nodes[c].bag
            assert len(delta) == (0 if x.kind == JOIN else 1)


def test_join_nodes_appear_for_branching_decompositions():
    td = TreeDecomposition(3, [frozenset({0}), frozenset({0, 1}), frozenset({0, 2})], [(0, 1), (0, 2)])
    ntd = make_nice(td)
    assert sum(x.kind == JOIN for x in ntd.nodes) == 1
    assert ntd.violations() == []


@pytest.mark.parametrize("td, h, fragment", [
    (TreeDecomposition(2, [frozenset({0})]), None, "vertex 2 is in no bag"),
    (TreeDecomposition(2, [frozenset({0}), frozenset({1})], [(0, 1)]), StaticGraph(2, [(0, 1)]), "edge (1, 2)"),
    (TreeDecomposition(2, [frozenset({0}), frozenset({1}), frozenset({0})], [(0, 1), (1, 2)]), None,
     "not connected"),
    (TreeDecomposition(1, [frozenset({0}), frozenset({0})], []), None, "not a tree"),
])
def test_invalid_decompositions_list_the_violation(td, h, fragment):
    with pytest.raises(InvalidDecompositionError, match=re.escape(fragment)):
        make_nice(td, h)


def test_gr_round_trip_and_errors():
    h = parse_gr("c x\np tw 3 2\n1 2\n2 3\n")
    assert h.edges == ((0, 1), (1, 2))
    assert parse_gr(write_gr(h)) == h
    with pytest.raises(ParseError, match="line 2"):
        parse_gr("p tw 2 1\n1 5\n")
    with pytest.raises(ParseError):
        parse_gr("p tw 2 2\n1 2\n")


def test_td_round_trip_and_errors():
    text = "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n"
    td = parse_td(text)
    assert td.bags == [frozenset({0, 1}), frozenset({1, 2})] and td.edges == [(0, 1)]
    assert write_td(td) == text
    with pytest.raises(ParseError, match="exceeds"):
        parse_td("s td 1 1 2\nb 1 1 2\n")
    with pytest.raises(ParseError, match="duplicate bag"):
        parse_td("s td 2 2 2\nb 1 1\nb 1 2\n")
    with pytest.raises(ParseError, match="header declares"):
        parse_td("s td 2 2 2\nb 1 1\n")


def test_empty_graph():
    h = StaticGraph(0)
    ntd = make_nice(compute_tree_decomposition(h), h)
    assert ntd.violations() == []
