import random

import pytest

from helpers import random_tree
from tardis.core import Semantics, TemporalGraph
from tardis.errors import WrongShapeError
from tardis.exact import min_tardis_bruteforce
from tardis.reach import is_tardis
from tardis.tree import min_tardis_tree


@pytest.mark.parametrize("sem", ["strict", "nonstrict"])
def test_single_edge(sem):
    assert min_tardis_tree(TemporalGraph(2, [(0, 1, 1)]), sem).size == 1


def test_path_example():
    g = TemporalGraph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)])
    assert min_tardis_tree(g, "nonstrict").size == 1
    assert min_tardis_tree(g, "strict").size == 2


def test_rejects_cycles():
    with pytest.raises(WrongShapeError):
        min_tardis_tree(TemporalGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]))


def test_forest_and_isolated_vertices():
    g = TemporalGraph(6, [(0, 1, 2), (1, 2, 1), (4, 5, 3)])
    for sem in Semantics:
        r = min_tardis_tree(g, sem)
        assert r.size == min_tardis_bruteforce(g, sem).size
        assert 3 in r.witness


def test_random_trees_match_oracle_with_progress_checks():
    rng = random.Random(12)
    for _ in range(300):
        g = random_tree(rng, rng.randint(1, 11), rng.randint(1, 4))
        for sem in Semantics:
            r = min_tardis_tree(g, sem, check=True)
            assert r.size == min_tardis_bruteforce(g, sem).size, (g, sem)
            assert is_tardis(g, r.witness, sem)


def test_input_graph_untouched():
    g = TemporalGraph(4, [(0, 1, 1), (0, 1, 3), (1, 2, 2), (1, 3, 1)])
    before = dict(g.times)
    min_tardis_tree(g, "strict")
    assert g.times == before
