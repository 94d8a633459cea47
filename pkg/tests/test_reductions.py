import random
from collections import Counter

import pytest

from helpers import random_connected
from tardis.core import StaticGraph, classify, parse_temporal_graph, serialize_temporal_graph
from tardis.errors import InvalidInstanceError
from tardis.exact import min_tardis_setcover
from tardis.maxmin import min_dominating_set
from tardis.reach import closure
from tardis.reductions import (CnfFormula3B, SetCoverInstance, ds_to_strict_tardis, sat_to_happy_tardis,
                               setcover_to_happy, setcover_to_nonstrict)

K13 = StaticGraph(4, [(0, 1), (0, 2), (0, 3)])
C5 = StaticGraph(5, [(i, (i + 1) % 5) for i in range(5)])
SAT_PHI = CnfFormula3B.of(3, [(1, 2, 3), (-1, -2, -3), (1, 2, 3)])


def _answer(g, k, sem):
    return min_tardis_setcover(g, sem).size <= k


def test_ds_lifetime_one_appends_nothing():
    g, k = ds_to_strict_tardis(C5, 2, 1)
    assert g.n == 5 and k == 2 and g.lifetime == 1 and g.num_time_edges == 5


def test_ds_examples():
    g, k = ds_to_strict_tardis(K13, 1, 3)
    assert g.n == 6 and g.lifetime == 3 and _answer(g, k, "strict")
    g, k = ds_to_strict_tardis(C5, 1, 2)
    assert not _answer(g, k, "strict")
    assert min_tardis_setcover(g, "strict").size == 2


def test_ds_path_times_ascend_from_attachment():
    g, _ = ds_to_strict_tardis(K13, 1, 4)
    assert g.edge_times(0, 4) == (2,) and g.edge_times(4, 5) == (3,) and g.edge_times(5, 6) == (4,)


def test_ds_random_soundness():
    rng = random.Random(1)
    for _ in range(40):
        h = random_connected(rng, rng.randint(1, 7), rng.randint(0, 4))
        gamma = min_dominating_set(h)[0]
        for tau in (1, 2, 3):
            g, _ = ds_to_strict_tardis(h, gamma, tau)
            assert min_tardis_setcover(g, "strict").size == gamma


def test_ds_errors():
    with pytest.raises(InvalidInstanceError):
        ds_to_strict_tardis(K13, 1, 0)
    with pytest.raises(InvalidInstanceError):
        ds_to_strict_tardis(StaticGraph(0), 1, 1)


SC_EXAMPLES = [
    (SetCoverInstance.of(2, [[0, 1]], 1), True),
    (SetCoverInstance.of(2, [[0], [1]], 1), False),
    (SetCoverInstance.of(2, [[0], [1]], 2), True),
]


@pytest.mark.parametrize("inst, yes", SC_EXAMPLES)
def test_setcover_examples(inst, yes):
    g, k = setcover_to_nonstrict(inst)
    assert _answer(g, k, "nonstrict") is yes
    gh, kh = setcover_to_happy(inst)
    assert classify(gh).happy
    assert _answer(gh, kh, "strict") is yes and _answer(gh, kh, "nonstrict") is yes


def _random_instance(rng):
    n = rng.randint(1, 5)
    fam = [[x for x in range(n) if rng.random() < 0.45] or [rng.randrange(n)] for _ in range(rng.randint(1, 4))]
    for x in range(n):
        if not any(x in s for s in fam):
            rng.choice(fam).append(x)
    return SetCoverInstance.of(n, fam, rng.randint(0, len(fam)))


def test_setcover_random_soundness_and_closure():
    rng = random.Random(2)
    for _ in range(80):
        inst = _random_instance(rng)
        best = inst.min_cover()
        g, _ = setcover_to_nonstrict(inst)
        gh, _ = setcover_to_happy(inst)
        assert min_tardis_setcover(g, "nonstrict").size == best
        assert min_tardis_setcover(gh, "strict").size == best
        assert g.n == gh.n == inst.n + len(inst.family) + sum(map(len, inst.family))
        assert closure(g, "nonstrict").rows == closure(gh, "strict").rows
        assert g.footprint().max_degree() <= 4


def test_setcover_layout():
    inst = SetCoverInstance.of(3, [[0, 1], [1, 2]], 2)
    g, _ = setcover_to_nonstrict(inst)
    # x1..x3 = 0..2, s1, s2 = 3, 4, then a_1^1, a_2^1, a_2^2, a_3^2
    assert g.edge_times(3, 5) == (1,) and g.edge_times(5, 6) == (1,)
    assert g.edge_times(1, 6) == (2,) and g.edge_times(6, 7) == (2,)
    assert g.edge_times(3, 4) == (2,)


@pytest.mark.parametrize("n, fam, k, fragment", [
    (2, [[0, 2]], 1, "outside the universe"),
    (2, [], 1, "family is empty"),
    (3, [[0, 1]], 1, "element 3 is in no set"),
    (2, [[0, 1]], -1, "non-negative"),
])
def test_setcover_invalid(n, fam, k, fragment):
    with pytest.raises(InvalidInstanceError, match=fragment):
        SetCoverInstance.of(n, fam, k)


def test_sat_shape():
    g, k = sat_to_happy_tardis(SAT_PHI)
    assert (g.n, k) == (60, 12)
    # 8 per variable, 6 per hexagon, 3 per literal slot
    assert g.num_time_edges == 8 * 3 + 6 * 3 + 3 * 9
    c = classify(g)
    assert c.happy and g.lifetime == 3
    times = Counter(t for _, _, t in g.time_edges())
    assert set(times) == {1, 2, 3}


def test_sat_gadget_memberships():
    g, _ = sat_to_happy_tardis(SAT_PHI)
    idx = {name: v for v, name in enumerate(g.labels)}

    def t(a, b):
        return g.edge_times(idx[a], idx[b])

    assert t("T1_1", "T2_1") == t("F1_1", "F2_1") == t("v1_1", "v2_1") == (1,)
    assert t("a_1", "v1_1") == t("b_1", "v2_1") == (2,)
    assert t("a_1", "T1_1") == t("b_1", "F1_1") == t("T2_1", "F2_1") == (3,)
    assert t("q1_1", "q2_1") == t("q3_1", "q4_1") == t("q5_1", "q6_1") == (3,)
    assert t("q2_1", "q3_1") == t("q4_1", "q5_1") == t("q6_1", "q1_1") == (1,)
    assert t("q1_1", "x1^1") == (2,) and t("x1^1", "x1^1'") == (3,)
    assert t("x1^1'", "T1_1") == (2,)
    assert t("~x1^1'", "F1_1") == (2,)


def test_sat_two_clauses_use_bottom():
    phi = CnfFormula3B.of(2, [(1, 2), (1, -2), (-1, 2)])
    g, k = sat_to_happy_tardis(phi)
    assert (g.n, k) == (8 * 2 + 12 * 3, 10)
    bots = [v for v, name in enumerate(g.labels) if name.startswith("bot")]
    assert len(bots) == 6
    for v in bots:
        assert len(g.incident(v)) in (1, 2)
    assert classify(g).happy


def test_sat_satisfiable_size_is_k():
    g, k = sat_to_happy_tardis(SAT_PHI)
    assert SAT_PHI.satisfiable()
    assert min_tardis_setcover(g, "strict").size == k


@pytest.mark.parametrize("n, clauses, fragment", [
    (2, [(1, 2, 1)], "repeats a variable"),
    (1, [(1,)], "1 literals"),
    (2, [(1, 2), (1, 2), (1, 2)], "literal 1 occurs 3 times"),
    (2, [(1, 2)], "occurs 1 times"),
    (1, [(1, 3)], "outside 1..1"),
])
def test_sat_invalid_formula(n, clauses, fragment):
    with pytest.raises(InvalidInstanceError, match=fragment):
        CnfFormula3B.of(n, clauses)


def test_generated_instances_round_trip():
    rng = random.Random(3)
    gens = [sat_to_happy_tardis(SAT_PHI)[0], setcover_to_happy(_random_instance(rng))[0],
            setcover_to_nonstrict(_random_instance(rng))[0], ds_to_strict_tardis(C5, 2, 3)[0]]
    for g in gens:
        back = parse_temporal_graph(serialize_temporal_graph(g))
        assert back.n == g.n and back.time_edges() == g.time_edges()
