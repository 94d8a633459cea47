"""MaxMinTaRDiS: choose edge times on a static graph to maximize the minimum TaRDiS."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

from .core import Semantics, StaticGraph, TemporalGraph, norm_edge
from .errors import BudgetExceededError, InfeasibleError, NotATardisError, PreconditionError
from .exact import _SetCoverSearch, min_tardis_setcover, min_tardis_special
from .reach import bits, is_tardis, reach_masks, sole_reachability

VARIANTS = ("strict", "nonstrict", "happy")
DEFAULT_ENUM_BUDGET = 2_000_000


@dataclass(frozen=True)
class MaxMinResult:
    value: int
    witness: TemporalGraph
    variant: str
    tau: int
    algorithm: str

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "tau": self.tau,
            "variant": self.variant,
            "witness_assignment": [[u + 1, v + 1, t] for u, v, t in self.witness.time_edges()],
        }


def variant_semantics(variant: str) -> Semantics:
    # happy paths are strict and nonstrict at once
    return Semantics.NONSTRICT if variant == "nonstrict" else Semantics.STRICT


# --- static subsolvers --------------------------------------------------------

def min_dominating_set(h: StaticGraph) -> tuple[int, set[int]]:
    """Exact minimum dominating set by branch-and-bound over closed neighbourhoods."""
    if h.n == 0:
        return 0, set()
    rows = [(1 << v) | sum(1 << y for y in h.adj[v]) for v in range(h.n)]
    search = _SetCoverSearch(rows, list(range(h.n)), h.n)
    best = {search.cands[i] for i in search.run()}
    return len(best), best


def square_graph(h: StaticGraph) -> StaticGraph:
    edges = set(h.edges)
    for v in range(h.n):
        for a, b in combinations(sorted(h.adj[v]), 2):
            edges.add((a, b))
    return StaticGraph(h.n, edges)


def max_independent_set(h: StaticGraph) -> set[int]:
    adj = [sum(1 << y for y in h.adj[v]) for v in range(h.n)]
    best = [0]

    def popcount(x: int) -> int:
        return bin(x).count("1")

    def go(cand: int, chosen: int) -> None:
        if popcount(chosen) + popcount(cand) <= popcount(best[0]):
            return
        if not cand:
            best[0] = chosen
            return
        # a vertex of degree <= 1 in the candidate graph is always safe to take
        pick, pick_deg = -1, None
        for v in bits(cand):
            d = popcount(adj[v] & cand)
            if pick_deg is None or d > pick_deg:
                pick, pick_deg = v, d
            if d <= 1:
                go(cand & ~adj[v] & ~(1 << v), chosen | 1 << v)
                return
        go(cand & ~adj[pick] & ~(1 << pick), chosen | 1 << pick)
        go(cand & ~(1 << pick), chosen)

    go((1 << h.n) - 1, 0)
    return set(bits(best[0]))


def max_d3is(h: StaticGraph) -> tuple[int, set[int]]:
    """Largest vertex set pairwise at distance at least 3: an independent set of the square."""
    s = max_independent_set(square_graph(h))
    return len(s), s


def is_d3is(h: StaticGraph, s) -> bool:
    s = sorted(set(s))
    for v in s:
        near = set(h.adj[v])
        for y in h.adj[v]:
            near |= h.adj[y]
        if any(u != v and u in near for u in s):
            return False
    return True


def is_maximal_d3is(h: StaticGraph, s) -> bool:
    s = set(s)
    return is_d3is(h, s) and not any(is_d3is(h, s | {v}) for v in range(h.n) if v not in s)


def d3is_witness_assignment(h: StaticGraph, s) -> TemporalGraph:
    """Time 1 on edges touching ``s``, time 2 elsewhere; ``s`` is then a minimum nonstrict TaRDiS."""
    s = set(s)
    if not is_d3is(h, s):
        raise PreconditionError("set is not a distance-3 independent set")
    if not is_maximal_d3is(h, s):
        raise PreconditionError("distance-3 independent set is not maximal")
    return TemporalGraph.from_assignment(h, {e: 1 if (e[0] in s or e[1] in s) else 2 for e in h.edges})


def extract_independent_tardis(g: TemporalGraph, s) -> set[int]:
    """Turn a minimum nonstrict TaRDiS of a lifetime-2 graph into one that is a D3IS.

    Every member outside its own sole reachability set is swapped for the closest
    vertex of that set (footprint distance, ties to the lowest index).
    """
    if g.lifetime != 2:
        raise PreconditionError(f"needs lifetime 2, got {g.lifetime}")
    sem = Semantics.NONSTRICT
    s = set(s)
    rows = reach_masks(g, sem)
    if not is_tardis(g, s, sem, rows=rows):
        raise NotATardisError("input set is not a TaRDiS")
    if len(s) != min_tardis_setcover(g, sem).size:
        raise PreconditionError("input TaRDiS is not minimum")
    fp = g.footprint()
    for _ in range(len(s) * g.n + 1):
        bad = sorted(x for x in s if not sole_reachability(rows, s, x) >> x & 1)
        if not bad:
            break
        x = bad[0]
        sr = bits(sole_reachability(rows, s, x))
        dist = fp.distances_from(x)
        star = min(sr, key=lambda y: (dist[y] if dist[y] is not None else g.n, y))
        s = (s - {x}) | {star}
    else:
        raise AssertionError("replacement did not settle")
    assert is_tardis(g, s, sem, rows=rows)
    return s


# --- assignments ----------------------------------------------------------------

def happy_assignment_exists(h: StaticGraph, tau: int) -> dict[tuple[int, int], int] | None:
    """A proper edge colouring with colours 1..tau, or None."""
    if h.m == 0:
        return {}
    if h.max_degree() > tau:
        return None
    # colour edges at high-degree vertices first
    edges = sorted(h.edges, key=lambda e: (-(h.degree(e[0]) + h.degree(e[1])), e))
    used: list[set[int]] = [set() for _ in range(h.n)]
    colour: dict[tuple[int, int], int] = {}

    def go(i: int) -> bool:
        if i == len(edges):
            return True
        u, v = edges[i]
        for c in range(1, tau + 1):
            if c not in used[u] and c not in used[v]:
                colour[(u, v)] = c
                used[u].add(c)
                used[v].add(c)
                if go(i + 1):
                    return True
                used[u].discard(c)
                used[v].discard(c)
        return False

    return dict(sorted(colour.items())) if go(0) else None


def count_assignments(h: StaticGraph, tau: int, kind: str = "simple") -> int:
    if kind == "all":
        return (2 ** tau - 1) ** h.m
    return tau ** h.m


def iter_assignments(h: StaticGraph, tau: int, kind: str = "simple") -> Iterator[TemporalGraph]:
    """Lexicographic over edges in index order: ``simple`` one time per edge,
    ``happy`` proper colourings only, ``all`` every nonempty time set."""
    edges = list(h.edges)
    if kind == "all":
        subsets = [c for k in range(1, tau + 1) for c in combinations(range(1, tau + 1), k)]
        for choice in product(subsets, repeat=len(edges)):
            yield TemporalGraph.from_assignment(h, dict(zip(edges, choice)))
        return
    if kind == "simple":
        for choice in product(range(1, tau + 1), repeat=len(edges)):
            yield TemporalGraph.from_assignment(h, dict(zip(edges, choice)))
        return
    if kind != "happy":
        raise ValueError(f"unknown assignment kind {kind!r}")
    used: list[set[int]] = [set() for _ in range(h.n)]
    cur: list[int] = []

    def go(i: int) -> Iterator[TemporalGraph]:
        if i == len(edges):
            yield TemporalGraph.from_assignment(h, dict(zip(edges, cur)))
            return
        u, v = edges[i]
        for c in range(1, tau + 1):
            if c not in used[u] and c not in used[v]:
                used[u].add(c)
                used[v].add(c)
                cur.append(c)
                yield from go(i + 1)
                cur.pop()
                used[u].discard(c)
                used[v].discard(c)

    yield from go(0)


def min_tardis_size(g: TemporalGraph, semantics: Semantics) -> int:
    """Plain minimum TaRDiS size; the enumeration inner loop."""
    if g.n == 0:
        return 0
    rows = reach_masks(g, semantics)
    return len(_SetCoverSearch(rows, list(range(g.n)), g.n).run())


def maxmin_enumerate(h: StaticGraph, tau: int, variant: str, budget: int | None = None,
                     use_bound: bool = True, kind: str | None = None) -> MaxMinResult:
    """Exhaustive search in lexicographic order; the first maximizer is the witness.

    With ``use_bound`` the search stops once the domination number is reached,
    since a dominating set is a TaRDiS under every assignment.
    """
    kind = kind or ("happy" if variant == "happy" else "simple")
    sem = variant_semantics(variant)
    limit = DEFAULT_ENUM_BUDGET if budget is None else budget
    total = count_assignments(h, tau, kind)
    if total > limit:
        raise BudgetExceededError(f"{total} assignments exceed enumeration budget {limit}")
    if kind == "happy" and happy_assignment_exists(h, tau) is None:
        raise InfeasibleError(f"no happy assignment with lifetime {tau}: graph is not {tau}-edge-colourable")
    bound = min_dominating_set(h)[0] if use_bound else h.n
    best_val, best_g = -1, None
    for g in iter_assignments(h, tau, kind):
        val = min_tardis_size(g, sem)
        if val > best_val:
            best_val, best_g = val, g
            if best_val >= bound:
                break
    assert best_g is not None
    return MaxMinResult(best_val, best_g, variant, tau, "enum")


def _constant(h: StaticGraph, t: int) -> TemporalGraph:
    return TemporalGraph.from_assignment(h, {e: t for e in h.edges})


def _happy_small(h: StaticGraph, tau: int) -> MaxMinResult:
    """Lifetime at most 2: components are paths or even cycles with two colourings each.

    Per component the better of the two alternating colourings is kept; on odd
    paths that puts both leaf edges at time 1.
    """
    if happy_assignment_exists(h, tau) is None:
        raise InfeasibleError(f"no happy assignment with lifetime {tau}: graph is not {tau}-edge-colourable")
    assignment: dict[tuple[int, int], int] = {}
    total = 0
    for comp in h.components():
        if len(comp) == 1:
            total += 1
            continue
        ends = sorted(v for v in comp if h.degree(v) == 1)
        start = ends[0] if ends else comp[0]
        walk = [start]
        while True:
            nxt = sorted(y for y in h.adj[walk[-1]] if y not in walk)
            if not nxt:
                break
            walk.append(nxt[0])
        cedges = [norm_edge(a, b) for a, b in zip(walk, walk[1:])]
        if not ends:
            cedges.append(norm_edge(walk[-1], walk[0]))
        best = None
        for first in range(1, tau + 1):
            col = {e: (first + i - 1) % tau + 1 for i, e in enumerate(cedges)}
            sub = TemporalGraph(h.n, [(u, v, t) for (u, v), t in col.items()])
            r = min_tardis_special(sub, Semantics.STRICT)
            # the rest of the graph is edgeless here: discount it
            val = r.size - (h.n - len(comp))
            if best is None or val > best[0]:
                best = (val, col)
        total += best[0]
        assignment.update(best[1])
    g = TemporalGraph.from_assignment(h, assignment)
    return MaxMinResult(total, g, "happy", tau, "shortcut-happy-small")


def maxmin_value(h: StaticGraph, tau: int, variant: str = "nonstrict", algo: str = "auto",
                 budget: int | None = None) -> MaxMinResult:
    if tau < 1:
        raise PreconditionError("lifetime must be at least 1")
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if algo not in ("auto", "enum", "shortcut"):
        raise ValueError(f"unknown algorithm {algo!r}")
    if algo == "enum":
        return maxmin_enumerate(h, tau, variant, budget)
    if variant == "strict":
        gamma, _ = min_dominating_set(h)
        return MaxMinResult(gamma, _constant(h, 1), variant, tau, "shortcut-domination")
    if variant == "nonstrict" and tau == 1:
        return MaxMinResult(len(h.components()), _constant(h, 1), variant, tau, "shortcut-components")
    if variant == "nonstrict" and tau == 2:
        size, s = max_d3is(h)
        return MaxMinResult(size, d3is_witness_assignment(h, s), variant, tau, "shortcut-d3is")
    if variant == "happy" and tau <= 2:
        return _happy_small(h, tau)
    if algo == "shortcut":
        raise PreconditionError(f"no shortcut for variant {variant} with lifetime {tau}")
    return maxmin_enumerate(h, tau, variant, budget)


def quick_reject_strict_maxmin(h: StaticGraph, k: int) -> bool | None:
    """True when n > (k-1)(Delta+1), which forces the domination number to at least k."""
    if h.n > (k - 1) * (h.max_degree() + 1):
        return True
    return None


def search_assignment(h: StaticGraph, tau: int, semantics: Semantics | str, threshold: int,
                      seed: int = 0, max_tries: int = 100_000) -> TemporalGraph | None:
    """Random simple assignments until one has minimum TaRDiS at least ``threshold``."""
    sem = Semantics(semantics)
    rng = random.Random(seed)
    for _ in range(max_tries):
        g = TemporalGraph.from_assignment(h, {e: rng.randint(1, tau) for e in h.edges})
        if min_tardis_size(g, sem) >= threshold:
            return g
    return None
