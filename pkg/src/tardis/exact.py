"""Exact minimum-TaRDiS solvers for general temporal graphs."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .core import (Semantics, TemporalGraph, as_semantics, classify, locally_earliest_endpoints,
                   weakly_locally_earliest_edges)
from .errors import InfeasibleCandidatesError, NotATardisError, SizeLimitError
from .reach import bits, is_tardis, reach_masks

BRUTEFORCE_CAP = 16


@dataclass(frozen=True)
class TardisResult:
    size: int
    witness: tuple[int, ...]
    algorithm: str
    semantics: Semantics

    def as_dict(self) -> dict:
        return {"size": self.size, "witness": [v + 1 for v in self.witness]}


def _result(witness: Iterable[int], algorithm: str, sem: Semantics) -> TardisResult:
    w = tuple(sorted(set(witness)))
    return TardisResult(len(w), w, algorithm, sem)


def min_tardis_bruteforce(g: TemporalGraph, semantics: Semantics | str = Semantics.NONSTRICT,
                          cap: int = BRUTEFORCE_CAP) -> TardisResult:
    """Subsets by increasing size, lexicographic within a size; the first TaRDiS wins."""
    sem = as_semantics(semantics)
    if g.n > cap:
        raise SizeLimitError(f"brute force refuses n={g.n} > cap {cap}")
    rows = reach_masks(g, sem)
    full = (1 << g.n) - 1
    for k in range(g.n + 1):
        for combo in combinations(range(g.n), k):
            cov = 0
            for x in combo:
                cov |= rows[x]
            if cov == full:
                return _result(combo, "bruteforce", sem)
    raise AssertionError("V is always a TaRDiS")


def default_candidates(g: TemporalGraph, semantics: Semantics | str) -> set[int]:
    """Vertices that some minimum TaRDiS is guaranteed to be drawn from.

    Nonstrict: endpoints of weakly locally earliest edges. Strict: endpoints of
    locally earliest edges when the graph is proper, otherwise every vertex.
    Isolated vertices are always included.
    """
    sem = as_semantics(semantics)
    isolated = {v for v in range(g.n) if not g.incident(v)}
    if sem is Semantics.NONSTRICT:
        return locally_earliest_endpoints(g, weak=True) | isolated
    if classify(g).proper:
        return locally_earliest_endpoints(g, weak=False) | isolated
    return set(range(g.n))


class _SetCoverSearch:
    def __init__(self, rows: list[int], cands: list[int], n: int):
        # candidates in decreasing |R_c|, ties by index
        self.cands = sorted(cands, key=lambda c: (-bin(rows[c]).count("1"), c))
        self.crows = [rows[c] for c in self.cands]
        self.full = (1 << n) - 1
        self.cover_of = [0] * n
        for i, r in enumerate(self.crows):
            for x in bits(r):
                self.cover_of[x] |= 1 << i
        self.best: list[int] | None = None
        self.nodes = 0

    def greedy(self) -> list[int]:
        covered, chosen = 0, []
        while covered != self.full:
            i = max(range(len(self.crows)), key=lambda j: (bin(self.crows[j] & ~covered).count("1"), -j))
            chosen.append(i)
            covered |= self.crows[i]
        return chosen

    def lower_bound(self, uncovered: int, allowed: int) -> int:
        # elements whose coverer sets are pairwise disjoint each need their own candidate
        used, count = 0, 0
        for x in bits(uncovered):
            c = self.cover_of[x] & allowed
            if c & used == 0:
                used |= c
                count += 1
        return count

    def run(self) -> list[int]:
        self.best = self.greedy()
        self._bound = len(self.best)
        self._search(0, [], (1 << len(self.crows)) - 1)
        return self.best

    def _search(self, covered: int, chosen: list[int], allowed: int) -> None:
        self.nodes += 1
        if covered == self.full:
            if len(chosen) < self._bound:
                self.best = list(chosen)
                self._bound = len(chosen)
            return
        uncovered = self.full & ~covered
        if len(chosen) + self.lower_bound(uncovered, allowed) >= self._bound:
            return
        pick, pick_cnt = -1, None
        for x in bits(uncovered):
            cnt = bin(self.cover_of[x] & allowed).count("1")
            if cnt == 0:
                return
            if pick_cnt is None or cnt < pick_cnt:
                pick, pick_cnt = x, cnt
                if cnt == 1:
                    break
        branch = self.cover_of[pick] & allowed
        for i in bits(branch):
            chosen.append(i)
            self._search(covered | self.crows[i], chosen, allowed)
            chosen.pop()
            allowed &= ~(1 << i)
            if len(chosen) + 1 >= self._bound:
                return


def min_tardis_setcover(g: TemporalGraph, semantics: Semantics | str = Semantics.NONSTRICT,
                        candidates: Iterable[int] | None = None, strategy: str = "bnb") -> TardisResult:
    """Minimum TaRDiS as set cover of V by reachability sets of candidate vertices.

    ``strategy="bnb"`` runs branch-and-bound (greedy upper bound, disjoint-coverer
    lower bound). ``strategy="lee"`` enumerates subsets of the canonical candidates
    by increasing size, stopping at the locally-earliest-edge bound.
    """
    sem = as_semantics(semantics)
    rows = reach_masks(g, sem)
    cands = sorted(set(candidates) if candidates is not None else default_candidates(g, sem))
    if not is_tardis(g, cands, sem, rows=rows):
        raise InfeasibleCandidatesError("candidate reachability sets do not cover V")
    if g.n == 0:
        return _result((), f"setcover-{strategy}", sem)
    if strategy == "lee":
        # the edge-count bound holds for nonstrict, and for strict only on proper graphs
        bound = None
        if sem is Semantics.NONSTRICT or classify(g).proper:
            bound = len(weakly_locally_earliest_edges(g, weak=sem is Semantics.NONSTRICT))
            bound += sum(1 for v in range(g.n) if not g.incident(v))
        full = (1 << g.n) - 1
        for k in range(1, len(cands) + 1):
            for combo in combinations(cands, k):
                cov = 0
                for x in combo:
                    cov |= rows[x]
                if cov == full:
                    return _result(combo, "setcover-lee", sem)
            if bound is not None and k > bound:
                raise AssertionError("locally-earliest-edge bound violated")
        raise AssertionError("candidates cover V")
    if strategy != "bnb":
        raise ValueError(f"unknown strategy {strategy!r}")
    search = _SetCoverSearch(rows, cands, g.n)
    best = search.run()
    return _result((search.cands[i] for i in best), "setcover-bnb", sem)


def canonicalize_tardis(g: TemporalGraph, s: Iterable[int],
                        semantics: Semantics | str = Semantics.NONSTRICT) -> set[int]:
    """Swap members not incident to a weakly locally earliest edge for ones that are.

    A member x whose earliest time-edge ((x, u), t) is not weakly locally earliest
    has some ((u, v), t') with t' < t; then R_x is contained in R_v and x is replaced
    by v. The earliest incident time strictly drops with each swap, so this ends.
    For strict semantics the graph must be proper.
    """
    sem = as_semantics(semantics)
    s = set(s)
    if not is_tardis(g, s, sem):
        raise NotATardisError("input set is not a TaRDiS")
    if sem.strict and not classify(g).proper:
        raise NotATardisError("strict canonicalization needs a proper temporal graph")
    good = locally_earliest_endpoints(g, weak=True)
    out = set()
    work = sorted(s)
    while work:
        x = work.pop(0)
        while x not in good and g.incident(x):
            t = g.incident(x)[0][1]
            best = None
            for u, tx in g.incident(x):
                if tx != t:
                    continue
                for v, t2 in g.incident(u):
                    if v != x and t2 < t and (best is None or (t2, v) < best):
                        best = (t2, v)
            if best is None:
                break
            x = best[1]
        out.add(x)
    return out


def _happy_small_tau(g: TemporalGraph, sem: Semantics) -> TardisResult:
    rows = reach_masks(g, sem)
    fp = g.footprint()
    chosen: list[int] = []
    for comp in fp.components():
        if len(comp) == 1:
            chosen.append(comp[0])
            continue
        degs = {v: fp.degree(v) for v in comp}
        ends = sorted(v for v in comp if degs[v] == 1)
        if ends:
            order = _walk(fp, ends[0], comp)
            chosen.extend(_interval_cover(order, rows))
        else:
            start = comp[0]
            chosen.append(start)
            order = _walk(fp, start, comp)
            rest = {v for v in order if not rows[start] >> v & 1}
            if rest:
                # the uncovered part of a cycle is a contiguous arc; rotate to its start
                i0 = next(i for i in range(len(order)) if order[i] in rest and order[i - 1] not in rest)
                arc = [order[(i0 + j) % len(order)] for j in range(len(rest))]
                chosen.extend(_interval_cover(arc, rows, pool=comp))
    return _result(chosen, "special-happy", sem)


def _walk(fp, start: int, comp: list[int]) -> list[int]:
    """Vertices of a path (from an end) or cycle component in traversal order."""
    order, seen, cur = [start], {start}, start
    while True:
        nxt = sorted(y for y in fp.adj[cur] if y not in seen)
        if not nxt:
            return order
        cur = nxt[0]
        seen.add(cur)
        order.append(cur)


def _interval_cover(line: list[int], rows: list[int], pool: list[int] | None = None) -> list[int]:
    """Fewest vertices whose reach sets cover ``line``; each reach set meets it in an interval."""
    pos = {v: i for i, v in enumerate(line)}
    intervals = []
    for w in (pool if pool is not None else line):
        hit = sorted(pos[x] for x in bits(rows[w]) if x in pos)
        if hit:
            if hit[-1] - hit[0] + 1 != len(hit):
                raise AssertionError("reach set is not an interval of the path")
            intervals.append((hit[0], hit[-1], w))
    chosen, nxt = [], 0
    while nxt < len(line):
        best = max((iv for iv in intervals if iv[0] <= nxt <= iv[1]), key=lambda iv: (iv[1], -iv[2]))
        chosen.append(best[2])
        nxt = best[1] + 1
    return chosen


def min_tardis_special(g: TemporalGraph, semantics: Semantics | str = Semantics.NONSTRICT) -> TardisResult | None:
    """Linear-time cases: nonstrict with lifetime 1, and happy graphs with lifetime at most 2."""
    sem = as_semantics(semantics)
    if g.lifetime <= 1 and sem is Semantics.NONSTRICT:
        comps = g.footprint().components()
        return _result((c[0] for c in comps), "special-components", sem)
    if g.lifetime <= 2 and classify(g).happy:
        return _happy_small_tau(g, sem)
    return None


def quick_reject_strict(g: TemporalGraph, k: int) -> bool | None:
    """False when n > k * 2 * Delta^tau, since each strict reachability set is that small."""
    delta = g.footprint().max_degree()
    reach_bound = 1 if delta == 0 else 2 * delta ** g.lifetime
    if g.n > k * reach_bound:
        return False
    return None
