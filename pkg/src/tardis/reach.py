"""Temporal reachability: foremost arrivals, reachability sets, closure, TaRDiS checks."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import Semantics, TemporalGraph, as_semantics

# Distinct from every time value; never compared arithmetically.
UNREACHABLE = None

_INF = float("inf")


@dataclass(frozen=True)
class ForemostTable:
    source: int
    depart_after: int | None
    semantics: Semantics
    arrival: tuple[int | None, ...]

    def reached(self) -> set[int]:
        return {x for x, a in enumerate(self.arrival) if a is not UNREACHABLE}


def foremost_arrivals(g: TemporalGraph, source: int, depart_after: int | None = None,
                      semantics: Semantics | str = Semantics.NONSTRICT) -> ForemostTable:
    """Earliest arrival at every vertex over temporal paths from ``source``.

    With ``depart_after`` set, only paths whose first time-edge is later than it
    (strict) or no earlier than it (nonstrict) count, and the source itself is
    reported unreachable since closed walks are not paths.
    """
    sem = as_semantics(semantics)
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} out of range")
    eff = [_INF] * g.n
    eff[source] = 0 if depart_after is None else depart_after
    for t in g.times_present():
        if sem.strict:
            for u, v in g.snapshot(t):
                if eff[u] < t and eff[v] > t:
                    eff[v] = t
                elif eff[v] < t and eff[u] > t:
                    eff[u] = t
        else:
            adj: dict[int, list[int]] = {}
            for u, v in g.snapshot(t):
                adj.setdefault(u, []).append(v)
                adj.setdefault(v, []).append(u)
            stack = [x for x in adj if eff[x] <= t]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if eff[y] > t:
                        eff[y] = t
                        stack.append(y)
    arrival = [UNREACHABLE if a == _INF else int(a) for a in eff]
    arrival[source] = 0 if depart_after is None else UNREACHABLE
    return ForemostTable(source, depart_after, sem, tuple(arrival))


def reach_set(g: TemporalGraph, source: int, semantics: Semantics | str = Semantics.NONSTRICT) -> set[int]:
    return foremost_arrivals(g, source, None, semantics).reached()


def reach_masks(g: TemporalGraph, semantics: Semantics | str = Semantics.NONSTRICT) -> list[int]:
    """Row ``u`` is a bitmask of R_u, computed for all sources at once."""
    sem = as_semantics(semantics)
    n = g.n
    # sources[x]: bitmask of sources that reach x so far
    sources = [1 << x for x in range(n)]
    for t in g.times_present():
        snap = g.snapshot(t)
        if sem.strict:
            upd = []
            for u, v in snap:
                upd.append((v, sources[u]))
                upd.append((u, sources[v]))
            for x, mask in upd:
                sources[x] |= mask
        else:
            parent: dict[int, int] = {}

            def find(x: int) -> int:
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for u, v in snap:
                parent.setdefault(u, u)
                parent.setdefault(v, v)
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
            merged: dict[int, int] = {}
            for x in parent:
                r = find(x)
                merged[r] = merged.get(r, 0) | sources[x]
            for x in parent:
                sources[x] = merged[find(x)]
    rows = [0] * n
    for x in range(n):
        m = sources[x]
        while m:
            low = m & -m
            rows[low.bit_length() - 1] |= 1 << x
            m ^= low
    return rows


@dataclass(frozen=True)
class ReachClosure:
    semantics: Semantics
    rows: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, uv: tuple[int, int]) -> bool:
        u, v = uv
        return bool(self.rows[u] >> v & 1)

    def reach_set(self, u: int) -> set[int]:
        return {v for v in range(self.n) if self.rows[u] >> v & 1}

    def matrix(self) -> list[list[bool]]:
        return [[bool(r >> v & 1) for v in range(self.n)] for r in self.rows]


def closure(g: TemporalGraph, semantics: Semantics | str = Semantics.NONSTRICT) -> ReachClosure:
    sem = as_semantics(semantics)
    return ReachClosure(sem, tuple(reach_masks(g, sem)))


def is_tardis(g: TemporalGraph, s: Iterable[int], semantics: Semantics | str = Semantics.NONSTRICT,
              rows: list[int] | None = None) -> bool:
    s = list(s)
    for x in s:
        if not 0 <= x < g.n:
            raise ValueError(f"vertex {x} out of range")
    if rows is None:
        rows = reach_masks(g, semantics)
    covered = 0
    for x in s:
        covered |= rows[x]
    return covered == (1 << g.n) - 1


def sole_reachability(rows: list[int], s: Iterable[int], v: int) -> int:
    """Bitmask of vertices reached from ``v`` and from no other member of ``s``."""
    other = 0
    for u in s:
        if u != v:
            other |= rows[u]
    return rows[v] & ~other


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out
