"""Temporal graph model, the .tg wire format, and structural queries."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .errors import ParseError, TardisError


class Semantics(str, Enum):
    STRICT = "strict"
    NONSTRICT = "nonstrict"

    @property
    def strict(self) -> bool:
        return self is Semantics.STRICT


def as_semantics(value: "Semantics | str") -> Semantics:
    return value if isinstance(value, Semantics) else Semantics(value)


def norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class StaticGraph:
    """Undirected simple graph on vertices 0..n-1."""

    __slots__ = ("n", "edges", "adj", "labels")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels=None):
        if n < 0:
            raise TardisError("vertex count must be non-negative")
        es = set()
        for u, v in edges:
            if u == v:
                raise TardisError(f"self-loop on vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise TardisError(f"edge ({u}, {v}) out of range for n={n}")
            es.add(norm_edge(u, v))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(es))
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in adj)
        self.labels: tuple[str, ...] = tuple(labels) if labels is not None else tuple(str(i + 1) for i in range(n))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [], [s]
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def distances_from(self, s: int) -> list[int | None]:
        dist: list[int | None] = [None] * self.n
        dist[s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for x in frontier:
                for y in self.adj[x]:
                    if dist[y] is None:
                        dist[y] = dist[x] + 1
                        nxt.append(y)
            frontier = nxt
        return dist

    def is_forest(self) -> bool:
        return self.m == self.n - len(self.components())

    def __eq__(self, other) -> bool:
        return isinstance(other, StaticGraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"StaticGraph(n={self.n}, edges={list(self.edges)})"


class TemporalGraph:
    """Immutable temporal graph: footprint edges each carrying a sorted tuple of times.

    Times are positive integers; the lifetime is the largest time present (0 for an
    edgeless graph). Vertices with no incident edges are allowed.
    """

    __slots__ = ("n", "times", "labels", "lifetime", "_by_time", "_inc")

    def __init__(self, n: int, time_edges: Iterable[tuple[int, int, int]] = (), labels=None):
        if n < 0:
            raise TardisError("vertex count must be non-negative")
        times: dict[tuple[int, int], set[int]] = defaultdict(set)
        for u, v, t in time_edges:
            if u == v:
                raise TardisError(f"self-loop on vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise TardisError(f"edge ({u}, {v}) out of range for n={n}")
            if t < 1:
                raise TardisError(f"time {t} < 1")
            times[norm_edge(u, v)].add(int(t))
        self.n = n
        self.times: dict[tuple[int, int], tuple[int, ...]] = {
            e: tuple(sorted(ts)) for e, ts in sorted(times.items())
        }
        self.labels: tuple[str, ...] = tuple(labels) if labels is not None else tuple(str(i + 1) for i in range(n))
        if len(self.labels) != n:
            raise TardisError("label count does not match vertex count")
        self.lifetime = max((ts[-1] for ts in self.times.values()), default=0)
        by_time: dict[int, list[tuple[int, int]]] = defaultdict(list)
        inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for (u, v), ts in self.times.items():
            for t in ts:
                by_time[t].append((u, v))
                inc[u].append((v, t))
                inc[v].append((u, t))
        self._by_time = {t: tuple(es) for t, es in sorted(by_time.items())}
        self._inc = tuple(tuple(sorted(x, key=lambda p: (p[1], p[0]))) for x in inc)

    @classmethod
    def from_assignment(cls, graph: StaticGraph, assignment) -> "TemporalGraph":
        """Build (H, lambda) where ``assignment`` maps each footprint edge to an int or iterable of ints."""
        tes = []
        for e in graph.edges:
            ts = assignment[e]
            for t in (ts,) if isinstance(ts, int) else ts:
                tes.append((e[0], e[1], t))
        return cls(graph.n, tes, labels=graph.labels)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.times)

    def time_edges(self) -> list[tuple[int, int, int]]:
        """All time-edges sorted by (t, u, v)."""
        return [(u, v, t) for t, es in self._by_time.items() for u, v in es]

    @property
    def num_time_edges(self) -> int:
        return sum(len(ts) for ts in self.times.values())

    def times_present(self) -> tuple[int, ...]:
        return tuple(self._by_time)

    def snapshot(self, t: int) -> tuple[tuple[int, int], ...]:
        return self._by_time.get(t, ())

    def incident(self, v: int) -> tuple[tuple[int, int], ...]:
        """(neighbour, time) pairs at ``v``, sorted by time."""
        return self._inc[v]

    def edge_times(self, u: int, v: int) -> tuple[int, ...]:
        return self.times.get(norm_edge(u, v), ())

    def footprint(self) -> StaticGraph:
        return StaticGraph(self.n, self.times.keys(), labels=self.labels)

    def relabel(self, perm: list[int]) -> "TemporalGraph":
        """Vertex ``v`` becomes ``perm[v]``."""
        return TemporalGraph(self.n, ((perm[u], perm[v], t) for u, v, t in self.time_edges()))

    def __eq__(self, other) -> bool:
        return isinstance(other, TemporalGraph) and self.n == other.n and self.times == other.times

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.times.items())))

    def __repr__(self) -> str:
        return f"TemporalGraph(n={self.n}, tau={self.lifetime}, time_edges={self.time_edges()})"


# --- .tg format -------------------------------------------------------------

def _tokens(text: str | bytes) -> Iterator[tuple[int, list[str]]]:
    if isinstance(text, bytes):
        text = text.decode()
    for lineno, line in enumerate(text.split("\n"), 1):
        toks = line.split()
        if toks and toks[0] != "c":
            yield lineno, toks


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


def parse_temporal_graph(text: str | bytes) -> TemporalGraph:
    """Parse ``.tg`` text: ``p tg <n> <m>`` then ``m`` lines ``<u> <v> <t>`` (1-based)."""
    n = m = None
    seen: set[tuple[int, int, int]] = set()
    tes = []
    for lineno, toks in _tokens(text):
        if toks[0] == "p":
            if n is not None:
                raise ParseError("duplicate header", lineno)
            if len(toks) != 4 or toks[1] != "tg":
                raise ParseError("header must be 'p tg <n> <m>'", lineno)
            n, m = _int(toks[2], lineno), _int(toks[3], lineno)
            if n < 0 or m < 0:
                raise ParseError("negative count in header", lineno)
            continue
        if n is None:
            raise ParseError("time-edge before header", lineno)
        if len(toks) != 3:
            raise ParseError("time-edge line must be '<u> <v> <t>'", lineno)
        u, v, t = (_int(x, lineno) for x in toks)
        if u == v:
            raise ParseError(f"self-loop on vertex {u}", lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex out of range 1..{n}", lineno)
        if t < 1:
            raise ParseError(f"time {t} < 1", lineno)
        key = (*norm_edge(u - 1, v - 1), t)
        if key in seen:
            raise ParseError(f"duplicate time-edge ({u}, {v}, {t})", lineno)
        seen.add(key)
        tes.append(key)
    if n is None:
        raise ParseError("missing 'p tg' header")
    if len(tes) != m:
        raise ParseError(f"header declares {m} time-edges, found {len(tes)}")
    return TemporalGraph(n, tes)


def serialize_temporal_graph(g: TemporalGraph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p tg {g.n} {g.num_time_edges}")
    for (u, v), ts in g.times.items():
        lines.extend(f"{u + 1} {v + 1} {t}" for t in ts)
    return "\n".join(lines) + "\n"


# --- classification ---------------------------------------------------------

@dataclass(frozen=True)
class GraphClass:
    simple: bool
    proper: bool
    happy: bool
    max_degree: int
    component_count: int


def classify(g: TemporalGraph) -> GraphClass:
    simple = all(len(ts) == 1 for ts in g.times.values())
    proper = True
    for t in g.times_present():
        touched: set[int] = set()
        for u, v in g.snapshot(t):
            if u in touched or v in touched:
                proper = False
                break
            touched.update((u, v))
        if not proper:
            break
    fp = g.footprint()
    return GraphClass(simple, proper, simple and proper, fp.max_degree(), len(fp.components()))


def weakly_locally_earliest_edges(g: TemporalGraph, weak: bool = True) -> set[tuple[tuple[int, int], int]]:
    """Time-edges ((u, v), t) such that every other time-edge at u or v is later (weak: no earlier)."""
    out = set()
    for (u, v), ts in g.times.items():
        for t in ts:
            ok = True
            for x in (u, v):
                for y, t2 in g.incident(x):
                    if norm_edge(x, y) == (u, v) and t2 == t:
                        continue
                    if t2 < t or (not weak and t2 == t):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.add(((u, v), t))
    return out


def locally_earliest_endpoints(g: TemporalGraph, weak: bool = True) -> set[int]:
    """Vertices incident to a (weakly) locally earliest time-edge."""
    return {x for (e, _t) in weakly_locally_earliest_edges(g, weak) for x in e}
