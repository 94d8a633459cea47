import random
from itertools import combinations

from hypothesis import strategies as st

from tardis.core import StaticGraph, TemporalGraph


def random_temporal_graph(rng: random.Random, n: int, tau: int, p: float = 0.4,
                          max_apps: int = 1) -> TemporalGraph:
    tes = []
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            k = rng.randint(1, min(max_apps, tau))
            tes.extend((u, v, t) for t in rng.sample(range(1, tau + 1), k))
    return TemporalGraph(n, tes)


def random_tree(rng: random.Random, n: int, tau: int, max_apps: int = 3) -> TemporalGraph:
    tes = []
    for v in range(1, n):
        u = rng.randrange(v)
        k = rng.randint(1, min(max_apps, tau))
        tes.extend((u, v, t) for t in rng.sample(range(1, tau + 1), k))
    perm = list(range(n))
    rng.shuffle(perm)
    return TemporalGraph(n, tes).relabel(perm)


def random_connected(rng: random.Random, n: int, extra: int) -> StaticGraph:
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    if n > 1:
        for _ in range(extra):
            u, v = sorted(rng.sample(range(n), 2))
            edges.add((u, v))
    return StaticGraph(n, edges)


def random_happy(rng: random.Random, n: int, p: float = 0.4) -> TemporalGraph:
    """Greedy proper colouring in random edge order, colours mapped to random distinct times."""
    edges = [e for e in combinations(range(n), 2) if rng.random() < p]
    rng.shuffle(edges)
    used = [set() for _ in range(n)]
    colour = {}
    for u, v in edges:
        c = min(c for c in range(2 * n) if c not in used[u] and c not in used[v])
        used[u].add(c)
        used[v].add(c)
        colour[(u, v)] = c
    times = rng.sample(range(1, 4 * n + 1), 2 * n) if n else []
    return TemporalGraph(n, [(u, v, times[c]) for (u, v), c in colour.items()])


def enumerate_arrivals(g: TemporalGraph, source: int, depart_after, strict: bool) -> list:
    """Earliest arrival over every temporal path, found by exhaustive DFS."""
    best = [None] * g.n
    if depart_after is None:
        best[source] = 0

    def ok(prev, t):
        if prev is None:
            lo = depart_after if depart_after is not None else 0
            return t > lo if (strict or depart_after is None) else t >= lo
        return t > prev if strict else t >= prev

    def dfs(x, prev, visited):
        for y, t in g.incident(x):
            if y in visited or not ok(prev, t):
                continue
            if best[y] is None or t < best[y]:
                best[y] = t
            visited.add(y)
            dfs(y, t, visited)
            visited.discard(y)

    dfs(source, None, {source})
    return best


@st.composite
def temporal_graphs(draw, max_n: int = 8, max_tau: int = 4, max_apps: int = 2):
    n = draw(st.integers(0, max_n))
    tau = draw(st.integers(1, max_tau))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    tes = []
    for u, v in chosen:
        times = draw(st.sets(st.integers(1, tau), min_size=1, max_size=max_apps))
        tes.extend((u, v, t) for t in times)
    return TemporalGraph(n, tes)


@st.composite
def static_graphs(draw, max_n: int = 7):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return StaticGraph(n, chosen)
