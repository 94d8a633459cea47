"""Tree decompositions: construction, validation, nice conversion, PACE .gr/.td formats."""
from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_fill_in

from .core import StaticGraph, _int, _tokens
from .errors import InvalidDecompositionError, ParseError

EXACT_LIMIT = 12


@dataclass
class TreeDecomposition:
    """Bags indexed 0..len-1 plus undirected tree edges between bag indices."""
    n: int
    bags: list[frozenset[int]]
    edges: list[tuple[int, int]] = field(default_factory=list)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def violations(self, graph: StaticGraph | None = None) -> list[str]:
        out = []
        nb = len(self.bags)
        if nb == 0:
            out.append("no bags")
            return out
        for b in self.bags:
            if any(not 0 <= v < self.n for v in b):
                out.append("bag vertex out of range")
                break
        adj: list[list[int]] = [[] for _ in range(nb)]
        for i, j in self.edges:
            if not (0 <= i < nb and 0 <= j < nb) or i == j:
                out.append(f"bad tree edge ({i}, {j})")
                return out
            adj[i].append(j)
            adj[j].append(i)
        if len(self.edges) != nb - 1 or len(_reach(adj, 0)) != nb:
            out.append("bag graph is not a tree")
        covered = set().union(*self.bags)
        missing = [v for v in range(self.n) if v not in covered]
        if missing:
            out.append(f"vertex {missing[0] + 1} is in no bag")
        if graph is not None:
            if graph.n != self.n:
                out.append(f"decomposition is for {self.n} vertices, graph has {graph.n}")
            for u, v in graph.edges:
                if not any(u in b and v in b for b in self.bags):
                    out.append(f"edge ({u + 1}, {v + 1}) is in no bag")
                    break
        for v in range(self.n):
            holding = {i for i, b in enumerate(self.bags) if v in b}
            if holding:
                sub = [[j for j in adj[i] if j in holding] if i in holding else [] for i in range(nb)]
                if len(_reach(sub, min(holding))) != len(holding):
                    out.append(f"bags containing vertex {v + 1} are not connected")
                    break
        return out

    def validate(self, graph: StaticGraph | None = None) -> None:
        bad = self.violations(graph)
        if bad:
            raise InvalidDecompositionError("; ".join(bad))


def _reach(adj: list[list[int]], start: int) -> set[int]:
    seen, stack = {start}, [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _from_elimination_order(h: StaticGraph, order: list[int]) -> TreeDecomposition:
    pos = {v: i for i, v in enumerate(order)}
    adj = [set(a) for a in h.adj]
    bags, later = [], []
    for v in order:
        nb = {y for y in adj[v] if pos[y] > pos[v]}
        for x in nb:
            adj[x] |= nb - {x}
        bags.append(frozenset(nb | {v}))
        later.append(nb)
    edges = []
    roots = []
    for i, v in enumerate(order):
        if later[i]:
            edges.append((i, pos[min(later[i], key=lambda y: pos[y])]))
        else:
            roots.append(i)
    # join the trees of a disconnected graph into one
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return _contract(TreeDecomposition(h.n, bags, sorted(edges)))


def _contract(td: TreeDecomposition) -> TreeDecomposition:
    """Merge away every bag contained in a neighbouring bag."""
    bags = dict(enumerate(td.bags))
    adj = {i: set() for i in bags}
    for i, j in td.edges:
        adj[i].add(j)
        adj[j].add(i)
    changed = True
    while changed:
        changed = False
        for i in sorted(bags):
            sup = sorted(j for j in adj[i] if bags[i] <= bags[j])
            if sup:
                j = sup[0]
                for k in adj.pop(i):
                    adj[k].discard(i)
                    if k != j:
                        adj[k].add(j)
                        adj[j].add(k)
                del bags[i]
                changed = True
                break
    ids = sorted(bags)
    pos = {b: x for x, b in enumerate(ids)}
    edges = sorted({tuple(sorted((pos[i], pos[j]))) for i in adj for j in adj[i]})
    return TreeDecomposition(td.n, [bags[i] for i in ids], edges)


def _exact_order(h: StaticGraph) -> list[int]:
    """Optimal elimination order by dynamic programming over vertex subsets."""
    n = h.n
    adjm = [sum(1 << y for y in h.adj[v]) for v in range(n)]

    def q_size(s: int, v: int) -> int:
        # vertices outside s + v reachable from v through s
        seen, stack, out = 1 << v, [v], 0
        while stack:
            x = stack.pop()
            nbrs = adjm[x] & ~seen
            seen |= nbrs
            while nbrs:
                low = nbrs & -nbrs
                y = low.bit_length() - 1
                nbrs ^= low
                if s >> y & 1:
                    stack.append(y)
                else:
                    out += 1
        return out

    best = {0: -1}
    choice: dict[int, int] = {}
    for s in range(1, 1 << n):
        val, arg = None, -1
        m = s
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            rest = s ^ low
            cand = max(best[rest], q_size(rest, v))
            if val is None or cand < val:
                val, arg = cand, v
        best[s] = val
        choice[s] = arg
    # choice[s] is the last vertex eliminated among s
    order, s = [], (1 << n) - 1
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    return order[::-1]


def compute_tree_decomposition(h: StaticGraph, width_hint: int | None = None) -> TreeDecomposition:
    """Exact-width decomposition for small graphs, otherwise the min-fill-in heuristic.

    ``width_hint`` is accepted for interface compatibility; above the exact-search
    size limit the heuristic is used regardless.
    """
    if h.n == 0:
        return TreeDecomposition(0, [frozenset()], [])
    if h.n <= EXACT_LIMIT:
        return _from_elimination_order(h, _exact_order(h))
    g = nx.Graph()
    g.add_nodes_from(range(h.n))
    g.add_edges_from(h.edges)
    _w, tree = treewidth_min_fill_in(g)
    nodes = sorted(tree.nodes, key=lambda b: sorted(b))
    index = {b: i for i, b in enumerate(nodes)}
    edges = sorted(tuple(sorted((index[a], index[b]))) for a, b in tree.edges)
    return TreeDecomposition(h.n, [frozenset(b) for b in nodes], edges)


# --- nice decompositions ----------------------------------------------------

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: frozenset[int]
    vertex: int | None
    children: tuple[int, ...]


@dataclass
class NiceTreeDecomposition:
    """Nodes listed children-first; the last node is the root."""
    n: int
    nodes: list[NiceNode]

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max((len(x.bag) for x in self.nodes), default=0) - 1

    def violations(self) -> list[str]:
        out = []
        if not self.nodes or self.nodes[-1].bag:
            out.append("root bag is not empty")
        for i, x in enumerate(self.nodes):
            if any(c >= i for c in x.children):
                out.append(f"node {i} is listed before a child")
                break
            kids = [self.nodes[c] for c in x.children]
            if x.kind == LEAF:
                ok = not kids and not x.bag
            elif x.kind == INTRODUCE:
                ok = len(kids) == 1 and x.vertex not in kids[0].bag and x.bag == kids[0].bag | {x.vertex}
            elif x.kind == FORGET:
                ok = len(kids) == 1 and x.vertex in kids[0].bag and x.bag == kids[0].bag - {x.vertex}
            elif x.kind == JOIN:
                ok = len(kids) == 2 and all(k.bag == x.bag for k in kids)
            else:
                ok = False
            if not ok:
                out.append(f"node {i} ({x.kind}) breaks its shape rule")
        return out

    def as_tree_decomposition(self) -> TreeDecomposition:
        edges = [(c, i) for i, x in enumerate(self.nodes) for c in x.children]
        return TreeDecomposition(self.n, [x.bag for x in self.nodes], edges)


def make_nice(td: TreeDecomposition, graph: StaticGraph | None = None) -> NiceTreeDecomposition:
    """Leaf, introduce, forget and join nodes with empty leaf and root bags; same width."""
    td.validate(graph)
    nodes: list[NiceNode] = []

    def add(kind: str, bag: frozenset[int], vertex: int | None, children: tuple[int, ...]) -> int:
        nodes.append(NiceNode(kind, bag, vertex, children))
        return len(nodes) - 1

    def morph(top: int, target: frozenset[int]) -> int:
        bag = nodes[top].bag
        for v in sorted(bag - target):
            bag = bag - {v}
            top = add(FORGET, bag, v, (top,))
        for v in sorted(target - bag):
            bag = bag | {v}
            top = add(INTRODUCE, bag, v, (top,))
        return top

    adj: list[list[int]] = [[] for _ in td.bags]
    for i, j in td.edges:
        adj[i].append(j)
        adj[j].append(i)
    parent = {0: -1}
    order = [0]
    for x in order:
        for y in sorted(adj[x]):
            if y not in parent:
                parent[y] = x
                order.append(y)
    top_of: dict[int, int] = {}
    for x in reversed(order):
        bag = td.bags[x]
        kids = [top_of[y] for y in sorted(adj[x]) if parent.get(y) == x]
        if not kids:
            kids = [add(LEAF, frozenset(), None, ())]
        tops = [morph(k, bag) for k in kids]
        cur = tops[0]
        for other in tops[1:]:
            cur = add(JOIN, bag, None, (cur, other))
        top_of[x] = cur
    morph(top_of[0], frozenset())
    return NiceTreeDecomposition(td.n, nodes)


# --- PACE formats -------------------------------------------------------------

def parse_gr(text: str | bytes) -> StaticGraph:
    n = m = None
    edges = []
    for lineno, toks in _tokens(text):
        if toks[0] == "p":
            if n is not None:
                raise ParseError("duplicate header", lineno)
            if len(toks) != 4 or toks[1] != "tw":
                raise ParseError("header must be 'p tw <n> <m>'", lineno)
            n, m = _int(toks[2], lineno), _int(toks[3], lineno)
            continue
        if n is None:
            raise ParseError("edge before header", lineno)
        if len(toks) != 2:
            raise ParseError("edge line must be '<u> <v>'", lineno)
        u, v = (_int(x, lineno) for x in toks)
        if u == v:
            raise ParseError(f"self-loop on vertex {u}", lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex out of range 1..{n}", lineno)
        edges.append((u - 1, v - 1))
    if n is None:
        raise ParseError("missing 'p tw' header")
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}")
    return StaticGraph(n, edges)


def write_gr(h: StaticGraph) -> str:
    lines = [f"p tw {h.n} {h.m}"]
    lines.extend(f"{u + 1} {v + 1}" for u, v in h.edges)
    return "\n".join(lines) + "\n"


def parse_td(text: str | bytes) -> TreeDecomposition:
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for lineno, toks in _tokens(text):
        if toks[0] == "s":
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if len(toks) != 5 or toks[1] != "td":
                raise ParseError("header must be 's td <bags> <max_bag_size> <n>'", lineno)
            header = tuple(_int(x, lineno) for x in toks[2:])
            continue
        if header is None:
            raise ParseError("line before header", lineno)
        nb, _size, n = header
        if toks[0] == "b":
            if len(toks) < 2:
                raise ParseError("bag line needs an id", lineno)
            bid = _int(toks[1], lineno)
            if not 1 <= bid <= nb:
                raise ParseError(f"bag id out of range 1..{nb}", lineno)
            if bid in bags:
                raise ParseError(f"duplicate bag {bid}", lineno)
            vs = [_int(x, lineno) for x in toks[2:]]
            if any(not 1 <= v <= n for v in vs):
                raise ParseError(f"vertex out of range 1..{n}", lineno)
            bags[bid] = frozenset(v - 1 for v in vs)
            continue
        if len(toks) != 2:
            raise ParseError("tree edge line must be '<i> <j>'", lineno)
        i, j = (_int(x, lineno) for x in toks)
        if not (1 <= i <= nb and 1 <= j <= nb):
            raise ParseError(f"bag id out of range 1..{nb}", lineno)
        edges.append((i - 1, j - 1))
    if header is None:
        raise ParseError("missing 's td' header")
    nb, size, n = header
    if len(bags) != nb:
        raise ParseError(f"header declares {nb} bags, found {len(bags)}")
    if max((len(b) for b in bags.values()), default=0) > size:
        raise ParseError("a bag exceeds the declared maximum size")
    return TreeDecomposition(n, [bags[i] for i in range(1, nb + 1)], edges)


def write_td(td: TreeDecomposition) -> str:
    size = max((len(b) for b in td.bags), default=0)
    lines = [f"s td {len(td.bags)} {size} {td.n}"]
    for i, b in enumerate(td.bags, 1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(b)]))
    lines.extend(f"{i + 1} {j + 1}" for i, j in td.edges)
    return "\n".join(lines) + "\n"

