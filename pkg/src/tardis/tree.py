"""Minimum TaRDiS on temporal graphs whose footprint is a forest, in O(|E|^2) per tree."""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import Semantics, TemporalGraph, as_semantics, norm_edge
from .errors import WrongShapeError
from .exact import TardisResult, _result

_INF = float("inf")


@dataclass
class RootedTemporalTree:
    graph: TemporalGraph
    root: int
    vertices: list[int]
    parent: dict[int, int | None]
    children: dict[int, list[int]]
    depth: dict[int, int]

    @classmethod
    def build(cls, g: TemporalGraph, comp: list[int], root: int) -> "RootedTemporalTree":
        fp_adj = {v: sorted(y for y, _ in g.incident(v)) for v in comp}
        parent: dict[int, int | None] = {root: None}
        children: dict[int, list[int]] = {v: [] for v in comp}
        depth = {root: 0}
        frontier = [root]
        while frontier:
            nxt = []
            for x in frontier:
                for y in dict.fromkeys(fp_adj[x]):
                    if y not in parent:
                        parent[y] = x
                        depth[y] = depth[x] + 1
                        children[x].append(y)
                        nxt.append(y)
            frontier = nxt
        return cls(g, root, sorted(comp), parent, children, depth)


@dataclass
class MarkState:
    s: set[int] = field(default_factory=set)
    marked: set[int] = field(default_factory=set)
    # working appearance lists; only ever shrink
    lam: dict[tuple[int, int], list[int]] = field(default_factory=dict)

    def lmin(self, u: int, v: int | None) -> float:
        return _INF if v is None else self.lam[norm_edge(u, v)][0]

    def lmax(self, u: int, v: int | None) -> float:
        return _INF if v is None else self.lam[norm_edge(u, v)][-1]


def _reach_within(tree: RootedTemporalTree, st: MarkState, src: int, strict: bool) -> set[int]:
    """R_src over the working appearances (a tree has a unique path to each vertex)."""
    arrive = {src: 0}
    stack = [src]
    while stack:
        x = stack.pop()
        a = arrive[x]
        nbrs = list(tree.children[x])
        if tree.parent[x] is not None:
            nbrs.append(tree.parent[x])
        for y in nbrs:
            if y in arrive:
                continue
            ok = [t for t in st.lam[norm_edge(x, y)] if (t > a if strict else t >= a)]
            if ok:
                arrive[y] = ok[0]
                stack.append(y)
    return set(arrive)


def _is_star(tree: RootedTemporalTree, unmarked: set[int]) -> int | None:
    """Centre of the footprint induced on ``unmarked`` if it is a star, else None."""
    if len(unmarked) == 1:
        return next(iter(unmarked))
    nb = {v: {y for y in tree.children[v] if y in unmarked} for v in unmarked}
    for v in unmarked:
        p = tree.parent[v]
        if p is not None and p in unmarked:
            nb[v].add(p)
    edges = sum(len(x) for x in nb.values()) // 2
    if edges != len(unmarked) - 1:
        return None
    centres = sorted((v for v in unmarked if len(nb[v]) == len(unmarked) - 1),
                     key=lambda v: (tree.depth[v], v))
    return centres[0] if centres else None


def _solve_tree(tree: RootedTemporalTree, strict: bool, check: bool = False) -> set[int]:
    g = tree.graph
    s_off = 1 if strict else 0
    st = MarkState(lam={e: list(g.times[e]) for e in g.times if e[0] in tree.parent})
    all_v = set(tree.vertices)
    while st.marked != all_v:
        unmarked = all_v - st.marked
        centre = _is_star(tree, unmarked)
        if centre is not None:
            st.s.add(centre)
            return st.s
        deepest = max(tree.depth[v] for v in unmarked)
        l0 = min(v for v in unmarked if tree.depth[v] == deepest)
        p = tree.parent[l0]
        l = min((c for c in tree.children[p] if c not in st.marked), key=lambda c: (st.lmax(p, c), c))
        gp = tree.parent[p]
        while l not in st.marked:
            appearances = sum(len(x) for x in st.lam.values())
            if st.lmax(l, p) < st.lmin(p, gp) + s_off:
                st.s.add(p)
                st.marked |= _reach_within(tree, st, p, strict)
            elif st.lmax(l, p) >= st.lmax(p, gp) + s_off:
                if p not in st.s:
                    st.marked.discard(p)
                st.marked.update(tree.children[p])
            else:
                st.lam[norm_edge(p, gp)].pop()
            if check:
                # each pass either marks l (ending the loop) or deletes an appearance
                assert l in st.marked or sum(len(x) for x in st.lam.values()) < appearances
    return st.s


def min_tardis_tree(g: TemporalGraph, semantics: Semantics | str = Semantics.NONSTRICT,
                    check: bool = False) -> TardisResult:
    """Minimum TaRDiS when the footprint is a forest; each tree rooted at its lowest vertex."""
    sem = as_semantics(semantics)
    fp = g.footprint()
    if not fp.is_forest():
        raise WrongShapeError("footprint is not a forest")
    s: set[int] = set()
    for comp in fp.components():
        tree = RootedTemporalTree.build(g, comp, comp[0])
        s |= _solve_tree(tree, sem.strict, check)
    return _result(s, "tree", sem)
