"""Minimum TaRDiS by dynamic programming over a nice tree decomposition.

A state assigns every bag vertex its earliest arrival time from the partial
TaRDiS (0 meaning the vertex is in it) and records whether that arrival is
already justified by a time-edge from an earlier-reached neighbour. Under
nonstrict semantics equal-time neighbours may justify each other, so bag
vertices are also grouped into level components: vertices with the same
arrival t joined by time-t edges, justified as soon as any member is.

Each bag entry is ``(label, rep, grounded)``: ``rep`` is the smallest bag
vertex of the level component (the vertex itself under strict semantics) and
``grounded`` is shared by the whole component.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

from .core import Semantics, TemporalGraph, as_semantics, norm_edge
from .decomposition import (FORGET, INTRODUCE, JOIN, LEAF, NiceTreeDecomposition,
                            compute_tree_decomposition, make_nice)
from .errors import BudgetExceededError, WrongShapeError
from .exact import TardisResult, _result

DEFAULT_BUDGET = 1 << 24

Entry = tuple[int, int, bool]
State = tuple[Entry, ...]


def state_budget() -> int:
    raw = os.environ.get("TARDIS_BUDGET_STATES")
    return int(raw) if raw else DEFAULT_BUDGET


def state_space_estimate(lifetime: int, width: int) -> int:
    """Upper bound (tau+2)^(2(w+1)) on the number of states of one bag."""
    return (lifetime + 2) ** (2 * (width + 1))


def _prec(a: int, t: int, strict: bool) -> bool:
    return a < t if strict else a <= t


def _canon(bag: tuple[int, ...], labels: dict[int, int], parent: dict[int, int],
           grounded: dict[int, bool]) -> State:
    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    rep: dict[int, int] = {}
    gr: dict[int, bool] = {}
    for v in bag:
        r = find(v)
        rep.setdefault(r, v)
        gr[r] = gr.get(r, False) or grounded[v]
    return tuple((labels[v], rep[find(v)], gr[find(v)]) for v in bag)


def introduce_transition(g: TemporalGraph, strict: bool, bag: tuple[int, ...], state: State,
                         v: int, label: int) -> tuple[tuple[int, ...], State] | None:
    """Add ``v`` with arrival ``label`` to a bag state; None when inconsistent.

    Inconsistent means some time-edge would let a bag vertex be reached before
    its recorded arrival.
    """
    labels = {u: e[0] for u, e in zip(bag, state)}
    labels[v] = label
    parent = {u: e[1] for u, e in zip(bag, state)}
    parent[v] = v
    grounded = {u: e[2] for u, e in zip(bag, state)}
    grounded[v] = label == 0
    ground_rep: set[int] = set()

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    for u in bag:
        ts = g.times.get(norm_edge(u, v))
        if not ts:
            continue
        lu = labels[u]
        for t in ts:
            if _prec(lu, t, strict) and label > t:
                return None
            if _prec(label, t, strict) and lu > t:
                return None
        if label >= 1 and label in ts and lu < label:
            ground_rep.add(v)
        if lu >= 1 and lu in ts and label < lu:
            ground_rep.add(find(u))
        if not strict and label >= 1 and lu == label and label in ts:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    for r in ground_rep:
        grounded[r] = True
    new_bag = tuple(sorted(bag + (v,)))
    return new_bag, _canon(new_bag, labels, parent, grounded)


def forget_transition(strict: bool, bag: tuple[int, ...], state: State,
                      v: int) -> tuple[tuple[int, ...], State] | None:
    """Drop ``v``; None when its arrival can no longer be justified."""
    i = bag.index(v)
    label, rep, grounded = state[i]
    if label >= 1 and not grounded:
        if strict or not any(e[1] == rep for j, e in enumerate(state) if j != i):
            return None
    new_bag = bag[:i] + bag[i + 1:]
    rest = state[:i] + state[i + 1:]
    if rep == v:
        members = [u for u, e in zip(new_bag, rest) if e[1] == v]
        if members:
            rest = tuple((e[0], members[0], e[2]) if e[1] == v else e for e in rest)
    return new_bag, rest


def join_states(bag: tuple[int, ...], s1: State, s2: State) -> State:
    labels = {u: e[0] for u, e in zip(bag, s1)}
    parent = {u: u for u in bag}

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    grounded = {}
    for s in (s1, s2):
        for u, e in zip(bag, s):
            grounded[u] = grounded.get(u, False) or e[2]
            ra, rb = find(u), find(e[1])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return _canon(bag, labels, parent, grounded)


@dataclass
class SignatureTable:
    """Per nice-decomposition node: state -> smallest supporting set size.

    States missing from a table have infinite signature.
    """
    ntd: NiceTreeDecomposition
    semantics: Semantics
    tables: list[dict[State, int]]
    choices: list[dict[State, tuple[State, ...]]]

    def signature(self, node: int, state: State) -> float:
        return self.tables[node].get(state, float("inf"))

    @property
    def root_value(self) -> int:
        return self.tables[self.ntd.root][()]

    def psi(self, node: int, state: State) -> dict[int, tuple[int | None, int]]:
        """Per bag vertex (t_a, t_p): t_p is the arrival, t_a equals it once justified, else None."""
        bag = tuple(sorted(self.ntd.nodes[node].bag))
        return {v: (e[0] if e[2] or e[0] == 0 else None, e[0]) for v, e in zip(bag, state)}


def dp_signature(g: TemporalGraph, semantics: Semantics | str, ntd: NiceTreeDecomposition,
                 check_bound: bool = True) -> SignatureTable:
    sem = as_semantics(semantics)
    strict = sem.strict
    if ntd.n != g.n:
        raise WrongShapeError(f"decomposition has {ntd.n} vertices, graph has {g.n}")
    allowed = [sorted({0} | {t for _u, t in g.incident(v)}) for v in range(g.n)]
    tables: list[dict[State, int]] = []
    choices: list[dict[State, tuple[State, ...]]] = []
    for node in ntd.nodes:
        bag = tuple(sorted(node.bag))
        table: dict[State, int] = {}
        choice: dict[State, tuple[State, ...]] = {}

        def offer(st: State, c: int, why: tuple[State, ...]) -> None:
            if c < table.get(st, c + 1):
                table[st] = c
                choice[st] = why

        if node.kind == LEAF:
            offer((), 0, ())
        elif node.kind == INTRODUCE:
            (child,) = node.children
            cbag = tuple(sorted(ntd.nodes[child].bag))
            for st, c in tables[child].items():
                for label in allowed[node.vertex]:
                    out = introduce_transition(g, strict, cbag, st, node.vertex, label)
                    if out is not None:
                        offer(out[1], c + (label == 0), (st,))
        elif node.kind == FORGET:
            (child,) = node.children
            cbag = tuple(sorted(ntd.nodes[child].bag))
            for st, c in tables[child].items():
                out = forget_transition(strict, cbag, st, node.vertex)
                if out is not None:
                    offer(out[1], c, (st,))
        elif node.kind == JOIN:
            left, right = node.children
            by_labels: dict[tuple[int, ...], list[tuple[State, int]]] = {}
            for st, c in tables[right].items():
                by_labels.setdefault(tuple(e[0] for e in st), []).append((st, c))
            for s1, c1 in tables[left].items():
                key = tuple(e[0] for e in s1)
                zeros = key.count(0)
                for s2, c2 in by_labels.get(key, ()):
                    offer(join_states(bag, s1, s2), c1 + c2 - zeros, (s1, s2))
        else:
            raise WrongShapeError(f"unknown node kind {node.kind!r}")
        if check_bound:
            assert len(table) <= state_space_estimate(g.lifetime, len(bag) - 1)
        tables.append(table)
        choices.append(choice)
    return SignatureTable(ntd, sem, tables, choices)


def supporting_set(sig: SignatureTable, node: int, state: State) -> set[int]:
    """Vertices of the partial TaRDiS behind a finite signature, via stored choices."""
    out: set[int] = set()
    stack = [(node, state)]
    while stack:
        node, st = stack.pop()
        x = sig.ntd.nodes[node]
        if x.kind == INTRODUCE:
            bag = tuple(sorted(x.bag))
            if st[bag.index(x.vertex)][0] == 0:
                out.add(x.vertex)
        for child, cst in zip(x.children, sig.choices[node][st]):
            stack.append((child, cst))
    return out


def min_tardis_treewidth(g: TemporalGraph, semantics: Semantics | str = Semantics.NONSTRICT,
                         ntd: NiceTreeDecomposition | None = None,
                         budget: int | None = None) -> TardisResult:
    sem = as_semantics(semantics)
    fp = g.footprint()
    if ntd is None:
        ntd = make_nice(compute_tree_decomposition(fp), fp)
    else:
        bad = ntd.violations() + ntd.as_tree_decomposition().violations(fp)
        if bad:
            raise WrongShapeError("; ".join(bad))
    limit = state_budget() if budget is None else budget
    est = state_space_estimate(g.lifetime, ntd.width)
    if est > limit:
        raise BudgetExceededError(
            f"state space estimate (tau+2)^(2(w+1)) = {est} exceeds budget {limit}")
    sig = dp_signature(g, sem, ntd)
    witness = supporting_set(sig, ntd.root, ())
    assert len(witness) == sig.root_value
    return _result(witness, "treewidth", sem)
