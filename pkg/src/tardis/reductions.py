"""Instance generators from NP-hardness reductions, plus brute-force source oracles."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product

from .core import StaticGraph, TemporalGraph
from .errors import InvalidInstanceError


@dataclass(frozen=True)
class SetCoverInstance:
    """Universe 0..n-1, a family of subsets, and a budget k."""
    n: int
    family: tuple[frozenset[int], ...]
    k: int

    @classmethod
    def of(cls, n: int, family, k: int) -> "SetCoverInstance":
        inst = cls(n, tuple(frozenset(s) for s in family), k)
        inst.validate()
        return inst

    def validate(self) -> None:
        if self.k < 0:
            raise InvalidInstanceError("k must be non-negative")
        if not self.family:
            raise InvalidInstanceError("family is empty")
        for j, s in enumerate(self.family):
            bad = [x for x in s if not 0 <= x < self.n]
            if bad:
                raise InvalidInstanceError(f"set {j + 1} has element {bad[0] + 1} outside the universe")
        covered = set().union(*self.family)
        if len(covered) != self.n:
            missing = min(set(range(self.n)) - covered)
            raise InvalidInstanceError(f"element {missing + 1} is in no set")

    def min_cover(self) -> int:
        """Smallest number of sets covering the universe, by brute force."""
        full = set(range(self.n))
        for r in range(len(self.family) + 1):
            for combo in combinations(self.family, r):
                if set().union(*combo) >= full:
                    return r
        raise InvalidInstanceError("universe cannot be covered")


@dataclass(frozen=True)
class CnfFormula3B:
    """Clauses as tuples of nonzero ints (+i for x_i, -i for its negation), 1-based."""
    n: int
    clauses: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, n: int, clauses) -> "CnfFormula3B":
        f = cls(n, tuple(tuple(c) for c in clauses))
        f.validate()
        return f

    def violations(self) -> list[str]:
        out = []
        for j, c in enumerate(self.clauses, 1):
            if len(c) not in (2, 3):
                out.append(f"clause {j} has {len(c)} literals, expected 2 or 3")
            if any(l == 0 or abs(l) > self.n for l in c):
                out.append(f"clause {j} has a literal outside 1..{self.n}")
            elif len({abs(l) for l in c}) != len(c):
                out.append(f"clause {j} repeats a variable")
        occ = Counter(abs(l) for c in self.clauses for l in c)
        lits = Counter(l for c in self.clauses for l in c)
        for i in range(1, self.n + 1):
            if occ[i] != 3:
                out.append(f"variable {i} occurs {occ[i]} times, expected 3")
            for l in (i, -i):
                if lits[l] > 2:
                    out.append(f"literal {l} occurs {lits[l]} times, at most 2 allowed")
        return out

    def validate(self) -> None:
        bad = self.violations()
        if bad:
            raise InvalidInstanceError("invalid formula: " + "; ".join(bad))

    def satisfiable(self) -> bool:
        for bits in product((False, True), repeat=self.n):
            if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses):
                return True
        return False


# --- Dominating Set -> strict TaRDiS -------------------------------------------

def ds_to_strict_tardis(h: StaticGraph, k: int, tau: int) -> tuple[TemporalGraph, int]:
    """Edges at time 1, then a path with times 2..tau hanging off vertex 1."""
    if tau < 1:
        raise InvalidInstanceError("lifetime must be at least 1")
    if h.n == 0:
        raise InvalidInstanceError("graph has no vertices")
    tes = [(u, v, 1) for u, v in h.edges]
    prev = 0
    for i in range(tau - 1):
        nxt = h.n + i
        tes.append((prev, nxt, i + 2))
        prev = nxt
    return TemporalGraph(h.n + tau - 1, tes), k


# --- Set Cover -> nonstrict / happy TaRDiS --------------------------------------

def _setcover_layout(inst: SetCoverInstance):
    # vertices: elements, then sets, then one vertex per (element, containing set)
    n, m = inst.n, len(inst.family)
    a: dict[tuple[int, int], int] = {}
    nxt = n + m
    for j, s in enumerate(inst.family):
        for i in sorted(s):
            a[(i, j)] = nxt
            nxt += 1
    return n, m, a, nxt


def setcover_to_nonstrict(inst: SetCoverInstance) -> tuple[TemporalGraph, int]:
    inst.validate()
    n, m, a, total = _setcover_layout(inst)
    tes = []
    for j, s in enumerate(inst.family):
        chain = [n + j] + [a[(i, j)] for i in sorted(s)]
        tes.extend((x, y, 1) for x, y in zip(chain, chain[1:]))
    for i in range(n):
        chain = [i] + [a[(i, j)] for j in range(m) if (i, j) in a]
        tes.extend((x, y, 2) for x, y in zip(chain, chain[1:]))
    tes.extend((n + j, n + j + 1, 2) for j in range(m - 1))
    return TemporalGraph(total, tes), inst.k


def setcover_to_happy(inst: SetCoverInstance) -> tuple[TemporalGraph, int]:
    """Cliques replace the paths; every time-edge gets its own time, first-phase cliques first."""
    inst.validate()
    n, m, a, total = _setcover_layout(inst)
    early = [[n + j] + [a[(i, j)] for i in sorted(s)] for j, s in enumerate(inst.family)]
    late = [[n + j for j in range(m)]]
    late += [[i] + [a[(i, j)] for j in range(m) if (i, j) in a] for i in range(n)]
    tes, t = [], 0
    for group in (early, late):
        for clique in group:
            for x, y in combinations(clique, 2):
                t += 1
                tes.append((x, y, t))
    return TemporalGraph(total, tes), inst.k


# --- exactly 3-bounded 3-SAT -> happy TaRDiS --------------------------------------

E1, E2, E3 = 1, 2, 3


def sat_to_happy_tardis(phi: CnfFormula3B) -> tuple[TemporalGraph, int]:
    """Variable cycles, clause hexagons and literal pairs with times 1..3; k = 2m + 2n.

    2-clauses are padded with an always-false literal whose pair attaches to no
    variable gadget.
    """
    phi.validate()
    n, m = phi.n, len(phi.clauses)
    labels: list[str] = []
    tes: list[tuple[int, int, int]] = []

    def vertex(name: str) -> int:
        labels.append(name)
        return len(labels) - 1

    gadget = []
    for i in range(1, n + 1):
        g = {x: vertex(f"{x}_{i}") for x in ("T1", "T2", "F2", "F1", "b", "v2", "v1", "a")}
        tes += [(g["T1"], g["T2"], E1), (g["F1"], g["F2"], E1), (g["v1"], g["v2"], E1),
                (g["a"], g["v1"], E2), (g["b"], g["v2"], E2),
                (g["a"], g["T1"], E3), (g["b"], g["F1"], E3),
                (g["T2"], g["F2"], E3)]
        gadget.append(g)
    seen: Counter = Counter()
    for j, clause in enumerate(phi.clauses, 1):
        q = [vertex(f"q{r}_{j}") for r in range(1, 7)]
        tes += [(q[0], q[1], E3), (q[2], q[3], E3), (q[4], q[5], E3),
                (q[1], q[2], E1), (q[3], q[4], E1), (q[5], q[0], E1)]
        padded = list(clause) + [0] * (3 - len(clause))
        for host, lit in zip((q[0], q[2], q[4]), padded):
            seen[lit] += 1
            occ = seen[lit]
            name = "bot" if lit == 0 else (f"x{lit}" if lit > 0 else f"~x{-lit}")
            l_vertex = vertex(f"{name}^{occ}")
            l_bar = vertex(f"{name}^{occ}'")
            tes += [(l_vertex, l_bar, E3), (host, l_vertex, E2)]
            if lit != 0:
                side = "T" if lit > 0 else "F"
                tes.append((l_bar, gadget[abs(lit) - 1][f"{side}{occ}"], E2))
    g = TemporalGraph(len(labels), tes, labels=labels)
    assert g.n == 8 * n + 12 * m
    return g, 2 * m + 2 * n
