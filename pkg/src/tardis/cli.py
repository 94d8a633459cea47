"""Command-line front end. Results go to stdout as one JSON object; diagnostics go to stderr."""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import __version__
from .core import Semantics, StaticGraph, TemporalGraph, classify, parse_temporal_graph, serialize_temporal_graph
from .decomposition import compute_tree_decomposition, make_nice, parse_gr, parse_td
from .errors import (BudgetExceededError, InfeasibleError, ParseError, PreconditionError,
                     SizeLimitError, TardisError)
from .exact import min_tardis_bruteforce, min_tardis_setcover, min_tardis_special
from .maxmin import maxmin_value, min_dominating_set
from .reach import bits, foremost_arrivals, is_tardis, reach_masks
from .reductions import (CnfFormula3B, SetCoverInstance, ds_to_strict_tardis, sat_to_happy_tardis,
                         setcover_to_happy, setcover_to_nonstrict)
from .tree import min_tardis_tree
from .treewidth import min_tardis_treewidth, state_budget, state_space_estimate

EXIT_USAGE, EXIT_PARSE, EXIT_INFEASIBLE, EXIT_BUDGET = 1, 2, 3, 4
ORACLE_LIMIT = 14


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_temporal(path: str) -> TemporalGraph:
    return parse_temporal_graph(_read(path))


def _load_static(path: str) -> StaticGraph:
    text = _read(path)
    for line in text.splitlines():
        toks = line.split()
        if toks and toks[0] == "p":
            if len(toks) > 1 and toks[1] == "tg":
                return parse_temporal_graph(text).footprint()
            break
    return parse_gr(text)


def _temporal_summary(g: TemporalGraph) -> dict:
    return {"n": g.n, "edges": len(g.times), "time_edges": g.num_time_edges, "lifetime": g.lifetime}


def _static_summary(h: StaticGraph) -> dict:
    return {"n": h.n, "edges": h.m}


def _vertex_list(text: str, n: int) -> list[int]:
    out = []
    for tok in filter(None, (t.strip() for t in text.split(","))):
        try:
            v = int(tok)
        except ValueError:
            raise UsageError(f"bad vertex {tok!r}") from None
        if not 1 <= v <= n:
            raise UsageError(f"vertex {v} out of range 1..{n}")
        out.append(v - 1)
    return out


def _budget(args) -> int:
    return args.budget if args.budget is not None else state_budget()


# --- commands ---------------------------------------------------------------------

def cmd_solve(args) -> dict:
    g = _load_temporal(args.input)
    sem = Semantics(args.semantics)
    algo = args.algo
    ntd = None
    if args.td:
        if algo not in ("auto", "treewidth"):
            raise UsageError("--td only applies to the treewidth algorithm")
        algo = "treewidth"
        ntd = make_nice(parse_td(_read(args.td)), g.footprint())
    if algo == "auto":
        res = min_tardis_special(g, sem)
        if res is None and g.footprint().is_forest():
            res = min_tardis_tree(g, sem)
        if res is None:
            td = compute_tree_decomposition(g.footprint())
            if state_space_estimate(g.lifetime, td.width) <= _budget(args):
                res = min_tardis_treewidth(g, sem, make_nice(td, g.footprint()), budget=_budget(args))
        if res is None:
            res = min_tardis_setcover(g, sem)
    elif algo == "bruteforce":
        res = min_tardis_bruteforce(g, sem)
    elif algo == "setcover":
        res = min_tardis_setcover(g, sem)
    elif algo == "tree":
        res = min_tardis_tree(g, sem)
    elif algo == "treewidth":
        res = min_tardis_treewidth(g, sem, ntd, budget=_budget(args))
    else:
        res = min_tardis_special(g, sem)
        if res is None:
            raise PreconditionError("no special-case solver applies to this instance")
    out = {"instance_summary": _temporal_summary(g), "result": res.as_dict(), "algorithm": res.algorithm}
    if args.k is not None:
        out["answer"] = "yes" if res.size <= args.k else "no"
    return out


def cmd_maxmin(args) -> dict:
    h = _load_static(args.input)
    if args.tau < 1:
        raise UsageError("--tau must be at least 1")
    res = maxmin_value(h, args.tau, args.variant, args.algo, budget=args.budget)
    out = {"instance_summary": _static_summary(h), "result": res.as_dict(), "algorithm": res.algorithm}
    if args.k is not None:
        out["answer"] = "yes" if res.value >= args.k else "no"
    return out


def cmd_verify(args) -> dict:
    g = _load_temporal(args.input)
    s = _vertex_list(args.set, g.n)
    rows = reach_masks(g, args.semantics)
    ok = is_tardis(g, s, args.semantics, rows=rows)
    covered = 0
    for x in s:
        covered |= rows[x]
    missed = [v + 1 for v in range(g.n) if not covered >> v & 1]
    return {"instance_summary": _temporal_summary(g), "result": {"is_tardis": ok, "unreached": missed},
            "algorithm": "reach-closure", "answer": "yes" if ok else "no"}


def cmd_reach(args) -> dict:
    g = _load_temporal(args.input)
    if args.source is None:
        if args.depart_after is not None:
            raise UsageError("--depart-after needs --source")
        rows = reach_masks(g, args.semantics)
        result = {"reach_sets": [[v + 1 for v in bits(r)] for r in rows]}
        algo = "reach-closure"
    else:
        (src,) = _vertex_list(str(args.source), g.n)
        table = foremost_arrivals(g, src, args.depart_after, args.semantics)
        result = {"source": src + 1, "arrival": list(table.arrival),
                  "reach_set": sorted(v + 1 for v in table.reached())}
        algo = "foremost"
    return {"instance_summary": _temporal_summary(g), "result": result, "algorithm": algo}


def cmd_classify(args) -> dict:
    g = _load_temporal(args.input)
    c = classify(g)
    return {"instance_summary": _temporal_summary(g), "algorithm": "classify",
            "result": {"simple": c.simple, "proper": c.proper, "happy": c.happy,
                       "max_degree": c.max_degree, "component_count": c.component_count,
                       "footprint_is_forest": g.footprint().is_forest()}}


def _random_instance(n: int, p: float, tau: int, seed: int) -> TemporalGraph:
    rng = random.Random(seed)
    choices = [(t,) for t in range(1, tau + 1)]
    choices += [(a, b) for a in range(1, tau + 1) for b in range(a + 1, tau + 1)]
    tes = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                tes.extend((u, v, t) for t in rng.choice(choices))
    return TemporalGraph(n, tes)


def _emit_instance(g: TemporalGraph, args, source: dict, expected: dict | None) -> dict:
    out = {"instance_summary": _temporal_summary(g), "algorithm": f"gen-{args.kind}"}
    result = {"source": source, "expected": expected}
    text = serialize_temporal_graph(g, [f"generated by tardis gen {args.kind}"])
    if args.out:
        base = Path(args.out)
        tg = base if base.suffix == ".tg" else base.with_suffix(".tg")
        tg.write_text(text)
        tg.with_suffix(".json").write_text(json.dumps(result, sort_keys=True, indent=2) + "\n")
        result["path"] = str(tg)
    else:
        result["tg"] = text
    out["result"] = result
    return out


def _parse_family(text: str) -> list[list[int]]:
    fam = []
    for part in text.split(";"):
        try:
            fam.append([int(x) - 1 for x in part.split(",") if x.strip()])
        except ValueError:
            raise UsageError(f"bad set {part!r}") from None
    return fam


def cmd_gen(args) -> dict:
    kind = args.kind
    if kind == "random":
        if args.n is None or args.n < 0 or not 0 <= args.p <= 1 or args.tau < 1:
            raise UsageError("gen random needs --n >= 0, 0 <= --p <= 1 and --tau >= 1")
        g = _random_instance(args.n, args.p, args.tau, args.seed)
        return _emit_instance(g, args, {"n": args.n, "p": repr(args.p), "tau": args.tau, "seed": args.seed}, None)
    if args.k is None and kind in ("ds", "setcover"):
        raise UsageError(f"gen {kind} needs --k")
    if kind == "ds":
        if not args.input:
            raise UsageError("gen ds needs an input graph")
        h = _load_static(args.input)
        g, k = ds_to_strict_tardis(h, args.k, args.tau)
        expected = None
        if h.n <= 40:
            gamma = min_dominating_set(h)[0]
            expected = {"min_size": gamma, "answer": "yes" if gamma <= k else "no"}
        return _emit_instance(g, args, {"graph": [[u + 1, v + 1] for u, v in h.edges], "n": h.n,
                                        "k": k, "tau": args.tau, "semantics": "strict"}, expected)
    if kind == "setcover":
        if args.sets is None or args.universe is None:
            raise UsageError("gen setcover needs --universe and --sets")
        inst = SetCoverInstance.of(args.universe, _parse_family(args.sets), args.k)
        g, k = (setcover_to_happy if args.happy else setcover_to_nonstrict)(inst)
        expected = None
        if len(inst.family) <= ORACLE_LIMIT:
            best = inst.min_cover()
            expected = {"min_size": best, "answer": "yes" if best <= k else "no"}
        return _emit_instance(g, args, {"universe": inst.n, "k": k, "happy": args.happy,
                                        "sets": [sorted(x + 1 for x in s) for s in inst.family],
                                        "semantics": "strict" if args.happy else "nonstrict"}, expected)
    if args.clauses is None or args.vars is None:
        raise UsageError("gen sat3 needs --vars and --clauses")
    try:
        clauses = [tuple(int(x) for x in c.split(",") if x.strip()) for c in args.clauses.split(";")]
    except ValueError:
        raise UsageError("bad --clauses") from None
    phi = CnfFormula3B.of(args.vars, clauses)
    g, k = sat_to_happy_tardis(phi)
    expected = None
    if phi.n <= 20:
        sat = phi.satisfiable()
        expected = {"satisfiable": sat, "answer": "yes" if sat else "no"}
    return _emit_instance(g, args, {"vars": phi.n, "clauses": [list(c) for c in phi.clauses], "k": k,
                                    "semantics": "strict"}, expected)


# --- argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tardis", description="Temporal reachability dominating sets.")
    p.add_argument("--version", action="version", version=f"tardis {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--timing", action="store_true", help="report wall-clock elapsed_ms instead of 0")
    common.add_argument("--threads", type=int, default=1, help="worker count (results never depend on it)")
    common.add_argument("--budget", type=int, default=None, help="state/assignment budget")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="minimum TaRDiS")
    s.add_argument("input")
    s.add_argument("--semantics", choices=["strict", "nonstrict"], default="nonstrict")
    s.add_argument("--algo", choices=["auto", "bruteforce", "setcover", "tree", "treewidth", "special"],
                   default="auto")
    s.add_argument("--td", help="PACE .td decomposition of the footprint")
    s.add_argument("--k", type=int)

    m = sub.add_parser("maxmin", parents=[common], help="MaxMinTaRDiS value of a static graph")
    m.add_argument("input")
    m.add_argument("--variant", choices=["strict", "nonstrict", "happy"], default="nonstrict")
    m.add_argument("--tau", type=int, required=True)
    m.add_argument("--algo", choices=["auto", "enum", "shortcut"], default="auto")
    m.add_argument("--k", type=int)

    v = sub.add_parser("verify", parents=[common], help="check a candidate TaRDiS")
    v.add_argument("input")
    v.add_argument("--semantics", choices=["strict", "nonstrict"], default="nonstrict")
    v.add_argument("--set", required=True, help="comma-separated 1-based vertices")

    r = sub.add_parser("reach", parents=[common], help="reachability sets or foremost arrivals")
    r.add_argument("input")
    r.add_argument("--semantics", choices=["strict", "nonstrict"], default="nonstrict")
    r.add_argument("--source", type=int)
    r.add_argument("--depart-after", type=int)

    c = sub.add_parser("classify", parents=[common], help="simple/proper/happy classification")
    c.add_argument("input")

    g = sub.add_parser("gen", parents=[common], help="instance generators")
    g.add_argument("kind", choices=["random", "ds", "setcover", "sat3"])
    g.add_argument("input", nargs="?", help="static graph (.gr) for gen ds")
    g.add_argument("--n", type=int)
    g.add_argument("--p", type=float, default=0.3)
    g.add_argument("--tau", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--k", type=int)
    g.add_argument("--universe", type=int)
    g.add_argument("--sets", help="sets separated by ';', elements by ',' (1-based)")
    g.add_argument("--happy", action="store_true", help="set cover: emit the happy construction")
    g.add_argument("--vars", type=int)
    g.add_argument("--clauses", help="clauses separated by ';', literals by ',' (+i / -i)")
    g.add_argument("--out", help="write <out>.tg and a <out>.json sidecar")
    return p


COMMANDS = {"solve": cmd_solve, "maxmin": cmd_maxmin, "verify": cmd_verify, "reach": cmd_reach,
            "classify": cmd_classify, "gen": cmd_gen}


def run(argv: list[str]) -> tuple[int, str]:
    """Return (exit code, stdout text)."""
    try:
        args = build_parser().parse_args(argv)
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        if args.budget is not None and args.budget < 1:
            raise UsageError("--budget must be positive")
        start = time.perf_counter()
        out = COMMANDS[args.command](args)
        elapsed = round((time.perf_counter() - start) * 1000) if args.timing else 0
    except UsageError as exc:
        print(f"tardis: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE, ""
    except ParseError as exc:
        print(f"tardis: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE, ""
    except InfeasibleError as exc:
        print(f"tardis: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE, ""
    except (BudgetExceededError, SizeLimitError) as exc:
        print(f"tardis: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET, ""
    except (PreconditionError, TardisError, ValueError) as exc:
        print(f"tardis: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, ""
    out["command"] = args.command
    out["elapsed_ms"] = elapsed
    return 0, json.dumps(out, sort_keys=True) + "\n"


def main(argv: list[str] | None = None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
