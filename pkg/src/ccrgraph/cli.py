"""Command-line front end.

Every verb prints one JSON report to standard output::

    {"schema_version": "1", "verb": ..., "inputs": ..., "results": ..., "pass": ...}

Exit codes: 0 success, 1 failed verification, 2 usage or parse error,
3 resource exhaustion (size caps, extension search running dry).
Graph and family arguments are a file path, ``-`` for standard input, or
inline text starting with ``n=`` / ``m=`` where ``;`` separates lines.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable

import numpy as np

from . import gf2
from .graphcore import (
    Graph,
    GraphFormatError,
    SizeLimitError,
    canonicalize,
    classify,
    enumerate_classes,
    equivalent,
    g_infinity,
    graphs_isomorphic,
    is_simple,
    parse_graph,
    random_graph,
    subset_order,
)
from .graphcore.graph import bits
from .reps import full_report, rep_bipartite, rep_canonical, rep_pairs, verify_relations
from .reps.operators import DIM_CAP
from .setfam import (
    FamilyFormatError,
    FinitePair,
    ResourceExhaustedError,
    SetFamily,
    bipartite_graph,
    densify,
    dual,
    extend_to_full_matrix,
    fk_family,
    format_family,
    is_almost_disjoint,
    is_independent,
    is_noncovered,
    is_separating,
    pair_subgraph,
    parse_family,
)

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# -- input helpers -----------------------------------------------------


def _read_source(src: str, stdin) -> str:
    if src == "-":
        return stdin.read()
    head = src.lstrip()
    if head.startswith("n=") or head.startswith("m="):
        return src.replace(";", "\n")
    try:
        with open(src, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {src!r}: {exc.strerror}") from None


def _graph(src: str, stdin) -> Graph:
    return parse_graph(_read_source(src, stdin))


def _family(src: str, stdin) -> SetFamily:
    return parse_family(_read_source(src, stdin))


def _index_list(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _graph_echo(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def _family_echo(fam: SetFamily) -> dict:
    return {"m": fam.universe_size, "members": fam.as_lists()}


def _write_dot(path: str | None, g: Graph, name: str = "G", labels=None) -> None:
    if path:
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(g.to_dot(name, labels))
        except OSError as exc:
            raise UsageError(f"cannot write {path!r}: {exc.strerror}") from None


# -- verbs -------------------------------------------------------------
#
# Each returns (inputs, results, pass-or-None).


def _cmd_classify(args, stdin):
    g = _graph(args.graph, stdin)
    _write_dot(args.dot, g)
    c = classify(g)
    simple, witness = is_simple(g)
    res = {"n": c.n, "k": c.k, "l": c.l, "label": c.label, "simple": c.simple}
    if witness is not None:
        res["central_witness"] = list(bits(witness))
    return _graph_echo(g), res, None


def _cmd_canonicalize(args, stdin):
    g = _graph(args.graph, stdin)
    cf = canonicalize(g)
    _write_dot(args.dot, cf.graph(), "canonical")
    res = {
        "k": cf.k,
        "l": cf.l,
        "moves": [[m.x, m.vertices()] for m in cf.moves],
        "supports": [list(bits(cf.support(v))) for v in range(g.n)],
        "canonical_edges": [list(e) for e in cf.graph().edges()],
    }
    return _graph_echo(g), res, None


def _cmd_equiv(args, stdin):
    if args.first == "-" and args.second == "-":
        raise UsageError("only one input may come from standard input")
    g, h = _graph(args.first, stdin), _graph(args.second, stdin)
    res = {"equivalent": equivalent(g, h), "k": [canonicalize(g).k, canonicalize(h).k]}
    return {"first": _graph_echo(g), "second": _graph_echo(h)}, res, None


def _cmd_enumerate(args, stdin):
    table = enumerate_classes(args.n, jobs=args.jobs)
    return {"n": args.n}, table.as_dict(), None


def _cmd_ginf(args, stdin):
    g = _graph(args.graph, stdin)
    h = g_infinity(g)
    labels = ["{" + ",".join(map(str, bits(s))) + "}" for s in subset_order(g.n)]
    _write_dot(args.dot, h, "ginf", labels)
    res = {
        "vertices": [list(bits(s)) for s in subset_order(g.n)],
        "edges": [list(e) for e in h.edges()],
    }
    return _graph_echo(g), res, None


def _cmd_iso(args, stdin):
    if args.first == "-" and args.second == "-":
        raise UsageError("only one input may come from standard input")
    g, h = _graph(args.first, stdin), _graph(args.second, stdin)
    mapping = graphs_isomorphic(g, h)
    res = {"isomorphic": mapping is not None, "mapping": mapping}
    return {"first": _graph_echo(g), "second": _graph_echo(h)}, res, None


def _cmd_family_check(args, stdin):
    fam = _family(args.family, stdin)
    sel = args.max_selection
    ind, bad = is_independent(fam, sel)
    sep_size = args.sep_size
    sep, sep_bad = is_separating(fam, sep_size)
    nc, nc_bad = is_noncovered(fam)
    res = {
        "independent": ind,
        "independence_counterexample": None if bad is None else [list(bad[0]), list(bad[1])],
        "max_selection": sel,
        "separating": sep,
        "separation_counterexample": None if sep_bad is None else [sep_bad[0], sep_bad[1]],
        "separation_size": sep_size,
        "noncovered": nc,
        "covered_member": nc_bad,
    }
    if args.threshold is not None:
        ad, ad_bad = is_almost_disjoint(fam, args.threshold)
        res["almost_disjoint"] = ad
        res["almost_disjoint_pair"] = None if ad_bad is None else list(ad_bad)
        res["threshold"] = args.threshold
    return _family_echo(fam), res, None


def _cmd_dual(args, stdin):
    fam = _family(args.family, stdin)
    d = dual(fam)
    return _family_echo(fam), {"dual": _family_echo(d), "text": format_family(d)}, None


def _cmd_fk(args, stdin):
    fam, legend = fk_family(args.depth)
    res = {
        "family": _family_echo(fam),
        "legend": [[m, list(strings)] for m, strings in legend],
    }
    return {"depth": args.depth}, res, None


def _cmd_bipartite(args, stdin):
    fam = _family(args.family, stdin)
    g = bipartite_graph(fam)
    labels = [f"y{i}" for i in range(fam.universe_size)] + [f"x{j}" for j in range(len(fam))]
    _write_dot(args.dot, g, "bipartite", labels)
    c = classify(g)
    res = {"graph": _graph_echo(g), "k": c.k, "l": c.l, "label": c.label}
    return _family_echo(fam), res, None


def _cmd_densify(args, stdin):
    fam = _family(args.family, stdin)
    out, report = densify(fam, args.budget, args.max_selection, args.sep_size)
    res = {"family": _family_echo(out), "report": report.as_dict()}
    return _family_echo(fam), res, None


def _cmd_extend(args, stdin):
    fam = _family(args.family, stdin)
    pair = FinitePair(_index_list(args.members), _index_list(args.elements))
    try:
        pair.check(fam)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = extend_to_full_matrix(fam, pair)
    c = classify(pair_subgraph(fam, out))
    res = {"pair": out.as_dict(), "k": c.k, "l": c.l, "label": c.label}
    inputs = {"family": _family_echo(fam), "pair": {"f": list(pair.f), "g": list(pair.g)}}
    return inputs, res, c.l == 0


def _cmd_repr(args, stdin):
    kind = args.kind
    if not args.tolerance >= 0:
        raise UsageError("tolerance must be non-negative")
    if kind == "bipartite":
        fam = _family(args.source, stdin)
        rep = rep_bipartite(fam, lazy=args.lazy, tolerance=args.tolerance, check=False)
        inputs = _family_echo(fam)
    else:
        g = _graph(args.source, stdin)
        if kind == "pairs":
            rep = rep_pairs(g, lazy=args.lazy, tolerance=args.tolerance, check=False)
        else:
            if args.lazy:
                raise UsageError("the canonical model is dense only")
            rep = rep_canonical(g, tolerance=args.tolerance, check=False)
        inputs = _graph_echo(g)
    if args.relations_only:
        r = verify_relations(rep)
        report = r.as_dict()
    else:
        report = full_report(rep)
    return inputs, report, report["pass"]


def _bench_graph(n: int, rng) -> Graph:
    return random_graph(n, rng, 0.5)


def _cmd_bench(args, stdin):
    rng = np.random.default_rng(args.seed)
    n = args.size
    res: dict = {"suite": args.suite, "size": n, "seed": args.seed}
    if args.suite == "gf2-rank":
        m = gf2.random_alternating(n, rng)
        t0 = time.perf_counter()
        r = gf2.rank(m)
        res.update(seconds=time.perf_counter() - t0, rank=r,
                   ops={"pivots": r, "words_per_row": m.words.shape[1], "rows": n})
    elif args.suite == "canonicalize":
        g = _bench_graph(n, rng)
        t0 = time.perf_counter()
        cf = canonicalize(g)
        res.update(seconds=time.perf_counter() - t0, k=cf.k, l=cf.l,
                   ops={"moves": len(cf.moves), "edges": g.n_edges()})
    else:
        g = _bench_graph(n, rng)
        lazy = (1 << (n * (n - 1) // 2)) > DIM_CAP
        t0 = time.perf_counter()
        rep = rep_pairs(g, lazy=lazy, check=False)
        rel = verify_relations(rep)
        res.update(seconds=time.perf_counter() - t0, dim=rep.dim, lazy=lazy, relations_pass=rel.passed,
                   ops={"generators": n, "pair_checks": n * (n - 1) // 2})
    return {"suite": args.suite, "size": n}, res, None


# -- parser ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps (default 0)")
    common.add_argument("--jobs", type=int, default=1, help="worker cap for parallel steps")

    p = _Parser(prog="ccrgraph", description="Graph C*-algebras B(G): classification and checks.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name: str, fn: Callable, help: str):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=fn)
        return sp

    sp = verb("classify", _cmd_classify, "isomorphism class of B(G)")
    sp.add_argument("graph")
    sp.add_argument("--dot", help="write the input graph as DOT")

    sp = verb("canonicalize", _cmd_canonicalize, "switch-move script to the canonical graph")
    sp.add_argument("graph")
    sp.add_argument("--dot", help="write the canonical graph as DOT")

    sp = verb("equiv", _cmd_equiv, "decide whether B(G) and B(H) are isomorphic")
    sp.add_argument("first")
    sp.add_argument("second")

    sp = verb("enumerate", _cmd_enumerate, "class counts over all labeled graphs on n vertices")
    sp.add_argument("--n", type=int, required=True)

    sp = verb("ginf", _cmd_ginf, "graph on nonempty vertex subsets")
    sp.add_argument("graph")
    sp.add_argument("--dot", help="write the subset graph as DOT")

    sp = verb("iso", _cmd_iso, "graph isomorphism (small graphs)")
    sp.add_argument("first")
    sp.add_argument("second")

    sp = verb("family-check", _cmd_family_check, "independence, separation, covering")
    sp.add_argument("family")
    sp.add_argument("--max-selection", type=int, default=4)
    sp.add_argument("--sep-size", type=int, default=None,
                    help="only check sets of at most this size (default: all, m <= 12)")
    sp.add_argument("--threshold", type=int, default=None, help="also check almost-disjointness")

    sp = verb("dual", _cmd_dual, "dual family over the member indices")
    sp.add_argument("family")

    sp = verb("fk", _cmd_fk, "independent family from binary-tree branches")
    sp.add_argument("--depth", type=int, required=True)

    sp = verb("bipartite", _cmd_bipartite, "bipartite incidence graph of a family")
    sp.add_argument("family")
    sp.add_argument("--dot", help="write the bipartite graph as DOT")

    sp = verb("densify", _cmd_densify, "greedy edits that improve separation")
    sp.add_argument("family")
    sp.add_argument("--budget", type=int, required=True)
    sp.add_argument("--max-selection", type=int, default=None)
    sp.add_argument("--sep-size", type=int, default=2)

    sp = verb("extend", _cmd_extend, "extend a pair to a full-matrix pattern")
    sp.add_argument("family")
    sp.add_argument("--members", default="", help="comma-separated member indices")
    sp.add_argument("--elements", default="", help="comma-separated universe elements")

    sp = verb("repr", _cmd_repr, "build a matrix model and verify it")
    sp.add_argument("source", help="graph (pairs, canonical) or family (bipartite)")
    sp.add_argument("--kind", choices=["pairs", "canonical", "bipartite"], default="canonical")
    sp.add_argument("--lazy", action="store_true", help="factorised operators (vector checks only)")
    sp.add_argument("--tolerance", type=float, default=1e-12)
    sp.add_argument("--relations-only", action="store_true")

    sp = verb("bench", _cmd_bench, "timing runs")
    sp.add_argument("--suite", choices=["gf2-rank", "canonicalize", "repr-verify"], required=True)
    sp.add_argument("--size", type=int, required=True)
    return p


def _serialize(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def run(argv: list[str] | None = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        inputs, results, passed = args.func(args, stdin)
    except UsageError as exc:
        print(f"ccrgraph: error: {exc}", file=stderr)
        return EXIT_USAGE
    except (GraphFormatError, FamilyFormatError) as exc:
        print(f"ccrgraph: parse error: {exc}", file=stderr)
        return EXIT_USAGE
    except (SizeLimitError, ResourceExhaustedError) as exc:
        print(f"ccrgraph: resource limit: {exc}", file=stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"ccrgraph: error: {exc}", file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except Exception as exc:  # internal check failures
        print(f"ccrgraph: failure: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_FAILED
    report = {
        "schema_version": SCHEMA_VERSION,
        "verb": args.verb,
        "inputs": inputs,
        "results": results,
    }
    if passed is not None:
        report["pass"] = bool(passed)
    stdout.write(_serialize(report))
    return EXIT_OK if passed in (None, True) else EXIT_FAILED


def main() -> None:
    sys.exit(run())
