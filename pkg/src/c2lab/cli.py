"""Command-line surface: compute, verify-completion, sweep-involutions,
check-identities.

Human-readable tables go to standard output; --json switches every
subcommand to a machine-readable report.  Exit codes: 0 everything checked
out, 1 a verdict failed or a sweep found violations, 2 bad input, 3 a
budget refusal prevented the computation.
"""

from __future__ import annotations

import argparse
import json
import pathlib
import sys
from importlib import resources

from .case_sweeps import r_case_suite, s_case_suite, t_orbit_suite
from .errors import (BudgetExceededError, C2LabError, GraphParseError,
                     InputError, InternalInconsistencyError)
from .field import DEFAULT_EVAL_BUDGET, check_prime
from .graph import (ALL_SHARED, Graph, R_CASE, S_CASE, T_CASE,
                    classify_adjacent_pair, parse_edge_list, parse_graph6)
from .identities import run_identity_suite
from .partitions import DEFAULT_ENUM_BUDGET
from .point_count import compute_routes

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

BUNDLED_CORPUS = "bundled"
ROUTES = ("direct", "denom", "partition")


def _bundled_corpus_text() -> str:
    return (resources.files("c2lab")
            .joinpath("data/connected_4regular_le8.g6").read_text())


def load_graph(path: str) -> Graph:
    """A single graph from a JSON edge list or a one-line graph6 file."""
    p = pathlib.Path(path)
    if not p.is_file():
        raise InputError(f"no such file: {path}")
    text = p.read_text()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_edge_list(text)
    for line in text.splitlines():
        if line.strip():
            return parse_graph6(line)
    raise GraphParseError(f"{path} contains no graph")


def load_corpus(path: str):
    """(name, graph) pairs plus warnings for the malformed entries.

    `path` may be the literal "bundled" for the packaged corpus, a file
    with one graph6 string per line, or a directory of JSON edge lists.
    """
    entries = []
    warnings = []
    if path == BUNDLED_CORPUS:
        lines = _bundled_corpus_text().splitlines()
        source = BUNDLED_CORPUS
        items = [(f"{source}:{i + 1}", line)
                 for i, line in enumerate(lines) if line.strip()]
        parse = parse_graph6
    else:
        p = pathlib.Path(path)
        if p.is_dir():
            items = [(f.name, f.read_text())
                     for f in sorted(p.glob("*.json"))]
            parse = parse_edge_list
        elif p.is_file():
            items = [(f"{p.name}:{i + 1}", line)
                     for i, line in enumerate(p.read_text().splitlines())
                     if line.strip()]
            parse = parse_graph6
        else:
            raise InputError(f"no such corpus: {path}")
    for name, payload in items:
        try:
            entries.append((name, parse(payload)))
        except C2LabError as exc:
            warnings.append(f"skipped {name}: {exc}")
    if not entries:
        raise InputError(f"corpus {path} contains no readable graph")
    return entries, warnings


def _parse_primes(text: str):
    try:
        primes = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise InputError(f"bad prime list {text!r}") from exc
    if not primes:
        raise InputError("empty prime list")
    for p in primes:
        check_prime(p)
    return primes


def _emit(report: dict, as_json: bool, lines):
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def cmd_compute(args) -> int:
    g = load_graph(args.graph)
    p = args.prime
    check_prime(p)
    routes = ROUTES if args.route == "all" else (args.route,)
    report = {"graph": args.graph, "prime": p, "routes": list(routes),
              "vertices": [], "agreement": True}
    lines = [f"graph {args.graph}  n={g.n}  m={g.num_edges}  p={p}"]
    if not g.is_regular(4):
        if routes != ("direct",):
            raise InputError(
                "graph is not 4-regular; only --route direct applies to a "
                "plain connected graph")
        from .point_count import c2_direct
        residue = c2_direct(g, p, budget=args.budget, backend=args.backend)
        report["direct_c2"] = residue
        lines.append(f"  c2 (direct, no decompletion) = {residue}")
        _emit(report, args.json, lines)
        return EXIT_OK
    lines.append(f"  {'vertex':>6}  " + "  ".join(f"{r:>9}" for r in routes))
    ok = True
    for v in range(g.n):
        rep = compute_routes(g, v, p, routes=routes,
                             eval_budget=args.budget,
                             backend=args.backend, graph_id=args.graph)
        report["vertices"].append(
            {"vertex": v, "residues": rep.residues, "counts": rep.counts})
        flag = "" if rep.agreement else "  ROUTE DISAGREEMENT (bug)"
        lines.append(f"  {v:>6}  " + "  ".join(
            f"{rep.residues[r]:>9}" for r in routes) + flag)
        ok = ok and rep.agreement
    report["agreement"] = ok
    if not ok:
        lines.append("route disagreement: this falsifies the "
                     "implementation, not the theorems")
    _emit(report, args.json, lines)
    return EXIT_OK if ok else EXIT_VIOLATION


def _pair_kinds(g: Graph):
    kinds = {}
    for v in range(g.n):
        for w in g.neighbors(v):
            if v < w:
                kinds[(v, w)] = classify_adjacent_pair(g, v, w).kind
    return kinds


def cmd_verify_completion(args) -> int:
    primes = _parse_primes(args.primes)
    entries, warnings = load_corpus(args.corpus)
    report = {"corpus": args.corpus, "primes": primes,
              "warnings": warnings, "graphs": []}
    lines = [f"corpus {args.corpus}: {len(entries)} graphs, "
             f"primes {primes}"]
    lines += [f"warning: {w}" for w in warnings]
    any_false = False
    budget_refused = False
    for name, g in entries:
        entry = {"graph": name, "n": g.n, "m": g.num_edges,
                 "verdicts": {}, "residues": {}, "errors": []}
        if not (g.is_connected() and g.is_regular(4)):
            entry["errors"].append("not connected 4-regular; skipped")
            warnings.append(f"{name}: not connected 4-regular")
            report["graphs"].append(entry)
            lines.append(f"{name}: not connected 4-regular, skipped")
            continue
        kinds = _pair_kinds(g)
        entry["pair_cases"] = {f"{v},{w}": k for (v, w), k in kinds.items()}
        for p in primes:
            try:
                residues = [
                    compute_routes(g, v, p, routes=("direct",),
                                   eval_budget=args.budget,
                                   graph_id=name).residues["direct"]
                    for v in range(g.n)]
            except BudgetExceededError as exc:
                entry["errors"].append(f"p={p}: {exc}")
                budget_refused = True
                lines.append(f"{name}  p={p}: budget refusal ({exc})")
                continue
            verdict = len(set(residues)) == 1
            if p == 2:
                tag = "theorem-backed"
            elif all(k in (T_CASE, ALL_SHARED) for k in kinds.values()):
                tag = "theorem-backed"
            else:
                tag = "empirical"
            entry["residues"][str(p)] = residues
            entry["verdicts"][str(p)] = {"all_equal": verdict, "tag": tag}
            any_false = any_false or not verdict
            lines.append(
                f"{name}  p={p}: residues {residues} -> "
                f"{'EQUAL' if verdict else 'UNEQUAL'} ({tag})")
        report["graphs"].append(entry)
    report["ok"] = not any_false
    _emit(report, args.json, lines)
    if any_false:
        return EXIT_VIOLATION
    if budget_refused:
        return EXIT_BUDGET
    return EXIT_OK


def _sweep_dict(s):
    return {"domain_size": s.domain_size, "fixed_points": s.fixed_points,
            "non_involutions": s.non_involutions,
            "membership_violations": s.membership_violations,
            "failures": [str(f) for f in s.failures], "ok": s.ok}


def cmd_sweep_involutions(args) -> int:
    p = args.prime
    check_prime(p)
    entries, warnings = load_corpus(args.corpus)
    report = {"corpus": args.corpus, "prime": p, "warnings": warnings,
              "graphs": []}
    lines = [f"corpus {args.corpus}: {len(entries)} graphs, prime {p}"]
    lines += [f"warning: {w}" for w in warnings]
    any_violation = False
    for name, g in entries:
        if not (g.is_connected() and g.is_regular(4) and g.is_simple()):
            lines.append(f"{name}: not simple connected 4-regular, skipped")
            continue
        entry = {"graph": name, "pairs": []}
        for (v, w), kind in sorted(_pair_kinds(g).items()):
            if kind == S_CASE and p == 2:
                suite = s_case_suite(g, v, w)
            elif kind == R_CASE and p == 2:
                suite = r_case_suite(g, v, w)
            elif kind == T_CASE and p > 2:
                suite = t_orbit_suite(g, v, w, p, budget=args.budget)
            else:
                continue
            pair_entry = {
                "pair": [v, w], "case": kind,
                "sweeps": {k: _sweep_dict(s)
                           for k, s in suite.sweeps.items()},
                "parities": {k: val for k, val in suite.parities.items()},
                "ok": suite.ok}
            if suite.orbit_sizes:
                pair_entry["orbit_sizes"] = {
                    str(k): v2 for k, v2 in sorted(suite.orbit_sizes.items())}
            entry["pairs"].append(pair_entry)
            any_violation = any_violation or not suite.ok
            for sname, s in suite.sweeps.items():
                lines.append(
                    f"{name}  pair ({v},{w}) {kind}  {sname}: "
                    f"domain {s.domain_size}, fp {s.fixed_points}, "
                    f"non-inv {s.non_involutions}, "
                    f"escape {s.membership_violations} -> "
                    f"{'ok' if s.ok else 'VIOLATION'}")
            for pname, val in suite.parities.items():
                lines.append(f"{name}  pair ({v},{w}) {kind}  parity "
                             f"{pname} = {val}")
        report["graphs"].append(entry)
    report["ok"] = not any_violation
    _emit(report, args.json, lines)
    return EXIT_VIOLATION if any_violation else EXIT_OK


def cmd_check_identities(args) -> int:
    rep = run_identity_suite(args.seed, num_cw=args.num_cw)
    report = {"seed": args.seed, "failures": rep.failures, "ok": rep.ok}
    lines = [f"identity suite, seed {args.seed}:"]
    for name, count in rep.failures.items():
        lines.append(f"  {name:<24} {'ok' if count == 0 else f'{count} FAILURES'}")
    _emit(report, args.json, lines)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="c2lab",
        description="c2-invariant computation and completion-symmetry "
                    "verification for 4-regular graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("compute", help="c2 of every decompletion of one "
                        "graph by the requested routes")
    pc.add_argument("--graph", required=True)
    pc.add_argument("--prime", type=int, required=True)
    pc.add_argument("--route", choices=ROUTES + ("all",), default="all")
    pc.add_argument("--budget", type=int, default=DEFAULT_EVAL_BUDGET)
    pc.add_argument("--backend", choices=("numba", "numpy"), default=None)
    pc.add_argument("--json", action="store_true")
    pc.set_defaults(func=cmd_compute)

    pv = sub.add_parser("verify-completion", help="check that all "
                        "decompletions of each corpus graph share one c2")
    pv.add_argument("--corpus", default=BUNDLED_CORPUS)
    pv.add_argument("--primes", default="2")
    pv.add_argument("--budget", type=int, default=DEFAULT_EVAL_BUDGET)
    pv.add_argument("--json", action="store_true")
    pv.set_defaults(func=cmd_verify_completion)

    ps = sub.add_parser("sweep-involutions", help="machine-check the case "
                        "theorems over every classified adjacent pair")
    ps.add_argument("--corpus", default=BUNDLED_CORPUS)
    ps.add_argument("--prime", type=int, default=2)
    ps.add_argument("--budget", type=int, default=DEFAULT_ENUM_BUDGET)
    ps.add_argument("--json", action="store_true")
    ps.set_defaults(func=cmd_sweep_involutions)

    pi = sub.add_parser("check-identities", help="random-point polynomial "
                        "identity suite with a fixed seed")
    pi.add_argument("--seed", type=int, default=0)
    pi.add_argument("--num-cw", type=int, default=100)
    pi.add_argument("--json", action="store_true")
    pi.set_defaults(func=cmd_check_identities)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"budget refusal: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InternalInconsistencyError as exc:
        print(f"internal inconsistency (bug): {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (InputError, GraphParseError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except C2LabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
