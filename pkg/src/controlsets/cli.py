"""Command-line front end.

Subcommands: generate, verify, oracle, search, analytic, reduce-sat,
verify-reduction, experiment.  Exit codes: 0 success, 1 validation error,
2 internal assertion failure.
"""

from __future__ import annotations

import argparse
import sys

from ._ratio import format_rational, parse_rational
from .chain import ChainConfig, run_search
from .complete_graph import ThresholdDistribution, analytic_min_size
from .errors import InputError, InternalCheckError
from .experiments import ExperimentSpec, emit_outputs, run_experiment
from .gamefile import format_game, parse_game
from .graph import (
    complete,
    erdos_renyi,
    format_graph,
    grid,
    path,
    ring,
    tree,
)
from .coordination import from_thresholds
from .sat_reduction import build_gadget, format_labels, parse_cnf, verify_reduction
from .scs import cascade, is_sufficient, optimal_oracle


def _read(path_arg: str) -> str:
    if path_arg == "-":
        return sys.stdin.read()
    try:
        with open(path_arg) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path_arg!r}: {exc}") from None


def _write_out(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {out!r}: {exc}") from None


def _parse_set(spec: str) -> frozenset[int]:
    spec = spec.strip()
    if not spec or spec == "none":
        return frozenset()
    try:
        return frozenset(int(tok) for tok in spec.replace(",", " ").split())
    except ValueError:
        raise InputError(f"bad player set {spec!r}; expected comma-separated indices") from None


def _fmt_set(players) -> str:
    return ",".join(str(p) for p in sorted(players))


def cmd_generate(args) -> int:
    if args.family == "complete":
        g = complete(args.n)
    elif args.family == "ring":
        g = ring(args.n)
    elif args.family == "path":
        g = path(args.n)
    elif args.family == "grid":
        if args.d is None:
            raise InputError("grid needs --d (dimension)")
        g = grid(args.n, args.d)
    elif args.family == "tree":
        if not args.parents:
            raise InputError("tree needs --parents, e.g. --parents -1,0,0,1")
        parents = [int(t) for t in args.parents.replace(",", " ").split()]
        g = tree(parents)
    elif args.family == "er":
        if args.p is None:
            raise InputError("er needs --p (edge probability)")
        g = erdos_renyi(args.n, args.p, args.seed)
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown family {args.family!r}")
    if args.as_game:
        theta = parse_rational(args.theta)
        game = from_thresholds(g, [theta] * g.n)
        _write_out(format_game(game), args.out)
    else:
        _write_out(format_graph(g), args.out)
    return 0


def cmd_verify(args) -> int:
    game = parse_game(_read(args.game))
    seed = _parse_set(args.set)
    result = cascade(game, seed)
    if args.format == "csv":
        witness = " ".join(str(i) for i in result.witness)
        print("sufficient,witness")
        print(f"{'yes' if result.sufficient else 'no'},{witness}")
    else:
        print(f"sufficient: {'yes' if result.sufficient else 'no'}")
        print(f"witness: {' '.join(str(i) for i in result.witness) or '-'}")
        print(f"final-size: {len(result.final_set)}/{game.n}")
    return 0


def cmd_oracle(args) -> int:
    game = parse_game(_read(args.game))
    result = optimal_oracle(game, budget=args.budget)
    if not result.found:
        print(f"minimum: none within budget {result.budget}")
        return 0
    if args.format == "csv":
        print("min_size,sets")
        sets = ";".join(_fmt_set(s) for s in result.optimal_sets)
        print(f"{result.min_size},{sets}")
    else:
        print(f"minimum: {result.min_size}")
        print(f"optimal-sets: {len(result.optimal_sets)}")
        for s in result.optimal_sets:
            print(f"  {_fmt_set(s) or '(empty)'}")
    return 0


def cmd_search(args) -> int:
    game = parse_game(_read(args.game))
    epsilon = parse_rational(args.epsilon)
    steps = args.steps if args.steps > 0 else None
    best = None
    for restart in range(args.restarts):
        cfg = ChainConfig(epsilon=epsilon, steps=steps, seed=f"{args.seed}/r{restart}")
        run = run_search(game, cfg)
        if best is None or run.best_size < best.best_size:
            best = run
    players = best.best_profile.players
    sufficient = is_sufficient(game, players)
    if args.emit_trace:
        lines = ["step,cardinality"]
        lines += [f"{t},{c}" for t, c in best.cardinality_trace]
        _write_out("\n".join(lines) + "\n", args.emit_trace)
    if args.format == "csv":
        print("best_size,best_step,sufficient,set")
        print(f"{best.best_size},{best.best_step},{'yes' if sufficient else 'no'},{_fmt_set(players)}")
    else:
        print(f"best-size: {best.best_size}")
        print(f"best-set: {_fmt_set(players) or '(empty)'}")
        print(f"best-step: {best.best_step}")
        print(f"sufficient: {'yes' if sufficient else 'no'}")
    return 0


def cmd_analytic(args) -> int:
    text = _read(args.thresholds)
    values = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(parse_rational(line))
        except InputError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    dist = ThresholdDistribution(tuple(values))
    m, chosen = analytic_min_size(dist)
    if args.format == "csv":
        print("min_size,set")
        print(f"{m},{_fmt_set(chosen)}")
    else:
        print(f"minimum: {m}")
        print(f"set: {_fmt_set(chosen) or '(empty)'}")
        print(f"thresholds-sorted: {' '.join(format_rational(t) for t in dist.thetas)}")
    return 0


def cmd_reduce_sat(args) -> int:
    cnf = parse_cnf(_read(args.cnf))
    gadget = build_gadget(cnf)
    _write_out(format_graph(gadget.graph), args.out_graph)
    _write_out(format_labels(gadget), args.out_labels)
    if args.out_graph:
        print(f"gadget: {gadget.graph.n} nodes, target control-set size {cnf.target_size}")
    return 0


def cmd_verify_reduction(args) -> int:
    cnf = parse_cnf(_read(args.cnf))
    report = verify_reduction(cnf)
    print(f"variables: {cnf.num_vars}")
    print(f"clauses: {cnf.num_clauses}")
    print(f"target-size: {report.target_size}")
    print(f"gadget-nodes: {report.node_count} (expected ok: {report.sizes_ok})")
    print(f"gadget-edges: {report.edge_count}")
    print(f"degree-profile-ok: {report.degrees_ok}")
    print(f"satisfiable: {'yes' if report.satisfiable else 'no'}")
    print(f"control-set-within-target: {'yes' if report.control_within_target else 'no'}")
    if report.roundtrip_ok is not None:
        print(f"roundtrip-ok: {report.roundtrip_ok}")
    print(f"agreement: {'yes' if report.agree else 'NO'}")
    if not (report.agree and report.sizes_ok and report.degrees_ok):
        raise InternalCheckError("reduction validation failed; see report above")
    return 0


def cmd_experiment(args) -> int:
    n_values = tuple(int(t) for t in args.n.replace(",", " ").split())
    spec = ExperimentSpec(
        family=args.family,
        n_values=n_values,
        trials=args.trials,
        epsilon=parse_rational(args.epsilon),
        steps=args.steps if args.steps > 0 else None,
        restarts=args.restarts,
        oracle_cutoff=args.oracle_cutoff,
        master_seed=args.seed,
    )
    rows = run_experiment(spec)
    out_dir = args.out_dir or "."
    csv_path, plot_path = emit_outputs(rows, out_dir)
    done = [r for r in rows if not r.skipped]
    skipped = len(rows) - len(done)
    print(f"rows: {len(rows)} ({skipped} skipped)")
    for r in rows:
        if r.skipped:
            print(f"  n={r.n} trial={r.trial}: skipped (no valid graph draw)")
        else:
            oracle = "-" if r.oracle_size is None else str(r.oracle_size)
            print(
                f"  n={r.n} trial={r.trial}: chain={r.chain_size} oracle={oracle} "
                f"coverage={float(r.coverage):.3f} ({r.runtime_ms} ms)"
            )
    print(f"wrote {csv_path}")
    print(f"wrote {plot_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="controlsets",
        description="Minimum sufficient control sets in binary supermodular games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a graph (or homogeneous game) file")
    p.add_argument("family", choices=["complete", "ring", "path", "grid", "tree", "er"])
    p.add_argument("n", type=int, nargs="?", default=0, help="node count (grid: side length)")
    p.add_argument("--d", type=int, default=None, help="grid dimension")
    p.add_argument("--p", type=float, default=None, help="edge probability for er")
    p.add_argument("--parents", default="", help="tree parent list, root as -1")
    p.add_argument("--seed", default="0")
    p.add_argument("--as-game", action="store_true", help="wrap in a homogeneous game file")
    p.add_argument("--theta", default="1/2", help="threshold used with --as-game")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("verify", help="cascade a seed set on a game file")
    p.add_argument("game")
    p.add_argument("--set", required=True, help="comma-separated player indices ('' for empty)")
    p.add_argument("--format", choices=["plain", "csv"], default="plain")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive minimum control set")
    p.add_argument("game")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--format", choices=["plain", "csv"], default="plain")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("search", help="randomized reversible-walk search")
    p.add_argument("game")
    p.add_argument("--epsilon", default="3/10")
    p.add_argument("--steps", type=int, default=0, help="0 means 100*n^2")
    p.add_argument("--seed", default="0")
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--emit-trace", default=None, help="write step,cardinality CSV here")
    p.add_argument("--format", choices=["plain", "csv"], default="plain")
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("analytic", help="closed-form optimum on the complete graph")
    p.add_argument("thresholds", help="file with one rational threshold per line")
    p.add_argument("--format", choices=["plain", "csv"], default="plain")
    p.set_defaults(fn=cmd_analytic)

    p = sub.add_parser("reduce-sat", help="build the gadget graph for a DIMACS 3-CNF")
    p.add_argument("cnf")
    p.add_argument("--out-graph", default=None)
    p.add_argument("--out-labels", default=None)
    p.set_defaults(fn=cmd_reduce_sat)

    p = sub.add_parser("verify-reduction", help="validate the reduction on one instance")
    p.add_argument("cnf")
    p.set_defaults(fn=cmd_verify_reduction)

    p = sub.add_parser("experiment", help="random-graph sweep with CSV output")
    p.add_argument("--family", choices=["dense", "sparse"], default="dense")
    p.add_argument("--n", required=True, help="comma-separated n values")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--epsilon", default="3/10")
    p.add_argument("--steps", type=int, default=0, help="0 means 100*n^2")
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--oracle-cutoff", type=int, default=16)
    p.add_argument("--seed", default="0")
    p.add_argument("--out-dir", default=None)
    p.set_defaults(fn=cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalCheckError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
