"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 class or structure
violation, 3 cap exceeded, 4 crosscheck mismatch.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

from . import io
from .branching import anchor_setups, ramsey_bound, simplified_revenues, simplified_setup
from .decomposition import modular_decomposition
from .graph import Graph, components, from_mask, to_mask
from .hardness import reduce_3col_to_cobipartite, reduce_3col_to_split
from .model import Instance, ReflexivePatternError, is_valid, revenue
from .monitor import NoMonitorBase, find_monitor_base, monitor_witnesses
from .named import gen_p7_counterexample, make_named, parse_named
from .oracle import CapExceeded, oracle_solve
from .recognition import ClassViolation, recognize
from .sampling import SamplingError, random_instance, sample_in_class
from .solvers import (
    SolveReport,
    SolverConfig,
    solve_cograph,
    solve_recursive,
    solve_subexponential,
    solve_threshold_excluded,
)

EXIT_OK, EXIT_USAGE, EXIT_CLASS, EXIT_CAP, EXIT_MISMATCH = 0, 1, 2, 3, 4

Strategy = Callable[[Instance, SolverConfig, argparse.Namespace], SolveReport]


def _oracle(inst: Instance, cfg: SolverConfig, args: argparse.Namespace) -> SolveReport:
    val, phi = oracle_solve(inst, cap=args.oracle_cap)
    return SolveReport(val, phi, {})


def _bullfree(inst: Instance, cfg: SolverConfig, args: argparse.Namespace) -> SolveReport:
    from .modular import solve_bullfree

    return solve_bullfree(inst, cfg)


def _prime_reduction(inst: Instance, cfg: SolverConfig, args: argparse.Namespace) -> SolveReport:
    from .modular import solve_via_prime_reduction

    return solve_via_prime_reduction(inst, None, cfg)


STRATEGIES: dict[str, Strategy] = {
    "oracle": _oracle,
    "recursive": lambda inst, cfg, args: solve_recursive(inst, cfg),
    "subexp": lambda inst, cfg, args: solve_subexponential(inst, cfg, args.alpha),
    "threshold": lambda inst, cfg, args: solve_threshold_excluded(inst, cfg, args.k, args.base),
    "cograph": lambda inst, cfg, args: solve_cograph(inst),
    "bullfree": _bullfree,
    "prime-reduction": _prime_reduction,
}


def _threads(args: argparse.Namespace) -> int:
    env = os.environ.get("HCOLOR_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"HCOLOR_THREADS must be an integer, got {env!r}")
    return max(1, getattr(args, "threads", 1) or 1)


def _config(args: argparse.Namespace) -> SolverConfig:
    return SolverConfig(
        s=args.s,
        t=args.t,
        fallback=args.fallback,
        guess_cap=args.guess_cap,
        pattern_cap=args.pattern_cap,
        check_class=args.check_class,
        audit=args.audit,
        threads=_threads(args),
    )


def _read(path: str) -> object:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return io.loads(text)


_last_output: list[object] = []


def _emit(obj: object) -> None:
    _last_output.append(obj)
    sys.stdout.write(io.dumps(obj) + "\n")


def _report_json(rep: SolveReport) -> dict:
    return {
        "opt": rep.opt,
        "assignment": [[u, v] for u, v in sorted(rep.solution.items())],
        "stats": rep.stats,
    }


def _manifest(args: argparse.Namespace, result: object, started: float) -> None:
    # the digest covers the printed output only, so equal inputs give equal digests
    path = getattr(args, "manifest", None)
    if not path:
        return
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "manifest") and not k.startswith("_")}
    doc = {
        "command": args.command,
        "seed": getattr(args, "seed", None),
        "config": config,
        "wall_clock": round(time.time() - started, 6),
        "digest": hashlib.sha256(io.dumps(result).encode()).hexdigest(),
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(io.dumps(doc) + "\n")


# --- subcommands ---------------------------------------------------------------


def cmd_solve(args: argparse.Namespace) -> int:
    inst = io.instance_from_json(_read(args.instance))
    rep = STRATEGIES[args.strategy](inst, _config(args), args)
    out = _report_json(rep)
    _emit(out)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    inst = io.instance_from_json(_read(args.instance))
    val, phi = oracle_solve(inst, cap=args.oracle_cap)
    _emit({"opt": val, "assignment": [[u, v] for u, v in sorted(phi.items())]})
    return EXIT_OK


def cmd_crosscheck(args: argparse.Namespace) -> int:
    names = [s.strip() for s in args.strategies.split(",") if s.strip()]
    unknown = [s for s in names if s not in STRATEGIES]
    if len(names) < 2 or unknown:
        raise ValueError(f"need at least two known strategies, unknown: {unknown}")
    cfg = _config(args)
    master = random.Random(args.seed)
    jobs = [
        (master.randint(args.n_min, args.n_max), master.randint(args.k_min, args.k_max), master.getrandbits(64))
        for _ in range(args.samples)
    ]

    def run(job: tuple[int, int, int]) -> tuple[Instance, dict[str, float], list[str]]:
        n, k, seed = job
        inst = random_instance(args.cls, n, k, seed, args.density, args.connected, args.low, args.high)
        opts, bad = {}, []
        for name in names:
            rep = STRATEGIES[name](inst, cfg, args)
            opts[name] = rep.opt
            if not is_valid(inst, rep.solution) or revenue(inst, rep.solution) != rep.opt:
                bad.append(name)
        return inst, opts, bad

    threads = _threads(args)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(s) for s in jobs]
    for index, (inst, opts, bad) in enumerate(results):
        if len(set(opts.values())) > 1 or bad:
            _emit({
                "mismatch": index,
                "opts": opts,
                "invalid_solutions": bad,
                "instance": io.instance_to_json(inst),
            })
            return EXIT_MISMATCH
    summary = {"samples": len(results), "strategies": names, "class": args.cls, "agree": True}
    _emit(summary)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    if args.cls:
        if args.n is None:
            raise ValueError("--class needs --n")
        if args.pattern_size:
            inst = random_instance(
                args.cls, args.n, args.pattern_size, args.seed, args.density, args.connected, args.low, args.high
            )
            _emit(io.instance_to_json(inst))
            return EXIT_OK
        g = sample_in_class(args.cls, args.n, args.density, args.seed, args.connected)
    elif args.kind:
        kind = args.kind
        if kind == "p7-counterexample":
            g = gen_p7_counterexample(args.k)
        elif len(kind) == 2 and kind.endswith("k"):
            g = make_named(kind[0], args.k)
        elif args.k is not None:
            g = make_named(kind, args.k)
        else:
            g = parse_named(kind)
    else:
        raise ValueError("gen needs --kind or --class")
    _emit(io.graph_to_json(g))
    return EXIT_OK


def _graph_arg(path: str) -> Graph:
    obj = _read(path)
    if isinstance(obj, dict) and "graph" in obj and "n" not in obj:
        obj = obj["graph"]
    return io.graph_from_json(obj)


def cmd_recognize(args: argparse.Namespace) -> int:
    g = _graph_arg(args.graph)
    _emit({"class": args.cls, "member": recognize(g, args.cls)})
    return EXIT_OK


def cmd_monitor(args: argparse.Namespace) -> int:
    g = _graph_arg(args.graph)
    base = find_monitor_base(g, anchor=args.anchor, pad=args.pad)
    closed = g.closed_neighborhood(base.order)
    witnesses = monitor_witnesses(g, to_mask(closed))
    _emit({
        "path": list(base.path),
        "order": list(base.order),
        "closed_neighbourhood": sorted(closed),
        "components": [{"vertices": sorted(from_mask(c)), "complete_witness": w} for c, w in witnesses],
    })
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    g = _graph_arg(args.graph)
    if g.n == 0:
        raise ValueError("cannot decompose the empty graph")
    print(modular_decomposition(g).pretty())
    return EXIT_OK


def cmd_branch(args: argparse.Namespace) -> int:
    inst = io.instance_from_json(_read(args.instance))
    if len(components(inst.host)) != 1 or inst.n < 3:
        raise ClassViolation("branching needs a connected host with at least three vertices")
    setup = simplified_setup(inst)
    sizes = [bin(p).count("1") for p in setup.partition.parts]
    simplified = sum(1 for _ in simplified_revenues(inst, setup, args.s, args.t, not args.no_prune, args.guess_cap))
    anchors = list(anchor_setups(inst)) if inst.has_positive() else []
    _emit({
        "X": list(setup.partition.x),
        "part_sizes": sizes,
        "ramsey": ramsey_bound(args.s, args.t),
        "T": len(anchors),
        "simplified_branches": simplified,
        "pruned": not args.no_prune,
    })
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace) -> int:
    g = _graph_arg(args.graph)
    red = reduce_3col_to_split if args.target == "split" else reduce_3col_to_cobipartite
    _emit(io.list_instance_to_json(red(g)))
    return EXIT_OK


# --- parser --------------------------------------------------------------------


def _solver_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--k", type=int, default=2, help="threshold solver level")
    p.add_argument("--base", choices=("edgeless", "cograph"), default="edgeless")
    p.add_argument("--fallback", type=int, default=4)
    p.add_argument("--guess-cap", type=int, default=None)
    p.add_argument("--pattern-cap", type=int, default=64)
    p.add_argument("--oracle-cap", type=int, default=12)
    p.add_argument("--check-class", action="store_true")
    p.add_argument("--audit", action="store_true")
    p.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hcolor", description="Max Partial H-Coloring toolkit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--manifest", help="write a run manifest JSON here")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="solve an instance")
    p.add_argument("instance")
    p.add_argument("--strategy", choices=sorted(STRATEGIES), default="recursive")
    _solver_options(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", parents=[common], help="solve by brute force")
    p.add_argument("instance")
    p.add_argument("--oracle-cap", type=int, default=12)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("crosscheck", parents=[common], help="compare strategies on sampled instances")
    p.add_argument("--class", dest="cls", default="P5-free")
    p.add_argument("--strategies", default="recursive,oracle")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-min", type=int, default=5)
    p.add_argument("--n-max", type=int, default=9)
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--low", type=int, default=-2)
    p.add_argument("--high", type=int, default=3)
    p.add_argument("--connected", action="store_true")
    _solver_options(p)
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("gen", parents=[common], help="generate a named or random graph / instance")
    p.add_argument("--kind", help="P, C, K, E, S, L, Q (with --k), a short name such as 2K2, or p7-counterexample")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--class", dest="cls", help="sample a random graph of this class")
    p.add_argument("--n", type=int)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--pattern-size", type=int, default=0, help="emit a random instance with this many colours")
    p.add_argument("--low", type=int, default=-2)
    p.add_argument("--high", type=int, default=3)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("recognize", parents=[common], help="test class membership")
    p.add_argument("graph")
    p.add_argument("--class", dest="cls", required=True)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("monitor", parents=[common], help="find a monitor base")
    p.add_argument("graph")
    p.add_argument("--anchor", type=int, default=None)
    p.add_argument("--pad", action="store_true")
    p.set_defaults(func=cmd_monitor)

    p = sub.add_parser("decompose", parents=[common], help="print the modular decomposition")
    p.add_argument("graph")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("branch", parents=[common], help="summarise one branching step")
    p.add_argument("instance")
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--guess-cap", type=int, default=None)
    p.add_argument("--no-prune", action="store_true")
    p.set_defaults(func=cmd_branch)

    p = sub.add_parser("reduce", parents=[common], help="3-colouring to list H0-colouring")
    p.add_argument("graph")
    p.add_argument("--target", choices=("split", "cobipartite"), required=True)
    p.set_defaults(func=cmd_reduce)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    started = time.time()
    _last_output.clear()
    try:
        code = args.func(args)
        _manifest(args, _last_output, started)
        return code
    except (ClassViolation, NoMonitorBase, ReflexivePatternError) as exc:
        print(f"class violation: {exc}", file=sys.stderr)
        return EXIT_CLASS
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (OSError, ValueError, SamplingError, RecursionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
