"""Command-line harness: instance I/O, solve/verify/bench/opt/gen.

Instance text format (whitespace-separated ASCII decimal, 1-indexed,
LF line endings):

    line 1:        n k
    lines 2..n:    one edge "u v" per line (absent when n == 1)
    next line:     k initial server positions
    next line:     q, the number of queries
    next q lines:  one query node per line

Exit codes: 0 success, 1 verification divergence, 2 input error.  The
environment variable ``KSERVER_LOG`` (``off`` | ``trace``) switches
per-phase / per-rank trace output on stderr.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import time
from dataclasses import dataclass, field
from itertools import product
from typing import IO, Optional, Sequence

from . import oracle, report
from .engine import Engine, QueryOutcome
from .oracle import InstanceTooLarge, PhaseSimState
from .tree_core import Tree, TreeError, build_tree

__all__ = [
    "Instance",
    "RunReport",
    "ParseError",
    "BadParams",
    "parse_instance",
    "emit_instance",
    "generate_instance",
    "cmd_solve",
    "cmd_verify",
    "cmd_bench",
    "cmd_opt",
    "main",
]

SHAPES = ("random", "path", "star", "caterpillar")


class ParseError(ValueError):
    """Malformed instance text; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class BadParams(ValueError):
    """Invalid generator parameters."""


@dataclass
class Instance:
    """One problem instance: a tree, k starting positions, a query list."""

    n: int
    k: int
    edges: list[tuple[int, int]]
    initial_positions: list[int]
    queries: list[int]

    def build_tree(self) -> Tree:
        return build_tree(self.n, self.edges)


@dataclass
class RunReport:
    """Per-query outcomes of one solver run over an instance."""

    solver: str
    outcomes: list[QueryOutcome] = field(default_factory=list)
    counters: list[int] = field(default_factory=list)
    total_cost: int = 0
    wall_time: float = 0.0


# ----------------------------------------------------------------------
# instance I/O


def parse_instance(text: str) -> Instance:
    """Parse instance text, reporting the line number of any defect."""
    lines = text.splitlines()
    pos = 0

    def next_line(what: str) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"unexpected end of input, expected {what}", len(lines) + 1)
        pos += 1
        return pos, lines[pos - 1]

    def ints(what: str, count: int) -> list[int]:
        num, line = next_line(what)
        parts = line.split()
        if len(parts) != count:
            raise ParseError(f"expected {count} integers ({what}), got {len(parts)}", num)
        try:
            return [int(p) for p in parts]
        except ValueError:
            raise ParseError(f"non-integer token in {what}", num) from None

    n, k = ints("n and k", 2)
    if n < 1:
        raise ParseError(f"node count {n} must be >= 1", 1)
    if k < 1:
        raise ParseError(f"server count {k} must be >= 1", 1)
    edges = []
    for _ in range(n - 1):
        u, v = ints("an edge", 2)
        edges.append((u, v))
    positions = ints("initial positions", k)
    (q,) = ints("query count", 1)
    if q < 0:
        raise ParseError(f"query count {q} must be >= 0", pos)
    queries = []
    for _ in range(q):
        (node,) = ints("a query node", 1)
        queries.append(node)
    while pos < len(lines):
        num, line = next_line("end of input")
        if line.strip():
            raise ParseError("trailing content after the last query", num)
    return Instance(n, k, edges, positions, queries)


def emit_instance(instance: Instance) -> str:
    """Canonical text for an instance; parse followed by emit is identity."""
    out = [f"{instance.n} {instance.k}"]
    out.extend(f"{u} {v}" for u, v in instance.edges)
    out.append(" ".join(str(p) for p in instance.initial_positions))
    out.append(str(len(instance.queries)))
    out.extend(str(q) for q in instance.queries)
    return "\n".join(out) + "\n"


def generate_instance(n: int, k: int, q: int, seed: int, shape: str = "random") -> Instance:
    """Deterministically generate an instance of the requested shape."""
    if shape not in SHAPES:
        raise BadParams(f"shape {shape!r} not one of {SHAPES}")
    if n < 1 or k < 1 or q < 0:
        raise BadParams(f"need n >= 1, k >= 1, q >= 0 (got n={n}, k={k}, q={q})")
    rng = random.Random(seed)
    if shape == "path":
        edges = [(i, i + 1) for i in range(1, n)]
    elif shape == "star":
        edges = [(1, i) for i in range(2, n + 1)]
    elif shape == "random":
        edges = [(rng.randint(1, i - 1), i) for i in range(2, n + 1)]
    else:  # caterpillar: a spine with random legs
        spine = (n + 1) // 2
        edges = [(i, i + 1) for i in range(1, spine)]
        edges.extend((rng.randint(1, spine), i) for i in range(spine + 1, n + 1))
    positions = [rng.randint(1, n) for _ in range(k)]
    queries = [rng.randint(1, n) for _ in range(q)]
    return Instance(n, k, edges, positions, queries)


# ----------------------------------------------------------------------
# solvers


def _trace_enabled() -> bool:
    return os.environ.get("KSERVER_LOG", "off") == "trace"


def _naive_trace(state: PhaseSimState) -> None:
    print(f"phase {state.phase}: positions={state.positions}", file=sys.stderr)


def _fast_trace(line: str) -> None:
    print(line, file=sys.stderr)


def run_fast(instance: Instance, trace: bool = False) -> RunReport:
    """Run every query through the fast engine."""
    tree = instance.build_tree()
    rep = RunReport(solver="fast")
    start = time.perf_counter()
    eng = Engine(tree, instance.k, instance.initial_positions)
    for q in instance.queries:
        before = eng.ctx.visits
        outcome = eng.process_query(q, trace=_fast_trace if trace else None)
        rep.outcomes.append(outcome)
        rep.counters.append(eng.ctx.visits - before)
        rep.total_cost += outcome.cost
    rep.wall_time = time.perf_counter() - start
    return rep


def run_naive(instance: Instance, trace: bool = False) -> RunReport:
    """Run every query through the phase-simulation reference."""
    tree = instance.build_tree()
    rep = RunReport(solver="naive")
    positions = list(instance.initial_positions)
    start = time.perf_counter()
    for q in instance.queries:
        outcome = oracle.naive_query(
            tree, positions, q, trace=_naive_trace if trace else None
        )
        for mv in outcome.moves:
            positions[mv.server - 1] = mv.dst
        rep.outcomes.append(outcome)
        rep.counters.append(0)
        rep.total_cost += outcome.cost
    rep.wall_time = time.perf_counter() - start
    return rep


def cmd_solve(instance: Instance, solver: str = "fast", out: Optional[IO[str]] = None) -> RunReport:
    """Solve an instance and print one line per query plus the total."""
    if out is None:
        out = sys.stdout
    runner = run_fast if solver == "fast" else run_naive
    rep = runner(instance, trace=_trace_enabled())
    for outcome in rep.outcomes:
        print(f"q={outcome.query} serve={outcome.serving_server} cost={outcome.cost}", file=out)
    print(f"total={rep.total_cost}", file=out)
    return rep


def _final_positions(instance: Instance, rep: RunReport) -> list[list[int]]:
    """Positions after each query, reconstructed from the move lists."""
    positions = list(instance.initial_positions)
    history = []
    for outcome in rep.outcomes:
        for mv in outcome.moves:
            positions[mv.server - 1] = mv.dst
        history.append(positions[:])
    return history


def cmd_verify(instances: Sequence[Instance], out: Optional[IO[str]] = None) -> bool:
    """Run fast and naive solvers on each instance and compare exactly.

    Serving server, cost, move list and every server position must agree
    for every query; the first divergence is reported with a full dump
    of the instance.
    """
    if out is None:
        out = sys.stdout
    for num, instance in enumerate(instances):
        fast = run_fast(instance)
        naive = run_naive(instance)
        fast_pos = _final_positions(instance, fast)
        naive_pos = _final_positions(instance, naive)
        for qi, (fo, no) in enumerate(zip(fast.outcomes, naive.outcomes)):
            mismatch = None
            if fo.serving_server != no.serving_server:
                mismatch = f"serving server {fo.serving_server} != {no.serving_server}"
            elif fo.cost != no.cost:
                mismatch = f"cost {fo.cost} != {no.cost}"
            elif fast_pos[qi] != naive_pos[qi]:
                mismatch = f"positions {fast_pos[qi]} != {naive_pos[qi]}"
            elif fo.moves != no.moves:
                mismatch = f"moves {fo.moves} != {no.moves}"
            if mismatch:
                print(
                    f"DIVERGENCE instance {num} query #{qi + 1} (node {fo.query}): {mismatch}",
                    file=out,
                )
                print("instance dump:", file=out)
                out.write(emit_instance(instance))
                return False
    print(f"verified {len(instances)} instance(s): fast == naive", file=out)
    return True


def random_instances(
    max_n: int, max_k: int, q: int, count: int, seed: int
) -> list[Instance]:
    """Deterministic batch of mixed-shape random instances."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(1, max_n)
        k = rng.randint(1, max_k)
        shape = SHAPES[i % len(SHAPES)]
        out.append(generate_instance(n, k, q, seed=rng.randrange(2**32), shape=shape))
    return out


def cmd_bench(
    ns: Sequence[int],
    ks: Sequence[int],
    q: int,
    seed: int,
    shape: str = "random",
    csv_path: Optional[str] = None,
    plot_path: Optional[str] = None,
    out: Optional[IO[str]] = None,
) -> list[tuple]:
    """Benchmark query processing; emit CSV rows and optional figures.

    One row per (n, k) combination: total segment-tree node visits,
    visits per query, and query wall time.  When a CSV file is written,
    a companion scaling figure lands next to it unless ``plot_path``
    says otherwise.
    """
    if out is None:
        out = sys.stdout
    rows = []
    for n, k in product(ns, ks):
        instance = generate_instance(n, k, q, seed=seed, shape=shape)
        tree = instance.build_tree()
        eng = Engine(tree, instance.k, instance.initial_positions)
        start = time.perf_counter()
        for node in instance.queries:
            eng.process_query(node)
        wall = time.perf_counter() - start
        visits = eng.ctx.visits
        vpq = visits / max(1, len(instance.queries))
        rows.append((n, k, q, visits, round(vpq, 2), round(wall, 6)))

    if csv_path:
        with open(csv_path, "w", newline="") as fh:
            report.write_bench_csv(rows, fh)
        if plot_path is None:
            plot_path = os.path.splitext(csv_path)[0] + ".png"
    else:
        report.write_bench_csv(rows, out)
    if plot_path:
        report.render_bench_figure(rows, plot_path)
    return rows


def cmd_opt(instance: Instance, out: Optional[IO[str]] = None) -> int:
    """Exact offline optimum of a tiny instance."""
    if out is None:
        out = sys.stdout
    cost = oracle.offline_opt(instance.build_tree(), instance.initial_positions, instance.queries)
    print(f"opt={cost}", file=out)
    return cost


# ----------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kserver-tree",
        description="Online k-server solver for trees with a verification harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="serve all queries of an instance file")
    p_solve.add_argument("file")
    p_solve.add_argument("--naive", action="store_true", help="use the phase simulation")

    p_verify = sub.add_parser("verify", help="compare fast and naive solvers")
    group = p_verify.add_mutually_exclusive_group(required=True)
    group.add_argument("--file", help="verify one instance file")
    group.add_argument(
        "--random",
        nargs=4,
        type=int,
        metavar=("N", "K", "Q", "COUNT"),
        help="verify COUNT random instances with n <= N, k <= K, Q queries",
    )
    p_verify.add_argument("--seed", type=int, default=0)

    p_bench = sub.add_parser("bench", help="measure visit counters and timing")
    p_bench.add_argument("--n", type=int, nargs="+", required=True)
    p_bench.add_argument("--k", type=int, nargs="+", required=True)
    p_bench.add_argument("--q", type=int, required=True)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--shape", choices=SHAPES, default="random")
    p_bench.add_argument("--csv", help="write CSV here instead of stdout")
    p_bench.add_argument("--plot", help="render the scaling figure to this file")

    p_opt = sub.add_parser("opt", help="offline optimum of a tiny instance file")
    p_opt.add_argument("file")

    p_gen = sub.add_parser("gen", help="emit a random instance")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--k", type=int, required=True)
    p_gen.add_argument("--q", type=int, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--shape", choices=SHAPES, default="random")
    p_gen.add_argument("--out", help="write the instance here instead of stdout")
    return parser


def _read_instance(path: str) -> Instance:
    with open(path, "r") as fh:
        return parse_instance(fh.read())


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            cmd_solve(_read_instance(args.file), "naive" if args.naive else "fast")
        elif args.command == "verify":
            if args.file:
                instances = [_read_instance(args.file)]
            else:
                max_n, max_k, q, count = args.random
                instances = random_instances(max_n, max_k, q, count, args.seed)
            if not cmd_verify(instances):
                return 1
        elif args.command == "bench":
            cmd_bench(
                args.n, args.k, args.q, args.seed, args.shape,
                csv_path=args.csv, plot_path=args.plot,
            )
        elif args.command == "opt":
            cmd_opt(_read_instance(args.file))
        elif args.command == "gen":
            instance = generate_instance(args.n, args.k, args.q, args.seed, args.shape)
            text = emit_instance(instance)
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
    except (TreeError, ParseError, BadParams, InstanceTooLarge, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
