"""Reference implementations used to verify the fast engine.

``naive_query`` replays the phase-by-phase server movement rule directly
on the tree adjacency, with none of the engine's machinery (no lca
index, no heavy paths, no segment trees), so agreement between the two
is meaningful.  ``offline_opt`` computes the exact optimal cost on tiny
instances, and ``array_color_oracle`` is the ground truth for the color
segment tree.

Everything here is a pure function over immutable inputs and can run on
any number of workers in parallel.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Callable, Optional, Sequence

from .tree_core import Tree, NodeOutOfRange
from .engine import QueryOutcome, ServerMove

__all__ = [
    "InstanceTooLarge",
    "PhaseSimState",
    "naive_query",
    "offline_opt",
    "offline_opt_exhaustive",
    "array_color_oracle",
]

# offline_opt instance caps: the state space must stay enumerable
_OPT_MAX_N = 10
_OPT_MAX_K = 3
_OPT_MAX_QUERIES = 8


class InstanceTooLarge(ValueError):
    """The instance exceeds the exact-solver size limits."""


@dataclass
class PhaseSimState:
    """Snapshot handed to trace callbacks after each simulation phase."""

    positions: tuple[int, ...]
    active_flags: tuple[bool, ...]
    phase: int


def _orient_towards(tree: Tree, q: int):
    """Parent pointers, entry and exit times of the tree re-rooted at q.

    ``par[v]`` is the next node on the v-to-q path; ``tin``/``tout`` give
    the usual half-open ancestry intervals of the q-rooted orientation.
    """
    n = tree.n
    adj = tree.adj
    par = [0] * (n + 1)
    tin = [0] * (n + 1)
    tout = [0] * (n + 1)
    timer = 1
    tin[q] = 0
    stack = [(q, iter(adj[q]))]
    while stack:
        v, it = stack[-1]
        c = next(it, None)
        if c is None:
            tout[v] = timer
            stack.pop()
        elif c != par[v]:
            par[c] = v
            tin[c] = timer
            timer += 1
            stack.append((c, iter(adj[c])))
    return par, tin, tout


def naive_query(
    tree: Tree,
    positions: Sequence[int],
    q: int,
    trace: Optional[Callable[[PhaseSimState], None]] = None,
) -> QueryOutcome:
    """Serve one query by simulating the movement rule phase by phase.

    A server is active when no other server sits on its path to ``q``
    (co-located servers defer to the smallest id).  Every phase all
    active servers advance one edge towards ``q``; the simulation stops
    after the phase in which a server reaches ``q``.
    """
    n = tree.n
    if not 1 <= q <= n:
        raise NodeOutOfRange(f"query node {q!r} not in [1, {n}]")
    k = len(positions)
    for v in positions:
        if not 1 <= v <= n:
            raise NodeOutOfRange(f"server position {v!r} not in [1, {n}]")

    par, tin, tout = _orient_towards(tree, q)
    pos = list(positions)
    steps = [0] * k
    phase = 0

    at_q = [i for i in range(k) if pos[i] == q]
    if at_q:
        serving = min(at_q)
    else:
        rng = range(k)
        while True:
            active = []
            for i in rng:
                vi = pos[i]
                ti = tin[vi]
                blocked = False
                for j in rng:
                    if j == i:
                        continue
                    vj = pos[j]
                    if vj == vi:
                        if j < i:
                            blocked = True
                            break
                    elif tin[vj] <= ti < tout[vj]:
                        blocked = True
                        break
                if not blocked:
                    active.append(i)
            for i in active:
                pos[i] = par[pos[i]]
                steps[i] += 1
            phase += 1
            if trace is not None:
                flags = tuple(i in active for i in rng)
                trace(PhaseSimState(tuple(pos), flags, phase))
            arrived = [i for i in active if pos[i] == q]
            if arrived:
                serving = min(arrived)
                break

    moves = tuple(
        ServerMove(i + 1, positions[i], pos[i], steps[i])
        for i in range(k)
        if steps[i] or i == serving
    )
    return QueryOutcome(q, serving + 1, moves, sum(steps))


def _all_pairs_dist(tree: Tree) -> list[list[int]]:
    n = tree.n
    adj = tree.adj
    table = [[0] * (n + 1)]
    for s in range(1, n + 1):
        row = [-1] * (n + 1)
        row[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if row[w] < 0:
                    row[w] = row[v] + 1
                    queue.append(w)
        table.append(row)
    return table


def offline_opt(tree: Tree, initial: Sequence[int], queries: Sequence[int]) -> int:
    """Exact minimal total movement for a tiny instance.

    Dynamic program over (query index, multiset of server positions)
    where each transition moves exactly one server onto the query.  That
    restriction is the standard laziness property of optimal schedules
    for metric k-server instances (imported here as a known fact, and
    cross-checked against :func:`offline_opt_exhaustive` in the tests).
    """
    n = tree.n
    k = len(initial)
    if n > _OPT_MAX_N or k > _OPT_MAX_K or len(queries) > _OPT_MAX_QUERIES:
        raise InstanceTooLarge(
            f"offline_opt accepts n <= {_OPT_MAX_N}, k <= {_OPT_MAX_K}, "
            f"<= {_OPT_MAX_QUERIES} queries"
        )
    dist = _all_pairs_dist(tree)
    states = {tuple(sorted(initial)): 0}
    for q in queries:
        nxt: dict[tuple[int, ...], int] = {}
        dq = dist[q]
        for state, cost in states.items():
            tried = set()
            for idx, p in enumerate(state):
                if p in tried:
                    continue
                tried.add(p)
                moved = list(state)
                moved[idx] = q
                moved.sort()
                key = tuple(moved)
                c2 = cost + dq[p]
                if c2 < nxt.get(key, c2 + 1):
                    nxt[key] = c2
        states = nxt
    return min(states.values())


def offline_opt_exhaustive(tree: Tree, initial: Sequence[int], queries: Sequence[int]) -> int:
    """Offline optimum allowing every server to move at every step.

    Brute-force dynamic program over full position vectors; exists to
    validate the one-move-per-query restriction of :func:`offline_opt`.
    """
    n = tree.n
    k = len(initial)
    if n**k > 8000 or len(queries) > _OPT_MAX_QUERIES:
        raise InstanceTooLarge("offline_opt_exhaustive needs n**k <= 8000")
    dist = _all_pairs_dist(tree)
    dp = {tuple(initial): 0}
    nodes = range(1, n + 1)
    for q in queries:
        targets = [cfg for cfg in product(nodes, repeat=k) if q in cfg]
        ndp = {}
        for cfg in targets:
            best = None
            for src, cost in dp.items():
                total = cost
                for a, b in zip(src, cfg):
                    total += dist[a][b]
                if best is None or total < best:
                    best = total
            ndp[cfg] = best
        dp = ndp
    return min(dp.values())


def array_color_oracle(d: int, ops: Sequence[tuple]) -> list:
    """Replay coloration operations against a plain array by linear scans.

    Operations: ``("update", l, r, c)``, ``("request", x)``,
    ``("low", l, r)``, ``("high", l, r)``, ``("epoch",)``.  Returns the
    answers of the lookup operations in order.
    """
    assert d <= 4096
    arr = [0] * (d + 1)
    out: list = []
    for op in ops:
        tag = op[0]
        if tag == "update":
            _, l, r, c = op
            for i in range(l, r + 1):
                arr[i] = c
        elif tag == "request":
            out.append(arr[op[1]])
        elif tag == "low":
            out.append(next((i for i in range(op[1], op[2] + 1) if arr[i]), None))
        elif tag == "high":
            out.append(next((i for i in range(op[2], op[1] - 1, -1) if arr[i]), None))
        elif tag == "epoch":
            arr = [0] * (d + 1)
        else:
            raise ValueError(f"unknown operation {tag!r}")
    return out
