"""Shared test helpers: independent oracles and instrumentation shims."""

from __future__ import annotations

import random
from collections import deque


def random_tree_edges(rng: random.Random, n: int) -> list[tuple[int, int]]:
    """Uniform-attachment random tree on nodes 1..n."""
    return [(rng.randint(1, i - 1), i) for i in range(2, n + 1)]


def bfs_dists(n: int, edges, src: int) -> list[int]:
    """Plain BFS distances, independent of any package structure."""
    adj = [[] for _ in range(n + 1)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    d = [-1] * (n + 1)
    d[src] = 0
    queue = deque([src])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if d[y] < 0:
                d[y] = d[x] + 1
                queue.append(y)
    return d


def lca_walk(parent, depth, u: int, v: int) -> int:
    """Upward-walk lca oracle."""
    while depth[u] > depth[v]:
        u = parent[u]
    while depth[v] > depth[u]:
        v = parent[v]
    while u != v:
        u = parent[u]
        v = parent[v]
    return u


def path_nodes_walk(parent, depth, u: int, v: int) -> list[int]:
    """Explicit node list of the u-v path via parent walks (u first)."""
    left = []
    right = []
    uu, vv = u, v
    while depth[uu] > depth[vv]:
        left.append(uu)
        uu = parent[uu]
    while depth[vv] > depth[uu]:
        right.append(vv)
        vv = parent[vv]
    while uu != vv:
        left.append(uu)
        right.append(vv)
        uu = parent[uu]
        vv = parent[vv]
    return left + [uu] + right[::-1]


class CountingSeq:
    """Sequence wrapper counting element reads."""

    def __init__(self, data):
        self.data = data
        self.reads = 0

    def __getitem__(self, i):
        self.reads += 1
        return self.data[i]

    def __len__(self):
        return len(self.data)


def random_color_script(rng: random.Random, d: int, length: int) -> list[tuple]:
    """Mixed update/request/nearest/epoch script over positions 1..d."""
    ops: list[tuple] = []
    for _ in range(length):
        o = rng.random()
        if o < 0.35:
            l = rng.randint(1, d)
            r = rng.randint(l, d)
            ops.append(("update", l, r, rng.randint(1, 8)))
        elif o < 0.55:
            ops.append(("request", rng.randint(1, d)))
        elif o < 0.75:
            l = rng.randint(1, d)
            r = rng.randint(l, d)
            ops.append(("low", l, r))
        elif o < 0.95:
            l = rng.randint(1, d)
            r = rng.randint(l, d)
            ops.append(("high", l, r))
        else:
            ops.append(("epoch",))
    return ops


def replay_on_segtree(tree, ops) -> list:
    """Run a color script against a ColorSegTree, collecting lookups."""
    out = []
    for op in ops:
        tag = op[0]
        if tag == "update":
            tree.color_update(op[1], op[2], op[3])
        elif tag == "request":
            out.append(tree.color_request(op[1]))
        elif tag == "low":
            out.append(tree.nearest_colored_low(op[1], op[2]))
        elif tag == "high":
            out.append(tree.nearest_colored_high(op[1], op[2]))
        else:
            tree.new_epoch()
    return out
