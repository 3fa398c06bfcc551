"""Fast online k-server engine for trees.

Preprocessing builds the heavy-path decomposition, the O(1) lca index
and one color segment tree per heavy path, in near-linear total time.
Each query then costs O(k log^2 n): servers are ranked by distance to
the query node (ties to the smaller server id), the nearest server walks
to the query coloring its trail with rank 1, and every later rank stops
after z steps, where z is how far the blocking server travelled to the
point where the two trails meet.  Trails are tracked as color ranges on
the per-path segment trees; a fresh epoch before each query blanks all
colors in O(1).

An Engine instance is single-threaded: queries mutate server positions
and segment trees.  Distinct instances are independent; an instance may
be handed between threads but never shared mutably.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

from .tree_core import Tree, NodeOutOfRange, compute_distances
from .lca import LcaIndex
from .hld import build_hld, HldDecomposition
from .color_segtree import ColorSegTree, SegContext

__all__ = [
    "ServerMove",
    "QueryOutcome",
    "Engine",
    "NoColoredNode",
    "StepsExceedPath",
    "preprocess",
]


class NoColoredNode(RuntimeError):
    """No colored node exists on the requested path."""


class StepsExceedPath(ValueError):
    """A movement budget exceeds the length of the path."""


class ServerMove(NamedTuple):
    """Displacement of one server: ``steps == dist(src, dst)``."""

    server: int
    src: int
    dst: int
    steps: int


@dataclass
class QueryOutcome:
    """Result of serving one query.

    ``moves`` lists every server that moved plus the serving server
    (even when it moved zero steps), ordered by server id; ``cost`` is
    the total number of steps across all servers.
    """

    query: int
    serving_server: int
    moves: tuple[ServerMove, ...]
    cost: int


class Engine:
    """Stateful solver holding k server positions on a fixed tree."""

    __slots__ = (
        "tree",
        "lca_index",
        "hld",
        "segtrees",
        "positions",
        "k",
        "query_count",
        "ctx",
        "_depth",
        "_parent",
        "_path_of",
        "_index_of",
        "_heads",
        "_path_nodes",
    )

    def __init__(self, tree: Tree, k: int, initial_positions: Sequence[int]):
        if not isinstance(k, int) or k < 1:
            raise ValueError(f"server count {k!r} must be a positive integer")
        positions = list(initial_positions)
        if len(positions) != k:
            raise ValueError(f"expected {k} initial positions, got {len(positions)}")
        n = tree.n
        for v in positions:
            if not 1 <= v <= n:
                raise NodeOutOfRange(f"initial position {v!r} not in [1, {n}]")

        self.tree = tree
        compute_distances(tree)
        self.hld = build_hld(tree)
        self.lca_index = LcaIndex(tree)
        self.ctx = SegContext()
        self.segtrees = [
            ColorSegTree(len(p), max_color=k, ctx=self.ctx) for p in self.hld.paths
        ]
        self.positions = positions
        self.k = k
        self.query_count = 0

        self._depth = tree.dist_from_root
        self._parent = tree.parent
        self._path_of = self.hld.path_of
        self._index_of = self.hld.index_of
        self._heads = self.hld.heads
        self._path_nodes = [p.nodes for p in self.hld.paths]

    # ------------------------------------------------------------------
    # queries

    def dist(self, u: int, v: int) -> int:
        d = self._depth
        return d[u] + d[v] - 2 * d[self.lca_index.lca(u, v)]

    def node_color(self, v: int) -> int:
        """Current-epoch color of a tree node (0 when uncolored)."""
        return self.segtrees[self._path_of[v]].color_request(self._index_of[v])

    def process_query(self, q: int, trace: Optional[Callable[[str], None]] = None) -> QueryOutcome:
        """Serve a query at node ``q`` and update all server positions."""
        if not 1 <= q <= self.tree.n:
            raise NodeOutOfRange(f"query node {q!r} not in [1, {self.tree.n}]")
        k = self.k
        positions = self.positions
        pre = positions[:]
        dists, lcas = self.lca_index.batch_dist_lca(pre, q)
        order = sorted(range(k), key=dists.__getitem__)  # stable: ties to smaller id

        self.ctx.epoch += 1
        depth = self._depth

        r1 = order[0]
        v1 = pre[r1]
        d1 = dists[r1]
        self._color_path(v1, q, 1, lcas[r1])
        positions[r1] = q
        moves = [(r1 + 1, v1, q, d1)]
        cost = d1
        if trace is not None:
            trace(f"rank=1 server={r1 + 1} serves: {v1} -> {q} ({d1} steps)")

        path_of = self._path_of
        index_of = self._index_of
        segs = self.segtrees
        for rank in range(2, k + 1):
            i = order[rank - 1]
            vi = pre[i]
            li = lcas[i]
            w, j, dwq = self._closest(vi, q, li)
            z = dists[order[j - 1]] - dwq
            if z:
                di = dists[i]
                dviw = di - dwq
                lvw = w if depth[vi] - depth[w] == dviw else li
                v2 = self._move(vi, w, z, lvw)
                l2 = v2 if z <= depth[vi] - depth[lvw] else lvw
                self._color_path(vi, v2, rank, l2)
                positions[i] = v2
                moves.append((i + 1, vi, v2, z))
                cost += z
            else:
                v2 = vi
                iv = index_of[vi]
                segs[path_of[vi]].color_update(iv, iv, rank)
            if trace is not None:
                trace(
                    f"rank={rank} server={i + 1} blocked at {w} (color {j}): "
                    f"{vi} -> {v2} ({z} steps)"
                )

        self.query_count += 1
        moves.sort()
        return QueryOutcome(q, r1 + 1, tuple(ServerMove(*m) for m in moves), cost)

    # ------------------------------------------------------------------
    # path primitives

    def color_path(self, v: int, u: int, c: int) -> None:
        """Color every node on the v-u path (inclusive) with ``c``."""
        self._color_path(v, u, c, self.lca_index.lca(v, u))

    def _color_path(self, v: int, u: int, c: int, l: int) -> None:
        path_of = self._path_of
        index_of = self._index_of
        heads = self._heads
        parent = self._parent
        segs = self.segtrees
        pl = path_of[l]
        il = index_of[l]

        w = v
        p = path_of[v]
        while p != pl:
            segs[p].color_update(1, index_of[w], c)
            w = parent[heads[p]]
            p = path_of[w]
        segs[pl].color_update(il, index_of[w], c)

        w = u
        p = path_of[u]
        while p != pl:
            segs[p].color_update(1, index_of[w], c)
            w = parent[heads[p]]
            p = path_of[w]
        segs[pl].color_update(il, index_of[w], c)

    def get_closest_color(self, v: int, u: int) -> tuple[int, int]:
        """Colored node on the v-u path nearest to ``v``, with its color."""
        res = self._closest(v, u, self.lca_index.lca(v, u))
        if res is None:
            raise NoColoredNode(f"no colored node on the path {v}..{u}")
        return res[0], res[1]

    def _closest(self, v: int, u: int, l: int):
        """(node, color, dist(node, u)) for the colored node nearest to v.

        Scans heavy-path segments from v up to the meeting node, then from
        the meeting node down to u, so the first hit is the nearest one.
        Within ascending segments the position deepest in the tree is the
        closest to v; within descending segments it is the shallowest.
        """
        path_of = self._path_of
        index_of = self._index_of
        heads = self._heads
        parent = self._parent
        segs = self.segtrees
        nodes_of = self._path_nodes
        depth = self._depth
        dl = depth[l]
        du = depth[u]
        pl = path_of[l]

        w = v
        p = path_of[v]
        while p != pl:
            st = segs[p]
            g = st.nearest_colored_high(1, index_of[w])
            if g is not None:
                node = nodes_of[p][g - 1]
                return node, st.color_request(g), depth[node] + du - dl - dl
            w = parent[heads[p]]
            p = path_of[w]
        st = segs[pl]
        il = index_of[l]
        g = st.nearest_colored_high(il, index_of[w])
        if g is not None:
            node = nodes_of[pl][g - 1]
            return node, st.color_request(g), depth[node] + du - dl - dl

        stack = []
        w = u
        p = path_of[u]
        while p != pl:
            stack.append((p, index_of[w]))
            w = parent[heads[p]]
            p = path_of[w]
        g = st.nearest_colored_low(il, index_of[w])
        if g is not None:
            node = nodes_of[pl][g - 1]
            return node, st.color_request(g), du - depth[node]
        for p, hi in reversed(stack):
            st = segs[p]
            g = st.nearest_colored_low(1, hi)
            if g is not None:
                node = nodes_of[p][g - 1]
                return node, st.color_request(g), du - depth[node]
        return None

    def move_along(self, v: int, u: int, g: int) -> int:
        """Node exactly ``g`` edges from ``v`` along the v-u path."""
        l = self.lca_index.lca(v, u)
        d = self._depth
        total = d[v] + d[u] - 2 * d[l]
        if not 0 <= g <= total:
            raise StepsExceedPath(f"{g} steps exceed the {total}-edge path {v}..{u}")
        return self._move(v, u, g, l)

    def _move(self, v: int, u: int, g: int, l: int) -> int:
        if g == 0:
            return v
        path_of = self._path_of
        index_of = self._index_of
        heads = self._heads
        parent = self._parent
        nodes_of = self._path_nodes
        pl = path_of[l]
        il = index_of[l]

        w = v
        p = path_of[v]
        iw = index_of[v]
        while p != pl:
            climb = iw - 1
            if g <= climb:
                return nodes_of[p][iw - g - 1]
            g -= climb + 1
            w = parent[heads[p]]
            if g == 0:
                return w
            p = path_of[w]
            iw = index_of[w]
        climb = iw - il
        if g <= climb:
            return nodes_of[p][iw - g - 1]
        g -= climb

        stack = []
        w = u
        p = path_of[u]
        while p != pl:
            stack.append((p, index_of[w]))
            w = parent[heads[p]]
            p = path_of[w]
        span = index_of[w] - il
        if g <= span:
            return nodes_of[pl][il + g - 1]
        g -= span
        for p, hi in reversed(stack):
            if g <= hi:
                return nodes_of[p][g - 1]
            g -= hi
        raise StepsExceedPath(f"{g} steps left over walking {v}..{u}")


def preprocess(tree: Tree, k: int, initial_positions: Sequence[int]) -> Engine:
    """Build a ready-to-query :class:`Engine` (near-linear in n)."""
    return Engine(tree, k, initial_positions)
