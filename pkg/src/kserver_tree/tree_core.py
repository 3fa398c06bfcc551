"""Rooted-tree representation, validation, and root-distance computation.

Nodes are 1-indexed and node 1 is always the root.  A :class:`Tree` is
immutable once :func:`build_tree` returns, so any number of threads may
read it concurrently.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence, Tuple

__all__ = [
    "Tree",
    "TreeError",
    "NodeOutOfRange",
    "SelfLoop",
    "DuplicateEdge",
    "EdgeCountMismatch",
    "NotConnected",
    "build_tree",
    "compute_distances",
    "dist",
]


class TreeError(ValueError):
    """Base class for tree validation failures."""


class NodeOutOfRange(TreeError):
    """A node id falls outside [1, n]."""


class SelfLoop(TreeError):
    """An edge connects a node to itself."""


class DuplicateEdge(TreeError):
    """The same undirected edge appears twice."""


class EdgeCountMismatch(TreeError):
    """The edge list does not contain exactly n - 1 edges."""


class NotConnected(TreeError):
    """The edge set does not connect all nodes to the root."""


class Tree:
    """Rooted tree over nodes 1..n, oriented away from node 1.

    ``parent[v]`` is 0 for the root; ``children[v]`` lists are sorted
    ascending so that every traversal in the package is deterministic.
    ``dist_from_root[v]`` counts edges on the root-to-v path.
    """

    __slots__ = ("n", "edges", "parent", "children", "adj", "dist_from_root", "bfs_order")

    def __init__(self, n: int, edges: Sequence[Tuple[int, int]]):
        self.n = n
        self.edges = list(edges)
        self.parent = [0] * (n + 1)
        self.children: list[list[int]] = [[] for _ in range(n + 1)]
        self.adj: list[list[int]] = [[] for _ in range(n + 1)]
        self.dist_from_root = [0] * (n + 1)
        self.bfs_order: list[int] = []

    def __repr__(self) -> str:  # pragma: no cover
        return f"Tree(n={self.n})"


def _check_node(v: int, n: int) -> None:
    if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= n:
        raise NodeOutOfRange(f"node id {v!r} not in [1, {n}]")


def build_tree(n: int, edges: Iterable[Tuple[int, int]]) -> Tree:
    """Validate ``edges`` over ``n`` nodes and return the rooted tree.

    Raises :class:`EdgeCountMismatch`, :class:`SelfLoop`,
    :class:`DuplicateEdge`, :class:`NodeOutOfRange` or
    :class:`NotConnected` when the input is not a tree on [1, n].
    """
    if not isinstance(n, int) or n < 1:
        raise NodeOutOfRange(f"node count {n!r} must be a positive integer")
    edge_list = [(u, v) for u, v in edges]
    if len(edge_list) != n - 1:
        raise EdgeCountMismatch(f"expected {n - 1} edges, got {len(edge_list)}")

    tree = Tree(n, edge_list)
    seen: set[int] = set()
    adj = tree.adj
    for u, v in edge_list:
        _check_node(u, n)
        _check_node(v, n)
        if u == v:
            raise SelfLoop(f"edge ({u}, {v}) is a self loop")
        key = u * (n + 1) + v if u < v else v * (n + 1) + u
        if key in seen:
            raise DuplicateEdge(f"edge ({u}, {v}) appears more than once")
        seen.add(key)
        adj[u].append(v)
        adj[v].append(u)

    parent = tree.parent
    children = tree.children
    order = tree.bfs_order
    visited = bytearray(n + 1)
    visited[1] = 1
    queue = deque([1])
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in adj[v]:
            if not visited[w]:
                visited[w] = 1
                parent[w] = v
                children[v].append(w)
                queue.append(w)
    if len(order) != n:
        raise NotConnected(f"only {len(order)} of {n} nodes reachable from the root")

    for child_list in children:
        child_list.sort()
    return compute_distances(tree)


def compute_distances(tree: Tree) -> Tree:
    """Fill ``dist_from_root`` level by level (no call-stack recursion)."""
    d = tree.dist_from_root
    parent = tree.parent
    d[1] = 0
    for v in tree.bfs_order:
        if v != 1:
            d[v] = d[parent[v]] + 1
    return tree


def dist(tree: Tree, lca_index, u: int, v: int) -> int:
    """Path length between ``u`` and ``v`` in O(1) after preprocessing."""
    d = tree.dist_from_root
    return d[u] + d[v] - 2 * d[lca_index.lca(u, v)]
