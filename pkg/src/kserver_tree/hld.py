"""Heavy-path decomposition of a rooted tree.

Every node belongs to exactly one downward path; the head of a path is
its shallowest node.  Walking from any node to the root crosses at most
floor(log2 n) + 1 distinct paths, which is what gives the engine its
per-query polylog bound.  In-path positions are 1-based with the head at
position 1, increasing towards the leaves.

Construction is two iterative O(n) passes (subtree sizes, then path
assembly).  Ties between equally heavy children go to the smallest node
id so decompositions are reproducible.  Immutable after build.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .tree_core import Tree

__all__ = ["HeavyPath", "HldDecomposition", "build_hld", "path_head"]


@dataclass(slots=True)
class HeavyPath:
    """One downward path: ``nodes[0]`` is the head, consecutive entries
    are parent/child pairs."""

    id: int
    nodes: list[int] = field(repr=False)
    head: int = 0

    def __len__(self) -> int:
        return len(self.nodes)


class HldDecomposition:
    """Path partition plus per-node coordinates.

    ``path_of[v]`` is the id of the path containing ``v``;
    ``index_of[v]`` is v's 1-based position inside it.
    """

    __slots__ = ("paths", "path_of", "index_of", "heads")

    def __init__(self, n: int):
        self.paths: list[HeavyPath] = []
        self.path_of = [0] * (n + 1)
        self.index_of = [0] * (n + 1)
        self.heads: list[int] = []

    def node_at(self, path_id: int, index: int) -> int:
        """Inverse coordinate lookup: node at 1-based ``index`` of a path."""
        return self.paths[path_id].nodes[index - 1]

    def head_of(self, v: int) -> int:
        return self.heads[self.path_of[v]]


def build_hld(tree: Tree) -> HldDecomposition:
    """Decompose ``tree`` into heavy paths in O(n)."""
    n = tree.n
    parent = tree.parent
    order = tree.bfs_order

    # one reversed sweep accumulates subtree sizes and picks each node's
    # heavy child (maximal subtree, ties to the smallest id)
    size = [1] * (n + 1)
    heavy = [0] * (n + 1)
    best = [0] * (n + 1)
    for v in reversed(order):
        p = parent[v]
        if p:
            sv = size[v]
            size[p] += sv
            bp = best[p]
            if sv > bp or (sv == bp and v < heavy[p]):
                best[p] = sv
                heavy[p] = v

    hld = HldDecomposition(n)
    paths = hld.paths
    path_of = hld.path_of
    index_of = hld.index_of
    heads = hld.heads
    for v in order:
        if v != 1 and heavy[parent[v]] == v:
            continue  # interior of some heavy path
        pid = len(paths)
        nodes = []
        u = v
        while u:
            nodes.append(u)
            path_of[u] = pid
            index_of[u] = len(nodes)
            u = heavy[u]
        paths.append(HeavyPath(pid, nodes, v))
        heads.append(v)
    return hld


def path_head(hld: HldDecomposition, v: int) -> int:
    """Shallowest node of the path containing ``v``."""
    return hld.heads[hld.path_of[v]]
