import random

import pytest

from kserver_tree import (
    DuplicateEdge,
    EdgeCountMismatch,
    NodeOutOfRange,
    NotConnected,
    SelfLoop,
    build_tree,
    compute_distances,
    dist,
    lca_preprocess,
)

from conftest import bfs_dists, path_nodes_walk, random_tree_edges


def test_single_node():
    t = build_tree(1, [])
    assert t.n == 1
    assert t.parent[1] == 0
    assert t.dist_from_root[1] == 0


def test_chain_orientation():
    t = build_tree(3, [(1, 2), (2, 3)])
    assert t.parent[2] == 1
    assert t.parent[3] == 2
    assert t.children[1] == [2]


def test_children_sorted_and_depths():
    t = build_tree(5, [(1, 2), (1, 3), (3, 4), (3, 5)])
    assert t.children[3] == [4, 5]
    assert t.dist_from_root[4] == 2
    # matches an independent BFS from the root
    assert t.dist_from_root[1:] == bfs_dists(5, t.edges, 1)[1:]


def test_edge_order_does_not_matter():
    t = build_tree(4, [(3, 4), (1, 2), (2, 3)])
    assert t.parent[4] == 3
    assert t.dist_from_root[4] == 3


@pytest.mark.parametrize(
    "n,edges,exc",
    [
        (3, [(1, 2)], EdgeCountMismatch),
        (3, [(1, 2), (1, 2), (2, 3)], EdgeCountMismatch),
        (4, [(1, 2), (3, 4), (3, 4)], DuplicateEdge),
        (2, [(1, 1)], SelfLoop),
        (3, [(1, 2), (2, 5)], NodeOutOfRange),
        (3, [(1, 2), (0, 3)], NodeOutOfRange),
        (4, [(1, 2), (1, 2), (3, 4)], DuplicateEdge),
        (0, [], NodeOutOfRange),
    ],
)
def test_validation_errors(n, edges, exc):
    with pytest.raises(exc):
        build_tree(n, edges)


def test_not_connected():
    # 4 nodes, 3 edges, but one edge repeats a pair through a path: build a
    # genuine disconnect: edges forming a triangle 2-3-4 leaves node 1 isolated
    with pytest.raises(NotConnected):
        build_tree(4, [(2, 3), (3, 4), (4, 2)])


def test_compute_distances_random_tree_matches_bfs():
    rng = random.Random(42)
    edges = random_tree_edges(rng, 50)
    t = build_tree(50, edges)
    assert compute_distances(t).dist_from_root[1:] == bfs_dists(50, edges, 1)[1:]


def test_deep_path_survives():
    n = 100_000
    t = build_tree(n, [(i, i + 1) for i in range(1, n)])
    assert t.dist_from_root[n] == n - 1


def test_dist_examples():
    t = build_tree(5, [(1, 2), (2, 3), (3, 4), (4, 5)])
    idx = lca_preprocess(t)
    assert dist(t, idx, 3, 3) == 0
    assert dist(t, idx, 2, 5) == 3


def test_dist_against_bfs_oracle():
    rng = random.Random(7)
    edges = random_tree_edges(rng, 100)
    t = build_tree(100, edges)
    idx = lca_preprocess(t)
    for _ in range(300):
        u = rng.randint(1, 100)
        v = rng.randint(1, 100)
        assert dist(t, idx, u, v) == bfs_dists(100, edges, u)[v]


def test_dist_properties():
    rng = random.Random(3)
    edges = random_tree_edges(rng, 60)
    t = build_tree(60, edges)
    idx = lca_preprocess(t)
    for _ in range(200):
        u = rng.randint(1, 60)
        v = rng.randint(1, 60)
        d_uv = dist(t, idx, u, v)
        assert d_uv == dist(t, idx, v, u)
        assert (d_uv == 0) == (u == v)
        # triangle equality along every node of the path
        for w in path_nodes_walk(t.parent, t.dist_from_root, u, v):
            assert dist(t, idx, u, w) + dist(t, idx, w, v) == d_uv


def test_parent_depth_invariant():
    rng = random.Random(11)
    t = build_tree(80, random_tree_edges(rng, 80))
    for v in range(2, 81):
        assert t.dist_from_root[v] == t.dist_from_root[t.parent[v]] + 1
