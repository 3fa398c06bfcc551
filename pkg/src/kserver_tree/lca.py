"""Constant-time lowest-common-ancestor queries after one-shot preprocessing.

The index stores an Euler tour of the tree (length 2n - 1) plus a sparse
table of range-minimum positions over the tour depths, encoded so that a
single query costs at most six element reads.  Preprocessing is
O(n log n); queries are O(1).  The structure is immutable after
construction and safe for concurrent readers.

Small tours keep the table as plain Python lists (fastest scalar
lookups); large tours switch to numpy rows, which also enables the
vectorised batch helper used when many distances to one target are
needed at once.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .tree_core import Tree

__all__ = ["LcaIndex", "lca_preprocess", "lca"]

# Tours at least this long store the sparse table in numpy.
_NUMPY_MIN_TOUR = 4096


class LcaIndex:
    """Euler tour + sparse table answering lca queries in O(1)."""

    __slots__ = (
        "euler_tour",
        "depths",
        "first_occurrence",
        "log_table",
        "sparse_table",
        "_m",
        "_table2d",
        "_log_np",
        "_first_np",
        "_euler_np",
        "_root_dist_np",
    )

    def __init__(self, tree: Tree):
        n = tree.n
        dr = tree.dist_from_root
        children = tree.children

        m = 2 * n - 1
        tour = [0] * m
        first = [-1] * (n + 1)
        tour[0] = 1
        first[1] = 0
        cursor = [0] * (n + 1)
        stack = [1]
        pos = 1
        while stack:
            v = stack[-1]
            kids = children[v]
            i = cursor[v]
            if i < len(kids):
                cursor[v] = i + 1
                c = kids[i]
                first[c] = pos
                tour[pos] = c
                pos += 1
                stack.append(c)
            else:
                stack.pop()
                if stack:
                    tour[pos] = stack[-1]
                    pos += 1
        assert pos == m
        self.euler_tour = tour
        self.first_occurrence = first
        self._m = m

        if m >= _NUMPY_MIN_TOUR:
            euler_np = np.asarray(tour, dtype=np.int64)
            root_dist_np = np.asarray(dr, dtype=np.int64)
            depths_np = root_dist_np[euler_np]
            self.depths = depths_np.tolist()
            # floor(log2(i)) via the exact float exponent
            log_np = np.zeros(m + 1, dtype=np.int64)
            log_np[1:] = np.frexp(np.arange(1, m + 1, dtype=np.float64))[1] - 1
            self.log_table = log_np.tolist()
            levels = int(log_np[m]) + 1
            table = np.empty((levels, m), dtype=np.int64)
            table[0] = depths_np * m + np.arange(m, dtype=np.int64)
            for j in range(1, levels):
                half = 1 << (j - 1)
                width = m - (1 << j) + 1
                np.minimum(
                    table[j - 1, :width],
                    table[j - 1, half:half + width],
                    out=table[j, :width],
                )
            self._table2d = table
            self.sparse_table = [table[j] for j in range(levels)]
            self._log_np = log_np
            self._first_np = np.asarray(first, dtype=np.int64)
            self._euler_np = euler_np
            self._root_dist_np = root_dist_np
        else:
            depths = [dr[v] for v in tour]
            self.depths = depths
            log = [0] * (m + 1)
            for i in range(2, m + 1):
                log[i] = log[i >> 1] + 1
            self.log_table = log
            base = [depths[i] * m + i for i in range(m)]
            rows = [base]
            for j in range(1, log[m] + 1):
                half = 1 << (j - 1)
                prev = rows[-1]
                width = m - (1 << j) + 1
                rows.append([min(prev[i], prev[i + half]) for i in range(width)])
            self._table2d = None
            self.sparse_table = rows
            self._log_np = None
            self._first_np = None
            self._euler_np = None
            self._root_dist_np = None

    def lca(self, u: int, v: int) -> int:
        """Deepest common ancestor of ``u`` and ``v`` (<= 6 table reads)."""
        first = self.first_occurrence
        lo = first[u]
        hi = first[v]
        if lo > hi:
            lo, hi = hi, lo
        j = self.log_table[hi - lo + 1]
        row = self.sparse_table[j]
        a = row[lo]
        b = row[hi - (1 << j) + 1]
        if b < a:
            a = b
        return self.euler_tour[int(a) % self._m]

    def node_depth(self, v: int) -> int:
        return self.depths[self.first_occurrence[v]]

    def batch_dist_lca(self, nodes: Sequence[int], q: int):
        """Distances and lca nodes from every entry of ``nodes`` to ``q``.

        Returns two plain lists; vectorised when the table lives in numpy
        and the batch is large enough to amortise the array setup.
        """
        if self._table2d is None or len(nodes) < 32:
            depths = self.depths
            first = self.first_occurrence
            dq = depths[first[q]]
            out_d = []
            out_l = []
            for v in nodes:
                l = self.lca(v, q)
                out_l.append(l)
                out_d.append(depths[first[v]] + dq - 2 * depths[first[l]])
            return out_d, out_l

        m = self._m
        idx = np.fromiter(nodes, dtype=np.int64, count=len(nodes))
        fu = self._first_np[idx]
        fq = self.first_occurrence[q]
        lo = np.minimum(fu, fq)
        hi = np.maximum(fu, fq)
        j = self._log_np[hi - lo + 1]
        table = self._table2d
        a = table[j, lo]
        b = table[j, hi - (np.int64(1) << j) + 1]
        best = np.minimum(a, b)
        lnodes = self._euler_np[best % m]
        dr = self._root_dist_np
        dists = dr[idx] + int(dr[q]) - 2 * dr[lnodes]
        return dists.tolist(), lnodes.tolist()


def lca_preprocess(tree: Tree) -> LcaIndex:
    """Build the O(1)-query lca index for ``tree``."""
    return LcaIndex(tree)


def lca(index: LcaIndex, u: int, v: int) -> int:
    """Functional form of :meth:`LcaIndex.lca`."""
    return index.lca(u, v)
