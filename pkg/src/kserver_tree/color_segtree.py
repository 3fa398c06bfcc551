"""Segment tree with range color assignment and nearest-colored queries.

One instance covers one heavy path.  The tree is a full binary tree of
height h with 2**(h-1) < d <= 2**h; positions are 1-based and only the
first ``d`` of the 2**h leaf slots are ever addressed.  Each node keeps
a color label ``C`` (0 = no single color known here), the minimal and
maximal colored positions ``Min``/``Max`` of its segment, and an epoch
stamp.  A node whose stamp is behind the instance epoch reads as
completely uncolored, so :meth:`ColorSegTree.new_epoch` erases every
color in O(1).

Maintained per current epoch:

* a node is stamped iff its segment contains at least one colored
  position, and then ``Min``/``Max`` are exactly the extremal ones;
* a stamped node with ``C >= 1`` is entirely colored ``C`` (descendants
  below such a node may hold stale labels, which is why every query
  descent stops at the first such node).

Updates follow a three-part scheme: descend to the node where the range
splits, then run a suffix coloring into the left child and a prefix
coloring into the right child, handing the color inherited from fully
colored ancestors to the siblings that fall outside the range.  All
descents are iterative; every operation touches at most 4*(h+1) nodes.

Concurrency: one writer or any number of readers, never both.
"""

from __future__ import annotations

__all__ = ["SegContext", "ColorSegTree", "IndexOutOfRange", "ColorOutOfRange"]


class IndexOutOfRange(IndexError):
    """Position outside [1, d]."""


class ColorOutOfRange(ValueError):
    """Color outside [1, Z]; color 0 can only be produced by new_epoch."""


class SegContext:
    """Epoch stamp and visit counter, shareable between instances.

    The engine hands one context to every per-path tree so that a single
    increment starts a fresh epoch everywhere and node visits accumulate
    into one total.
    """

    __slots__ = ("epoch", "visits")

    def __init__(self) -> None:
        self.epoch = 1
        self.visits = 0


class ColorSegTree:
    """Range color assignment / point lookup / nearest colored position."""

    __slots__ = ("d", "h", "leaf_base", "max_color", "ctx", "_C", "_MN", "_MX", "_EP")

    def __init__(self, d: int, max_color: int | None = None, ctx: SegContext | None = None):
        if not isinstance(d, int) or d < 1:
            raise IndexOutOfRange(f"length {d!r} must be a positive integer")
        self.d = d
        self.h = (d - 1).bit_length()
        self.leaf_base = 1 << self.h
        self.max_color = max_color
        self.ctx = ctx if ctx is not None else SegContext()
        size = self.leaf_base << 1
        self._C = [0] * size
        self._MN = [0] * size
        self._MX = [0] * size
        self._EP = [0] * size

    @property
    def node_count(self) -> int:
        """Allocated tree nodes: 2**(h+1) - 1, always below 4*d."""
        return (self.leaf_base << 1) - 1

    def __len__(self) -> int:
        return self.d

    def new_epoch(self) -> None:
        """Erase all colors in O(1) by advancing the epoch stamp."""
        self.ctx.epoch += 1

    def colored_span(self):
        """(min, max) colored positions this epoch, or None if blank."""
        if self._EP[1] != self.ctx.epoch:
            return None
        return self._MN[1], self._MX[1]

    def _check_range(self, l: int, r: int) -> None:
        if not 1 <= l <= r <= self.d:
            raise IndexOutOfRange(f"range [{l}, {r}] not within [1, {self.d}]")

    # ------------------------------------------------------------------
    # point lookup

    def color_request(self, x: int) -> int:
        """Color of position ``x`` (0 while unassigned); <= h+1 visits."""
        if not 1 <= x <= self.d:
            raise IndexOutOfRange(f"position {x} not within [1, {self.d}]")
        cur = self.ctx.epoch
        EP = self._EP
        C = self._C
        v = 1
        a = 1
        b = self.leaf_base
        cnt = 0
        while a != b:
            cnt += 1
            if EP[v] != cur:
                self.ctx.visits += cnt
                return 0
            c = C[v]
            if c:
                self.ctx.visits += cnt
                return c
            mid = (a + b) >> 1
            if x <= mid:
                v += v
                b = mid
            else:
                v += v + 1
                a = mid + 1
        self.ctx.visits += cnt + 1
        return C[v] if EP[v] == cur else 0

    # ------------------------------------------------------------------
    # range assignment

    def color_update(self, l: int, r: int, c: int) -> None:
        """Assign color ``c`` to every position in [l, r]."""
        self._check_range(l, r)
        if c < 1 or (self.max_color is not None and c > self.max_color):
            hi = self.max_color if self.max_color is not None else "inf"
            raise ColorOutOfRange(f"color {c} not within [1, {hi}]")
        cur = self.ctx.epoch
        EP = self._EP
        C = self._C
        MN = self._MN
        MX = self._MX
        v = 1
        a = 1
        b = self.leaf_base
        cp = 0
        cnt = 0
        while a != b:
            cnt += 1
            if l == a and r == b:
                EP[v] = cur
                C[v] = c
                MN[v] = a
                MX[v] = b
                self.ctx.visits += cnt
                return
            if cp:
                # under a fully colored ancestor: the whole segment is
                # colored cp before this update touches part of it
                EP[v] = cur
                C[v] = 0
                MN[v] = a
                MX[v] = b
            elif EP[v] != cur:
                EP[v] = cur
                C[v] = 0
                MN[v] = l
                MX[v] = r
            else:
                cv = C[v]
                if cv:
                    cp = cv
                    C[v] = 0
                    MN[v] = a
                    MX[v] = b
                else:
                    if l < MN[v]:
                        MN[v] = l
                    if r > MX[v]:
                        MX[v] = r
            mid = (a + b) >> 1
            if r <= mid:
                if cp:
                    w = v + v + 1
                    EP[w] = cur
                    C[w] = cp
                    MN[w] = mid + 1
                    MX[w] = b
                    cnt += 1
                v += v
                b = mid
            elif l > mid:
                if cp:
                    u = v + v
                    EP[u] = cur
                    C[u] = cp
                    MN[u] = a
                    MX[u] = mid
                    cnt += 1
                v += v + 1
                a = mid + 1
            else:
                cnt += self._update_suffix(v + v, a, mid, l, c, cp, cur)
                cnt += self._update_prefix(v + v + 1, mid + 1, b, r, c, cp, cur)
                self.ctx.visits += cnt
                return
        EP[v] = cur
        C[v] = c
        MN[v] = a
        MX[v] = a
        self.ctx.visits += cnt + 1

    def _update_suffix(self, v: int, a: int, b: int, l: int, c: int, cp: int, cur: int) -> int:
        """Color the suffix [l, b] of the subtree rooted at ``v``."""
        EP = self._EP
        C = self._C
        MN = self._MN
        MX = self._MX
        cnt = 0
        while a != b:
            cnt += 1
            if l == a:
                EP[v] = cur
                C[v] = c
                MN[v] = a
                MX[v] = b
                return cnt
            if cp:
                EP[v] = cur
                C[v] = 0
                MN[v] = a
                MX[v] = b
            elif EP[v] != cur:
                EP[v] = cur
                C[v] = 0
                MN[v] = l
                MX[v] = b
            else:
                cv = C[v]
                if cv:
                    cp = cv
                    C[v] = 0
                    MN[v] = a
                else:
                    if l < MN[v]:
                        MN[v] = l
                MX[v] = b
            mid = (a + b) >> 1
            if l > mid:
                if cp:
                    u = v + v
                    EP[u] = cur
                    C[u] = cp
                    MN[u] = a
                    MX[u] = mid
                    cnt += 1
                v += v + 1
                a = mid + 1
            else:
                w = v + v + 1
                EP[w] = cur
                C[w] = c
                MN[w] = mid + 1
                MX[w] = b
                cnt += 1
                v += v
                b = mid
        EP[v] = cur
        C[v] = c
        MN[v] = a
        MX[v] = a
        return cnt + 1

    def _update_prefix(self, v: int, a: int, b: int, r: int, c: int, cp: int, cur: int) -> int:
        """Color the prefix [a, r] of the subtree rooted at ``v``."""
        EP = self._EP
        C = self._C
        MN = self._MN
        MX = self._MX
        cnt = 0
        while a != b:
            cnt += 1
            if r == b:
                EP[v] = cur
                C[v] = c
                MN[v] = a
                MX[v] = b
                return cnt
            if cp:
                EP[v] = cur
                C[v] = 0
                MN[v] = a
                MX[v] = b
            elif EP[v] != cur:
                EP[v] = cur
                C[v] = 0
                MN[v] = a
                MX[v] = r
            else:
                cv = C[v]
                if cv:
                    cp = cv
                    C[v] = 0
                    MX[v] = b
                else:
                    if r > MX[v]:
                        MX[v] = r
                MN[v] = a
            mid = (a + b) >> 1
            if r <= mid:
                if cp:
                    w = v + v + 1
                    EP[w] = cur
                    C[w] = cp
                    MN[w] = mid + 1
                    MX[w] = b
                    cnt += 1
                v += v
                b = mid
            else:
                u = v + v
                EP[u] = cur
                C[u] = c
                MN[u] = a
                MX[u] = mid
                cnt += 1
                v += v + 1
                a = mid + 1
        EP[v] = cur
        C[v] = c
        MN[v] = a
        MX[v] = a
        return cnt + 1

    # ------------------------------------------------------------------
    # nearest colored position

    def nearest_colored_low(self, l: int, r: int):
        """Minimal colored position in [l, r], or None."""
        self._check_range(l, r)
        cur = self.ctx.epoch
        EP = self._EP
        C = self._C
        MN = self._MN
        MX = self._MX
        v = 1
        a = 1
        b = self.leaf_base
        cnt = 0
        while a != b:
            cnt += 1
            if EP[v] != cur:
                self.ctx.visits += cnt
                return None
            if C[v]:
                self.ctx.visits += cnt
                return l
            if MN[v] > r or MX[v] < l:
                self.ctx.visits += cnt
                return None
            mid = (a + b) >> 1
            if r <= mid:
                v += v
                b = mid
            elif l > mid:
                v += v + 1
                a = mid + 1
            else:
                res, extra = self._low_suffix(v + v, a, mid, l, cur)
                cnt += extra
                if res is None:
                    res, extra = self._low_prefix(v + v + 1, mid + 1, b, r, cur)
                    cnt += extra
                self.ctx.visits += cnt
                return res
        self.ctx.visits += cnt + 1
        return a if EP[v] == cur and C[v] else None

    def _low_suffix(self, v: int, a: int, b: int, l: int, cur: int):
        """Minimal colored position in the suffix [l, b] of subtree ``v``.

        Descends towards ``l`` keeping the best fully-in-range right
        sibling as a fallback, so one pass suffices even when the left
        branch turns out to hold colors only below ``l``.
        """
        EP = self._EP
        C = self._C
        MN = self._MN
        MX = self._MX
        fb = None
        cnt = 0
        while a != b:
            cnt += 1
            if EP[v] != cur:
                return fb, cnt
            if C[v]:
                return l, cnt
            if MX[v] < l:
                return fb, cnt
            mid = (a + b) >> 1
            if l > mid:
                v += v + 1
                a = mid + 1
            else:
                w = v + v + 1
                cnt += 1
                if EP[w] == cur:
                    fb = MN[w]
                v += v
                b = mid
        cnt += 1
        if EP[v] == cur and C[v]:
            return l, cnt
        return fb, cnt

    def _low_prefix(self, v: int, a: int, b: int, r: int, cur: int):
        """Minimal colored position in the prefix [a, r] of subtree ``v``."""
        EP = self._EP
        C = self._C
        MN = self._MN
        cnt = 0
        while a != b:
            cnt += 1
            if EP[v] != cur:
                return None, cnt
            if C[v]:
                return a, cnt
            if MN[v] > r:
                return None, cnt
            mid = (a + b) >> 1
            if r <= mid:
                v += v
                b = mid
            else:
                u = v + v
                cnt += 1
                if EP[u] == cur:
                    return MN[u], cnt
                v += v + 1
                a = mid + 1
        cnt += 1
        if EP[v] == cur and C[v]:
            return a, cnt
        return None, cnt

    def nearest_colored_high(self, l: int, r: int):
        """Maximal colored position in [l, r], or None."""
        self._check_range(l, r)
        cur = self.ctx.epoch
        EP = self._EP
        C = self._C
        MN = self._MN
        MX = self._MX
        v = 1
        a = 1
        b = self.leaf_base
        cnt = 0
        while a != b:
            cnt += 1
            if EP[v] != cur:
                self.ctx.visits += cnt
                return None
            if C[v]:
                self.ctx.visits += cnt
                return r
            if MN[v] > r or MX[v] < l:
                self.ctx.visits += cnt
                return None
            mid = (a + b) >> 1
            if r <= mid:
                v += v
                b = mid
            elif l > mid:
                v += v + 1
                a = mid + 1
            else:
                res, extra = self._high_prefix(v + v + 1, mid + 1, b, r, cur)
                cnt += extra
                if res is None:
                    res, extra = self._high_suffix(v + v, a, mid, l, cur)
                    cnt += extra
                self.ctx.visits += cnt
                return res
        self.ctx.visits += cnt + 1
        return a if EP[v] == cur and C[v] else None

    def _high_prefix(self, v: int, a: int, b: int, r: int, cur: int):
        """Maximal colored position in the prefix [a, r] of subtree ``v``.

        Mirror of :meth:`_low_suffix`: keeps the best fully-in-range left
        sibling as a fallback while descending towards ``r``.
        """
        EP = self._EP
        C = self._C
        MN = self._MN
        MX = self._MX
        fb = None
        cnt = 0
        while a != b:
            cnt += 1
            if EP[v] != cur:
                return fb, cnt
            if C[v]:
                return r, cnt
            if MN[v] > r:
                return fb, cnt
            mid = (a + b) >> 1
            if r <= mid:
                v += v
                b = mid
            else:
                u = v + v
                cnt += 1
                if EP[u] == cur:
                    fb = MX[u]
                v += v + 1
                a = mid + 1
        cnt += 1
        if EP[v] == cur and C[v]:
            return r, cnt
        return fb, cnt

    def _high_suffix(self, v: int, a: int, b: int, l: int, cur: int):
        """Maximal colored position in the suffix [l, b] of subtree ``v``."""
        EP = self._EP
        C = self._C
        MX = self._MX
        cnt = 0
        while a != b:
            cnt += 1
            if EP[v] != cur:
                return None, cnt
            if C[v]:
                return b, cnt
            if MX[v] < l:
                return None, cnt
            mid = (a + b) >> 1
            if l > mid:
                v += v + 1
                a = mid + 1
            else:
                w = v + v + 1
                cnt += 1
                if EP[w] == cur:
                    return MX[w], cnt
                v += v
                b = mid
        cnt += 1
        if EP[v] == cur and C[v]:
            return a, cnt
        return None, cnt
