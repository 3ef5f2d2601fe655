"""
Static 3-d tree with exact batch k-nearest-neighbor queries.

Nodes are split at the median of their widest-spread axis. Points equal to
the split value always go left, so every left point satisfies
``p[axis] <= split`` and every right point ``p[axis] > split``. Neighbor
order is by squared Euclidean distance, ties broken by the smaller original
index, which makes results fully deterministic.
"""

from __future__ import annotations

import heapq
from bisect import bisect_left, bisect_right

import numpy as np

from .errors import ValidationError

LEAF_SIZE = 16


class KDTree:
    """Immutable k-d tree over an ``(N, 3)`` array of points.

    Parameters
    ----------
    points : array_like, shape (N, 3)
        Finite coordinates. Row ``i`` is reported as index ``i`` by queries.
    leaf_size : int
        Maximum number of points stored in a leaf.

    Attributes
    ----------
    n : int
        Number of indexed points.
    depth : int
        Number of edges on the longest root-to-leaf path.
    """

    def __init__(self, points, leaf_size: int = LEAF_SIZE):
        data = np.asarray(points, dtype=np.float64)
        if data.ndim != 2 or data.shape[1] != 3:
            raise ValidationError(f"expected shape (N, 3), got {data.shape}", "points")
        if data.shape[0] == 0:
            raise ValidationError("cannot build an index over zero points", "points")
        if not np.isfinite(data).all():
            raise ValidationError("all coordinates must be finite", "points")
        if leaf_size < 1:
            raise ValidationError("must be >= 1", "leaf_size")

        self.data = data
        self.data.setflags(write=False)
        self.n = data.shape[0]
        self.leaf_size = leaf_size

        # Flat node storage; leaf nodes have axis == -1.
        self._axis: list[int] = []
        self._split: list[float] = []
        self._children: list[tuple[int, int]] = []
        self._bucket: list[list[tuple[float, float, float, int]] | None] = []
        self.depth = 0
        self._root = self._build(np.arange(self.n), 0)

    # -- construction -------------------------------------------------

    def _new_node(self) -> int:
        self._axis.append(-1)
        self._split.append(0.0)
        self._children.append((-1, -1))
        self._bucket.append(None)
        return len(self._axis) - 1

    def _make_leaf(self, node: int, indices: np.ndarray) -> int:
        indices = np.sort(indices)
        self._bucket[node] = [(x, y, z, i) for (x, y, z), i
                              in zip(self.data[indices].tolist(), indices.tolist())]
        return node

    def _build(self, indices: np.ndarray, level: int) -> int:
        node = self._new_node()
        self.depth = max(self.depth, level)
        if len(indices) <= self.leaf_size:
            return self._make_leaf(node, indices)

        pts = self.data[indices]
        spread = pts.max(axis=0) - pts.min(axis=0)
        axis = int(np.argmax(spread))
        if spread[axis] == 0.0:
            # All points identical.
            return self._make_leaf(node, indices)

        order = np.lexsort((indices, pts[:, axis]))
        indices = indices[order]
        values = pts[order, axis].tolist()

        n = len(values)
        split = values[n // 2 - 1]
        cut = bisect_right(values, split)
        if cut == n:
            # Upper half is one repeated value; split just below it instead.
            cut = bisect_left(values, split)
            split = values[cut - 1]

        self._axis[node] = axis
        self._split[node] = split
        left = self._build(indices[:cut], level + 1)
        right = self._build(indices[cut:], level + 1)
        self._children[node] = (left, right)
        return node

    # -- queries ------------------------------------------------------

    def _search(self, q: tuple[float, float, float], k: int) -> list[tuple[float, int]]:
        qx, qy, qz = q
        # Max-heap of the current best k, keyed on (d2, index) via negation.
        heap: list[tuple[float, int]] = []
        axis_of = self._axis
        split_of = self._split
        children = self._children
        bucket_of = self._bucket

        def visit(node: int) -> None:
            axis = axis_of[node]
            if axis < 0:
                for x, y, z, i in bucket_of[node]:
                    dx = x - qx
                    dy = y - qy
                    dz = z - qz
                    d2 = dx * dx + dy * dy + dz * dz
                    if len(heap) < k:
                        heapq.heappush(heap, (-d2, -i))
                    else:
                        wd, wi = heap[0]
                        if d2 < -wd or (d2 == -wd and i < -wi):
                            heapq.heapreplace(heap, (-d2, -i))
                return
            diff = q[axis] - split_of[node]
            left, right = children[node]
            if diff <= 0.0:
                near, far = left, right
            else:
                near, far = right, left
            visit(near)
            # Equal bound still visited: a tie there may carry a smaller index.
            if len(heap) < k or diff * diff <= -heap[0][0]:
                visit(far)

        visit(self._root)
        return sorted((-d, -i) for d, i in heap)

    def query(self, queries, k: int, return_distance: bool = False):
        """Find the ``k`` nearest indexed points of each query.

        Parameters
        ----------
        queries : array_like, shape (M, 3) or (3,)
        k : int
            ``1 <= k <= n``.
        return_distance : bool
            Also return Euclidean distances.

        Returns
        -------
        indices : ndarray of int64, shape (M, k)
            Row ``i`` lists neighbors of query ``i`` nearest first.
        distances : ndarray, shape (M, k)
            Only when ``return_distance`` is true.
        """
        k = int(k)
        if not 1 <= k <= self.n:
            raise ValidationError(f"must satisfy 1 <= k <= {self.n}, got {k}", "k")
        q = np.asarray(queries, dtype=np.float64)
        single = q.ndim == 1
        q = np.atleast_2d(q)
        if q.shape[1] != 3:
            raise ValidationError(f"expected shape (M, 3), got {q.shape}", "queries")
        if not np.isfinite(q).all():
            raise ValidationError("all coordinates must be finite", "queries")

        m = q.shape[0]
        idx = np.empty((m, k), dtype=np.int64)
        d2 = np.empty((m, k), dtype=np.float64)
        for row, point in enumerate(q.tolist()):
            found = self._search(tuple(point), k)
            d2[row] = [d for d, _ in found]
            idx[row] = [i for _, i in found]

        if single:
            idx, d2 = idx[0], d2[0]
        if return_distance:
            return idx, np.sqrt(d2)
        return idx

    # -- introspection ------------------------------------------------

    def iter_nodes(self):
        """Yield ``(axis, split, left_indices, right_indices)`` for internal nodes.

        Intended for structural checks; walks the whole tree.
        """
        def collect(node):
            if self._axis[node] < 0:
                return [i for *_, i in self._bucket[node]]
            left, right = self._children[node]
            return collect(left) + collect(right)

        stack = [self._root]
        while stack:
            node = stack.pop()
            if self._axis[node] < 0:
                continue
            left, right = self._children[node]
            yield self._axis[node], self._split[node], collect(left), collect(right)
            stack.extend((left, right))

    def indices(self) -> list[int]:
        """All stored payload indices, in leaf order."""
        return [i for b in self._bucket if b is not None for *_, i in b]


def build_index(points, leaf_size: int = LEAF_SIZE) -> KDTree:
    return KDTree(points, leaf_size=leaf_size)


def query_knn(index: KDTree, queries, k: int) -> np.ndarray:
    return index.query(queries, k)
