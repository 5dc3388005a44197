"""Finite metric trees with exact edge lengths.

A point of a tree is either a vertex or a position strictly inside an edge,
measured from the edge's first endpoint.  Closed subtrees are stored as the
minimal list of extremal points whose convex hull they are.

Everything here is exact: distances, projections and intersections are
computed with :class:`~heartwood.scalars.ExactScalar` arithmetic.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Optional

from .errors import InputError
from .scalars import ExactScalar, as_scalar

__all__ = [
    "TreePoint",
    "ClosedSubtree",
    "Bridge",
    "FiniteMetricTree",
    "segment",
    "distance",
    "geodesic",
    "median",
    "convex_hull",
    "subtree_intersection",
    "bridge",
    "liminf_from",
]

ZERO = ExactScalar(0)


@dataclass(frozen=True)
class TreePoint:
    """A vertex, or an interior position ``offset`` along edge ``edge``."""

    vertex: Optional[Hashable] = None
    edge: Optional[int] = None
    offset: Optional[ExactScalar] = None

    @classmethod
    def at(cls, vertex):
        return cls(vertex=vertex)

    @property
    def is_vertex(self):
        return self.edge is None

    def sort_key(self):
        if self.edge is None:
            return (0, str(self.vertex), ZERO)
        return (1, self.edge, self.offset)

    def __repr__(self):
        if self.edge is None:
            return f"<v {self.vertex!r}>"
        return f"<e{self.edge} +{self.offset}>"


@dataclass(frozen=True)
class ClosedSubtree:
    """Convex hull of ``points``; the empty tuple is the empty subtree."""

    points: tuple = ()

    @property
    def is_empty(self):
        return not self.points

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


EMPTY = ClosedSubtree(())


@dataclass(frozen=True)
class Bridge:
    """The segment ``[start, end]`` joining two closed subtrees."""

    start: TreePoint
    end: TreePoint
    length: ExactScalar
    degenerate: bool = False


class FiniteMetricTree:
    """A finite simplicial tree with positive exact edge lengths.

    Parameters
    ----------
    vertices : iterable of hashable ids
    edges : iterable of ``(u, v, length)`` triples

    Edge ``i`` is ``edges[i]``; offsets on it are measured from ``u``.
    """

    def __init__(self, vertices: Iterable[Hashable], edges: Iterable[tuple]):
        self.vertices = list(vertices)
        self.edges = [(u, v, as_scalar(length)) for u, v, length in edges]
        self._vset = set(self.vertices)
        if len(self._vset) != len(self.vertices):
            raise InputError("duplicate vertex ids")
        if not self.vertices:
            raise InputError("a tree needs at least one vertex")
        self.adj = {v: [] for v in self.vertices}
        for i, (u, v, length) in enumerate(self.edges):
            if u not in self._vset or v not in self._vset:
                raise InputError(f"edge {i} references an unknown vertex")
            if length.sign() <= 0:
                raise InputError(f"edge {i} has non-positive length {length}")
            self.adj[u].append((v, i))
            self.adj[v].append((u, i))
        if len(self.edges) != len(self.vertices) - 1:
            raise InputError("graph is not a tree (|E| != |V| - 1)")
        self._root()
        self._dcache = {}

    def _root(self):
        root = self.vertices[0]
        self.parent = {root: None}
        self.parent_edge = {root: None}
        self.hops = {root: 0}
        self.depth = {root: ZERO}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, e in self.adj[x]:
                if y not in self.parent:
                    self.parent[y] = x
                    self.parent_edge[y] = e
                    self.hops[y] = self.hops[x] + 1
                    self.depth[y] = self.depth[x] + self.edges[e][2]
                    queue.append(y)
        if len(self.parent) != len(self.vertices):
            raise InputError("graph is not connected")

    def __repr__(self):
        return f"FiniteMetricTree({len(self.vertices)} vertices)"

    # --- points -------------------------------------------------------
    def point(self, edge, offset):
        """Canonical point at ``offset`` from the first endpoint of ``edge``."""
        u, v, length = self.edges[edge]
        offset = as_scalar(offset)
        if offset.sign() < 0 or offset > length:
            raise InputError(f"offset {offset} outside edge {edge} of length {length}")
        if offset.sign() == 0:
            return TreePoint(vertex=u)
        if offset == length:
            return TreePoint(vertex=v)
        return TreePoint(edge=edge, offset=offset)

    def along(self, t, edge=0):
        """Shorthand for :meth:`point`; handy on single-edge segment trees."""
        return self.point(edge, t)

    def check_point(self, p):
        if not isinstance(p, TreePoint):
            raise InputError(f"{p!r} is not a TreePoint")
        if p.edge is None:
            if p.vertex not in self._vset:
                raise InputError(f"unknown vertex {p.vertex!r}")
            return
        if not 0 <= p.edge < len(self.edges):
            raise InputError(f"unknown edge {p.edge}")
        length = self.edges[p.edge][2]
        if not (ZERO < p.offset < length):
            raise InputError(f"offset {p.offset} not strictly inside edge {p.edge}")

    def leaves(self):
        if len(self.vertices) == 1:
            return [self.vertices[0]]
        return [v for v in self.vertices if len(self.adj[v]) == 1]

    def whole(self):
        return self.hull(TreePoint(vertex=v) for v in self.leaves())

    def vertex_points(self):
        return [TreePoint(vertex=v) for v in self.vertices]

    # --- metric -------------------------------------------------------
    def _lca(self, u, v):
        while self.hops[u] > self.hops[v]:
            u = self.parent[u]
        while self.hops[v] > self.hops[u]:
            v = self.parent[v]
        while u != v:
            u, v = self.parent[u], self.parent[v]
        return u

    def vertex_distance(self, u, v):
        if u == v:
            return ZERO
        key = (u, v)
        d = self._dcache.get(key)
        if d is None:
            w = self._lca(u, v)
            d = self.depth[u] + self.depth[v] - 2 * self.depth[w]
            self._dcache[key] = self._dcache[(v, u)] = d
        return d

    def vertex_path(self, u, v):
        w = self._lca(u, v)
        up, down = [], []
        while u != w:
            up.append(u)
            u = self.parent[u]
        while v != w:
            down.append(v)
            v = self.parent[v]
        return up + [w] + down[::-1]

    def _ends(self, p):
        if p.edge is None:
            return ((p.vertex, ZERO),)
        u, v, length = self.edges[p.edge]
        return ((u, p.offset), (v, length - p.offset))

    def _best(self, p, q):
        best = None
        for vp, dp in self._ends(p):
            for vq, dq in self._ends(q):
                d = dp + self.vertex_distance(vp, vq) + dq
                if best is None or d < best[0]:
                    best = (d, vp, vq)
        return best

    def distance(self, p, q):
        if p == q:
            return ZERO
        if p.edge is not None and p.edge == q.edge:
            return abs(p.offset - q.offset)
        return self._best(p, q)[0]

    def geodesic(self, p, q):
        """The arc ``[p, q]`` as an ordered list of points, vertices in between."""
        if p == q:
            return [p]
        if p.edge is not None and p.edge == q.edge:
            return [p, q]
        _, vp, vq = self._best(p, q)
        out = [p]
        for v in self.vertex_path(vp, vq):
            pt = TreePoint(vertex=v)
            if pt != out[-1]:
                out.append(pt)
        if q != out[-1]:
            out.append(q)
        return out

    def _edge_between(self, a, b):
        if a.edge is not None:
            return a.edge
        if b.edge is not None:
            return b.edge
        for y, e in self.adj[a.vertex]:
            if y == b.vertex:
                return e
        raise InputError(f"{a} and {b} are not adjacent")

    def _offset_on(self, p, e):
        if p.edge is not None:
            return p.offset
        u, v, length = self.edges[e]
        return ZERO if p.vertex == u else length

    def point_at(self, p, q, t):
        """The point of ``[p, q]`` at distance ``t`` from ``p``."""
        t = as_scalar(t)
        if t.sign() < 0:
            raise InputError("negative distance along a geodesic")
        path = self.geodesic(p, q)
        for a, b in zip(path, path[1:]):
            seg = self.distance(a, b)
            if t <= seg:
                if t.sign() == 0:
                    return a
                e = self._edge_between(a, b)
                oa, ob = self._offset_on(a, e), self._offset_on(b, e)
                return self.point(e, oa + t if ob > oa else oa - t)
            t = t - seg
        if t.sign() == 0:
            return path[-1]
        raise InputError("distance exceeds the geodesic length")

    def median(self, p, q, r):
        t = (self.distance(p, q) + self.distance(p, r) - self.distance(q, r)) / 2
        return self.point_at(p, q, t)

    def on_geodesic(self, p, q, x):
        return self.distance(p, x) + self.distance(x, q) == self.distance(p, q)

    def four_point_ok(self, p, q, r, s, dist=None):
        dist = dist or self.distance
        sums = sorted(
            [dist(p, q) + dist(r, s), dist(p, r) + dist(q, s), dist(p, s) + dist(q, r)]
        )
        return sums[1] == sums[2]

    # --- subtrees -----------------------------------------------------
    def contains(self, S, p):
        pts = S.points
        if not pts:
            return False
        e0 = pts[0]
        if len(pts) == 1:
            return p == e0
        d0 = self.distance(e0, p)
        return any(d0 + self.distance(p, e) == self.distance(e0, e) for e in pts[1:])

    def hull(self, points):
        pts = []
        for p in points:
            if p not in pts:
                pts.append(p)
        changed = True
        while changed and len(pts) > 2:
            changed = False
            for i, x in enumerate(pts):
                rest = pts[:i] + pts[i + 1 :]
                if self.contains(ClosedSubtree(tuple(rest)), x):
                    pts = rest
                    changed = True
                    break
        return ClosedSubtree(tuple(sorted(pts, key=TreePoint.sort_key)))

    def is_subset(self, S1, S2):
        return all(self.contains(S2, p) for p in S1.points)

    def same(self, S1, S2):
        return S1.points == S2.points

    def projection(self, S, p):
        """Nearest point of the nonempty subtree ``S`` to ``p``."""
        pts = S.points
        if not pts:
            raise InputError("projection onto the empty subtree")
        if self.contains(S, p):
            return p
        dp = [self.distance(p, e) for e in pts]
        best = min(dp)
        for (i, ei), (j, ej) in itertools.combinations(enumerate(pts), 2):
            g = (dp[i] + dp[j] - self.distance(ei, ej)) / 2
            if g < best:
                best = g
        return self.point_at(p, pts[0], best)

    def intersection(self, S1, S2):
        if S1.is_empty or S2.is_empty:
            return EMPTY
        cand = [p for p in S1.points if self.contains(S2, p)]
        cand += [p for p in S2.points if self.contains(S1, p)]
        for src, dst in ((S1, S2), (S2, S1)):
            for p in src.points:
                x = self.projection(dst, p)
                if self.contains(src, x):
                    cand.append(x)
        return self.hull(cand) if cand else EMPTY

    def bridge(self, S1, S2):
        if S1.is_empty or S2.is_empty:
            raise InputError("bridge between empty subtrees")
        y = self.projection(S2, S1.points[0])
        x = self.projection(S1, y)
        if self.contains(S2, x):
            return Bridge(x, x, ZERO, degenerate=True)
        y = self.projection(S2, x)
        return Bridge(x, y, self.distance(x, y))

    def diameter(self, S):
        if len(S.points) < 2:
            return ZERO
        return max(self.distance(p, q) for p, q in itertools.combinations(S.points, 2))

    def branch_points(self, S):
        found = []
        for p, q, r in itertools.combinations(S.points, 3):
            m = self.median(p, q, r)
            if m not in found:
                found.append(m)
        return sorted(found, key=TreePoint.sort_key)

    def map_subtree(self, S, f):
        return self.hull(f(p) for p in S.points)

    # --- observers' liminf -------------------------------------------
    def liminf_from(self, Q, seq):
        """Endpoint of the union over ``m`` of the intersections of ``[Q, P_n]``, ``n >= m``.

        On a finite list the last few arcs always dominate the union, so the
        tail windows are restricted to the second half of the list (each
        window holds at least ``ceil(len/2)`` terms).
        """
        seq = list(seq)
        if not seq:
            raise InputError("liminf of an empty sequence")
        start = len(seq) - (len(seq) + 1) // 2
        end = seq[start]
        for p in seq[start + 1 :]:
            end = self.median(Q, end, p)
        return end


def segment(length, name=None):
    """The tree ``[0, length]``: vertices ``0`` and ``1`` joined by edge 0."""
    return FiniteMetricTree([0, 1], [(0, 1, length)])


# functional aliases mirroring the method names
def distance(t, p, q):
    t.check_point(p)
    t.check_point(q)
    return t.distance(p, q)


def geodesic(t, p, q):
    t.check_point(p)
    t.check_point(q)
    return t.geodesic(p, q)


def median(t, p, q, r):
    for x in (p, q, r):
        t.check_point(x)
    return t.median(p, q, r)


def convex_hull(t, points):
    return t.hull(points)


def subtree_intersection(t, S1, S2):
    # points from another tree fail validation here
    for p in itertools.chain(S1.points, S2.points):
        t.check_point(p)
    return t.intersection(S1, S2)


def bridge(t, S1, S2):
    return t.bridge(S1, S2)


def liminf_from(t, Q, seq):
    return t.liminf_from(Q, seq)
