"""The suspension tree ``T_K = F(A) x K / ~`` of a system of isometries.

A point of ``T_K`` is a pair ``(u, x)`` with ``u`` a reduced word and ``x``
a point of ``K``; ``(u, x) ~ (v, y)`` iff ``x . (u^-1 v) = y``.  The
canonical representative uses the shortest possible word, obtained by
stripping final letters while the point stays glued to the parent copy.

Distances are computed without building any tree: the copies met along
the path from ``u`` to ``v`` in the Cayley tree form a chain in which
consecutive copies share the gluing subtree, and the geodesic enters each
gluing subtree at the projection of the previous entry point.  Finite
balls (:class:`BallTree`) are then reconstructed from this metric as
explicit finite metric trees.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .errors import BudgetError, InputError, InvariantBreach, OutOfBallError
from .scalars import ExactScalar
from .systems import IsometrySystem
from .trees import EMPTY, ClosedSubtree, FiniteMetricTree, TreePoint
from .words import enumerate_reduced, inverse, is_cyclically_reduced, reduce

__all__ = [
    "HostPoint",
    "SuspensionTree",
    "TranslationLength",
    "TranslateBridge",
    "BallTree",
    "build_ball",
    "path_ball",
    "locate",
    "act",
    "bridge_to_translate",
    "translation_length",
    "RestrictionMorphism",
    "restriction_morphism",
]

ZERO = ExactScalar(0)


class HostPoint(NamedTuple):
    """The class of ``(word, x)`` in ``T_K``; build through :meth:`SuspensionTree.point`."""

    word: tuple
    x: TreePoint

    def __repr__(self):
        return f"({self.word}, {self.x!r})"


def _common_prefix(u, v):
    n = 0
    for a, b in zip(u, v):
        if a != b:
            break
        n += 1
    return n


class SuspensionTree:
    """Exact metric and left action of ``F(A)`` on ``T_K``."""

    def __init__(self, sys: IsometrySystem):
        self.sys = sys
        self.K = sys.tree
        self._dist = {}
        self._proj = {}

    # --- points -------------------------------------------------------
    def point(self, u, x):
        """Canonical representative of ``(u, x)``."""
        u = tuple(u)
        self.sys.check_word(u)
        self.K.check_point(x)
        if not self.sys.in_core(x):
            raise InputError(f"{x} is not a point of K")
        return self._canon(u, x)

    def _canon(self, u, x):
        while u:
            y = self.sys.gen(-u[-1]).apply(x)
            if y is None:
                break
            u, x = u[:-1], y
        return HostPoint(u, x)

    def base(self, x):
        return self.point((), x)

    def act(self, w, p):
        """Left action ``w . (u, x) = (wu, x)``."""
        return self._canon(reduce(tuple(w) + p.word), p.x)

    # --- metric -------------------------------------------------------
    def _project(self, S, y):
        key = (S, y)
        r = self._proj.get(key)
        if r is None:
            r = self._proj[key] = self.K.projection(S, y)
        return r

    def _walk(self, p, target):
        """Legs ``(word, a, b)`` from ``p`` into copy ``target``.

        Returns the legs and the entry point into the target copy, in that
        copy's coordinates.
        """
        u, y = p.word, p.x
        n = _common_prefix(u, target)
        legs = []
        word = u
        for z in reversed(u[n:]):
            y2 = self._project(self.sys.gen(z).image, y)
            legs.append((word, y, y2))
            y = self.sys.gen(-z).apply(y2)
            word = word[:-1]
        for z in target[n:]:
            g = self.sys.gen(z)
            y2 = self._project(g.domain, y)
            legs.append((word, y, y2))
            y = g.apply(y2)
            word = word + (z,)
        return legs, y

    def legs(self, p, q):
        legs, y = self._walk(p, q.word)
        legs.append((q.word, y, q.x))
        return legs

    def distance(self, p, q):
        if p == q:
            return ZERO
        key = (p, q)
        d = self._dist.get(key)
        if d is None:
            d = sum((self.K.distance(a, b) for _, a, b in self.legs(p, q)), ZERO)
            self._dist[key] = self._dist[(q, p)] = d
        return d

    def point_at(self, p, q, t):
        """The point of ``[p, q]`` at distance ``t`` from ``p``."""
        for word, a, b in self.legs(p, q):
            seg = self.K.distance(a, b)
            if t <= seg:
                return self._canon(word, self.K.point_at(a, b, t))
            t = t - seg
        if t.sign() == 0:
            return q
        raise InputError("distance exceeds the geodesic length")

    def median(self, p, q, r):
        t = (self.distance(p, q) + self.distance(p, r) - self.distance(q, r)) / 2
        return self.point_at(p, q, t)

    def project_to_copy(self, p, u):
        """Nearest point of the copy ``uK`` to ``p``."""
        _, y = self._walk(p, tuple(u))
        return self._canon(tuple(u), y)

    def in_copy(self, p, u):
        return self.distance(p, self.project_to_copy(p, u)).sign() == 0

    def copy_bridge(self, u, v):
        """Endpoints and length of the bridge from ``uK`` to ``vK``."""
        u, v = tuple(u), tuple(v)
        x0 = self.sys.core.points[0]
        a = self.project_to_copy(self._canon(v, x0), u)
        b = self.project_to_copy(a, v)
        return a, b, self.distance(a, b)

    def gap(self, w):
        """``d(K, wK)``; zero exactly when ``w`` is admissible."""
        return self.copy_bridge((), w)[2]

    # --- isometry types -----------------------------------------------
    def translation_length(self, w):
        w = tuple(w)
        self.sys.check_word(w)
        if not w or not is_cyclically_reduced(w):
            raise InputError(f"{self.sys.format(w)} must be nonempty and cyclically reduced")
        p = self.base(self.sys.core.points[0])
        wp = self.act(w, p)
        w2p = self.act(w, wp)
        d1, d2 = self.distance(p, wp), self.distance(p, w2p)
        length = max(ZERO, d2 - d1)
        if length.sign() > 0:
            h = self.point_at(p, wp, (d1 - length) / 2)
            kind = "HYPERBOLIC"
        else:
            h = self.point_at(p, wp, d1 / 2)
            kind = "ELLIPTIC"
        if h.word:
            raise InvariantBreach(f"witness for {self.sys.format(w)} is not in K: {h}")
        return TranslationLength(w, length, kind, h.x)

    def check_witness(self, tl):
        """Does the witness satisfy its defining equation exactly?"""
        x = self.base(tl.witness)
        wx = self.act(tl.word, x)
        if tl.kind == "ELLIPTIC":
            return wx == x
        return self.distance(x, wx) == tl.length

    def bridge_to_translate(self, w):
        w = tuple(w)
        self.sys.check_word(w)
        if self.sys.is_admissible(w):
            raise InputError(f"{self.sys.format(w)} is admissible: K and wK intersect")
        a, b, length = self.copy_bridge((), w)
        if a.word:
            raise InvariantBreach("bridge start is not in K")
        cert = []
        for i in range(len(w) + 1):
            c = self.project_to_copy(a, w[:i])
            on = self.distance(a, c) + self.distance(c, b) == length
            cert.append((w[:i], c, on))
        return TranslateBridge(w, a.x, b, length, cert)


@dataclass(frozen=True)
class TranslationLength:
    word: tuple
    length: ExactScalar
    kind: str  # "HYPERBOLIC" or "ELLIPTIC"
    witness: TreePoint


@dataclass(frozen=True)
class TranslateBridge:
    """The bridge ``[K, wK]``.

    ``certificate`` holds ``(prefix, point, on_bridge)``: the point of the
    prefix copy nearest to the start, and whether it lies on the bridge.
    """

    word: tuple
    start: TreePoint
    end: HostPoint
    length: ExactScalar
    certificate: list


def translation_length(sys, w):
    return SuspensionTree(sys).translation_length(w)


def bridge_to_translate(sys, w):
    return SuspensionTree(sys).bridge_to_translate(w)


# --- finite balls ----------------------------------------------------------


class BallTree:
    """The union of the copies ``uK``, ``u`` in a prefix-closed word set.

    ``host`` is an explicit :class:`FiniteMetricTree`; ``copies[u]`` lists
    the host vertices carrying the images of K's vertices under ``phi_u``.
    """

    def __init__(self, sys, words, T: Optional[SuspensionTree] = None):
        self.sys = sys
        self.T = T or SuspensionTree(sys)
        words = sorted(set(tuple(w) for w in words), key=lambda w: (len(w), w))
        wordset = set(words)
        for w in words:
            if w and w[:-1] not in wordset:
                raise InputError(f"word set is not prefix-closed at {sys.format(w)}")
        if () not in wordset:
            raise InputError("the word set must contain the empty word")
        self.words = words
        self.radius = max(len(w) for w in words)
        self._build()

    def _markers(self):
        K = self.sys.tree
        kpts = [p for p in K.vertex_points() if self.sys.in_core(p)] + list(self.sys.core.points)
        for g in self.sys.generators:
            kpts += list(g.domain.points) + list(g.image.points)
        kpts = list(dict.fromkeys(kpts))
        out = {}
        for u in self.words:
            for x in kpts:
                h = self.T._canon(u, x)
                out.setdefault(h, None)
        return list(out)

    def _build(self):
        T = self.T
        markers = self._markers()
        adj = {0: {}}
        node_of = {markers[0]: 0}
        inserted = [markers[0]]
        nxt = 1

        def path(a, b):
            prev = {a: None}
            stack = [a]
            while stack:
                x = stack.pop()
                if x == b:
                    break
                for y in adj[x]:
                    if y not in prev:
                        prev[y] = x
                        stack.append(y)
            out = [b]
            while prev[out[-1]] is not None:
                out.append(prev[out[-1]])
            return out[::-1]

        p0 = markers[0]
        for p in markers[1:]:
            dp0 = T.distance(p, p0)
            best_q, best_g = p0, ZERO
            for q in inserted[1:]:
                g = (dp0 + T.distance(p0, q) - T.distance(p, q)) / 2
                if g > best_g:
                    best_q, best_g = q, g
            pend = dp0 - best_g
            route = path(0, node_of[best_q])
            s = best_g
            attach = None
            for a, b in zip(route, route[1:]):
                ln = adj[a][b]
                if s.sign() == 0:
                    attach = a
                    break
                if s < ln:
                    attach = nxt
                    nxt += 1
                    del adj[a][b], adj[b][a]
                    adj[attach] = {a: s, b: ln - s}
                    adj[a][attach] = s
                    adj[b][attach] = ln - s
                    break
                s = s - ln
            if attach is None:
                if s.sign() != 0:
                    raise InvariantBreach("attachment point beyond the geodesic")
                attach = route[-1]
            if pend.sign() == 0:
                if attach in node_of.values():
                    raise InvariantBreach(f"distinct points {p} and an existing marker at distance 0")
                node = attach
            elif pend.sign() < 0:
                raise InvariantBreach("negative pendant length: metric is not a tree metric")
            else:
                node = nxt
                nxt += 1
                adj[node] = {attach: pend}
                adj[attach][node] = pend
            node_of[p] = node
            inserted.append(p)
        edges = []
        for a in sorted(adj):
            for b, ln in adj[a].items():
                if a < b:
                    edges.append((a, b, ln))
        self.host = FiniteMetricTree(sorted(adj), edges)
        self.node_of = node_of
        self.markers = markers
        K = self.sys.tree
        self._kverts = [v for v in K.vertices if self.sys.in_core(TreePoint(vertex=v))]
        self.copies = {}
        for u in self.words:
            self.copies[u] = [
                TreePoint(vertex=node_of[T._canon(u, TreePoint(vertex=v))]) for v in self._kverts
            ]

    def __repr__(self):
        return f"BallTree(R={self.radius}, {len(self.words)} copies, {len(self.host.vertices)} vertices)"

    # --- embeddings -----------------------------------------------------
    def embed(self, h: HostPoint):
        """Host tree point of a point of ``T_K`` lying in the ball."""
        if h in self.node_of:
            return TreePoint(vertex=self.node_of[h])
        if h.word not in self.copies:
            raise OutOfBallError(f"copy {self.sys.format(h.word)} is not in the ball")
        K = self.sys.tree
        x = h.x
        for v1, v2, _ in K.edges:
            a, b = TreePoint(vertex=v1), TreePoint(vertex=v2)
            if K.on_geodesic(a, b, x) and v1 in self._kverts and v2 in self._kverts:
                ha = TreePoint(vertex=self.node_of[self.T._canon(h.word, a)])
                hb = TreePoint(vertex=self.node_of[self.T._canon(h.word, b)])
                return self.host.point_at(ha, hb, K.distance(a, x))
        # x lies on a core edge whose endpoints are outside the core
        for e in self.sys.core.points:
            he = self.embed(self.T._canon(h.word, e))
            for f in self.sys.core.points:
                if K.on_geodesic(e, f, x):
                    hf = self.embed(self.T._canon(h.word, f))
                    return self.host.point_at(he, hf, K.distance(e, x))
        raise InvariantBreach(f"cannot embed {h}")

    def copy_subtree(self, u):
        u = tuple(u)
        if u not in self.copies:
            raise OutOfBallError(f"copy {self.sys.format(u)} is not in the ball")
        pts = [self.embed(self.T._canon(u, e)) for e in self.sys.core.points]
        return self.host.hull(pts)

    def pull_back(self, hp, u=()):
        """Point ``x`` of K with ``phi_u(x) = hp``, or ``None``."""
        S = self.copy_subtree(u)
        if not self.host.contains(S, hp):
            return None
        K, core = self.sys.tree, self.sys.core.points
        e0 = core[0]
        h0 = self.embed(self.T._canon(tuple(u), e0))
        d0 = self.host.distance(h0, hp)
        if len(core) == 1:
            return e0
        for e in core[1:]:
            he = self.embed(self.T._canon(tuple(u), e))
            if self.host.on_geodesic(h0, he, hp):
                return K.point_at(e0, e, d0)
        raise InvariantBreach("point of the copy hull not on any extremal arc")

    def to_host_point(self, hp):
        for u in self.words:
            x = self.pull_back(hp, u)
            if x is not None:
                return self.T._canon(u, x)
        raise OutOfBallError(f"{hp} is not in the ball")

    def locate(self, u, x):
        u = tuple(u)
        if len(u) > self.radius or u not in self.copies:
            raise OutOfBallError(f"|{self.sys.format(u)}| exceeds the ball")
        return self.embed(self.T.point(u, x))

    def act(self, w, hp):
        h = self.T.act(tuple(w), self.to_host_point(hp))
        if h.word not in self.copies:
            raise OutOfBallError(f"image lies in copy {self.sys.format(h.word)}, outside the ball")
        return self.embed(h)

    # --- checks -------------------------------------------------------
    def four_point_violations(self, samples=10_000, seed=0):
        """Sample marker quadruples; compare the T_K metric against the host metric."""
        rng = random.Random(seed)
        pts = self.markers
        bad = 0
        for _ in range(samples):
            quad = [rng.choice(pts) for _ in range(4)]
            if not self.host.four_point_ok(*quad, dist=self.T.distance):
                bad += 1
                continue
            hq = [self.embed(h) for h in quad]
            for a, b in itertools.combinations(range(4), 2):
                if self.host.distance(hq[a], hq[b]) != self.T.distance(quad[a], quad[b]):
                    bad += 1
                    break
        return bad

    # --- export -------------------------------------------------------
    def to_dot(self):
        incident = {v: [] for v in self.host.vertices}
        for u, pts in self.copies.items():
            for p in pts:
                incident[p.vertex].append(self.sys.format(u))
        lines = ["graph ball {"]
        for v in self.host.vertices:
            tip = ",".join(sorted(set(incident[v]))) or "steiner"
            lines.append(f'  n{v} [tooltip="{tip}"];')
        for a, b, ln in self.host.edges:
            lines.append(f'  n{a} -- n{b} [label="{ln}"];')
        lines.append("}")
        return "\n".join(lines)

    def to_json(self):
        from .io import point_to_json, tree_to_json

        doc = tree_to_json(self.host)
        doc["copies"] = {self.sys.format(u): [point_to_json(p) for p in pts] for u, pts in self.copies.items()}
        return doc


def _all_words(sys, R, positive_only=False):
    for n in range(R + 1):
        yield from enumerate_reduced(sys.alphabet, n, positive_only=positive_only)


def ball_size(rank, R, positive_only=False):
    if positive_only:
        return sum(rank**n for n in range(R + 1))
    return 1 + sum(2 * rank * (2 * rank - 1) ** (n - 1) for n in range(1, R + 1))


def build_ball(sys, R, positive_only=False, budget=None, T=None):
    """All copies ``uK`` with ``|u| <= R`` (only positive words if asked)."""
    if R < 0:
        raise InputError("radius must be nonnegative")
    need = ball_size(sys.rank, R, positive_only)
    if budget is not None and need > budget:
        raise BudgetError(f"radius {R} needs {need} copies, budget is {budget}", required=need)
    return BallTree(sys, _all_words(sys, R, positive_only), T=T)


def path_ball(sys, words, T=None):
    """The sub-ball spanned by the prefixes of ``words``."""
    closure = {()}
    for w in words:
        w = tuple(w)
        for i in range(len(w) + 1):
            closure.add(w[:i])
    return BallTree(sys, closure, T=T)


def locate(ball, u, x):
    return ball.locate(u, x)


def act(ball, w, p):
    return ball.act(w, p)


# --- morphisms -------------------------------------------------------------


class RestrictionMorphism:
    """The equivariant map ``j: T_{K'} -> T_K``, ``(u, x) -> (u, x)``."""

    def __init__(self, big: IsometrySystem, small: IsometrySystem):
        if big.tree is not small.tree:
            raise InputError("both systems must share the ambient tree")
        if big.alphabet != small.alphabet:
            raise InputError("both systems must use the same alphabet")
        t = big.tree
        if not t.is_subset(small.core, big.core):
            raise InputError("K' is not contained in K")
        for gs, gb in zip(small.generators, big.generators):
            for p, q in zip(gs.domain.points, gs.images):
                if gb.apply(p) != q:
                    raise InputError(f"generator {gs.name!r} of K' is not a restriction of K's")
        self.big, self.small = big, small
        self.Tbig, self.Tsmall = SuspensionTree(big), SuspensionTree(small)

    def __call__(self, h):
        return self.Tbig._canon(h.word, h.x)

    def compare(self, pairs):
        """``(d_small, d_big)`` for each pair of points of ``T_{K'}``."""
        return [(self.Tsmall.distance(p, q), self.Tbig.distance(self(p), self(q))) for p, q in pairs]

    def sample_pairs(self, R, samples=200, seed=0):
        rng = random.Random(seed)
        words = list(_all_words(self.small, R))
        pts = list(self.small.core.points) + [
            p for p in self.small.tree.vertex_points() if self.small.in_core(p)
        ]
        out = []
        for _ in range(samples):
            p = self.Tsmall._canon(rng.choice(words), rng.choice(pts))
            q = self.Tsmall._canon(rng.choice(words), rng.choice(pts))
            out.append((p, q))
        return out


def restriction_morphism(big, small, R=None):
    return RestrictionMorphism(big, small)
