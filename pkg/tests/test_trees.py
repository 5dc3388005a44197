import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from heartwood.errors import InputError
from heartwood.scalars import ExactScalar, golden, sqrt
from heartwood.trees import (
    ClosedSubtree,
    FiniteMetricTree,
    TreePoint,
    bridge,
    convex_hull,
    distance,
    geodesic,
    liminf_from,
    median,
    segment,
    subtree_intersection,
)

V = TreePoint.at


def tripod():
    return FiniteMetricTree(["c", "l1", "l2", "l3"], [("c", "l1", 1), ("c", "l2", 1), ("c", "l3", 1)])


def star(k):
    return FiniteMetricTree(["c"] + [f"p{i}" for i in range(1, k + 1)], [("c", f"p{i}", 1) for i in range(1, k + 1)])


def caterpillar():
    # spine 0-1-2-3 with a leg at each inner vertex
    return FiniteMetricTree(
        [0, 1, 2, 3, "x", "y"],
        [(0, 1, 1), (1, 2, Fraction(1, 2)), (2, 3, 2), (1, "x", 1), (2, "y", Fraction(3, 2))],
    )


def test_distance_examples():
    s = segment(2)
    assert distance(s, V(0), V(1)) == 2
    t = tripod()
    assert distance(t, V("l1"), V("l2")) == 2
    a = golden()
    g = segment(1)
    assert distance(g, g.along(a * a), V(1)) == (sqrt(5) - 1) / 2


def test_invalid_point_rejected():
    s = segment(2)
    with pytest.raises(InputError):
        distance(s, V(7), V(0))
    with pytest.raises(InputError):
        distance(s, TreePoint(edge=0, offset=ExactScalar(3)), V(0))


def test_geodesic_examples():
    s, t = segment(2), tripod()
    p = s.along(Fraction(1, 3))
    assert geodesic(s, p, p) == [p]
    assert geodesic(t, V("l1"), V("l2")) == [V("l1"), V("c"), V("l2")]
    arc = geodesic(s, p, s.along(Fraction(5, 3)))
    assert arc[0] == p and arc[-1] == s.along(Fraction(5, 3))
    assert sum(s.distance(x, y) for x, y in zip(arc, arc[1:])) == Fraction(4, 3)


def test_median_examples():
    s, t = segment(2), tripod()
    assert median(s, V(0), V(0), V(1)) == V(0)
    assert median(t, V("l1"), V("l2"), V("l3")) == V("c")
    assert median(s, V(0), s.along(1), V(1)) == s.along(1)


def test_hull_examples():
    s, t = segment(2), tripod()
    p = s.along(Fraction(1, 2))
    assert convex_hull(s, [p]).points == (p,)
    assert t.same(convex_hull(t, [V("l1"), V("l2"), V("l3")]), t.whole())
    H = convex_hull(s, [p, s.along(Fraction(3, 2)), s.along(1)])
    assert s.same(H, s.hull([p, s.along(Fraction(3, 2))]))
    assert convex_hull(s, []).is_empty


def test_intersection_examples():
    s, t = segment(2), tripod()
    left, right = s.hull([V(0), s.along(1)]), s.hull([s.along(1), V(1)])
    assert subtree_intersection(s, left, right).points == (s.along(1),)
    assert s.same(subtree_intersection(s, left, left), left)
    meet = subtree_intersection(t, t.hull([V("l1"), V("c")]), t.hull([V("l2"), V("l3")]))
    assert meet.points == (V("c"),)


def test_intersection_rejects_foreign_points():
    s = segment(2)
    with pytest.raises(InputError):
        subtree_intersection(s, ClosedSubtree((V("zz"),)), s.whole())


def test_bridge_examples():
    s = segment(3)
    b = bridge(s, s.hull([V(0), s.along(1)]), s.hull([s.along(2), V(1)]))
    assert (b.start, b.end, b.length, b.degenerate) == (s.along(1), s.along(2), 1, False)
    t = tripod()
    b = bridge(t, ClosedSubtree((V("l1"),)), ClosedSubtree((V("l2"),)))
    assert b.length == 2 and t.on_geodesic(b.start, b.end, V("c"))
    s = segment(2)
    b = bridge(s, s.hull([V(0), s.along(1)]), s.hull([s.along(1), V(1)]))
    assert b.degenerate and b.length == 0 and b.start == s.along(1)


def _grid(t, step):
    """Every vertex plus the points at multiples of ``step`` along each edge."""
    pts = list(t.vertex_points())
    for e, (_, _, length) in enumerate(t.edges):
        k = 1
        while step * k < length:
            pts.append(t.point(e, ExactScalar(step * k)))
            k += 1
    return pts


def test_bridge_matches_brute_force_on_grid():
    t = caterpillar()
    pts = _grid(t, Fraction(1, 4))
    subtrees = [t.hull(c) for c in itertools.combinations(pts[::3], 2)]
    for S1, S2 in itertools.combinations(subtrees, 2):
        if not t.intersection(S1, S2).is_empty:
            continue
        b = t.bridge(S1, S2)
        brute = min(t.distance(p, q) for p in pts if t.contains(S1, p) for q in pts if t.contains(S2, q))
        assert b.length == brute
        assert t.contains(S1, b.start) and t.contains(S2, b.end)


def test_liminf_examples():
    t = star(5)
    seq = [V(f"p{i}") for i in [2, 3, 4, 5] * 3]
    assert liminf_from(t, V("p1"), seq) == V("c")
    s = segment(2)
    assert liminf_from(s, V(0), [s.along(1)] * 3) == s.along(1)
    assert liminf_from(s, V(0), [V(1), s.along(1), V(1), s.along(1)]) == s.along(1)
    with pytest.raises(InputError):
        liminf_from(s, V(0), [])


points_index = st.integers(min_value=0, max_value=10_000)


@settings(max_examples=60)
@given(st.lists(points_index, min_size=4, max_size=4))
def test_four_point_condition(idx):
    t = caterpillar()
    pts = _grid(t, Fraction(1, 4))
    p, q, r, s = (pts[i % len(pts)] for i in idx)
    assert t.four_point_ok(p, q, r, s)


@settings(max_examples=60)
@given(st.lists(points_index, min_size=3, max_size=3))
def test_median_symmetric_and_geodesic_criterion(idx):
    t = caterpillar()
    pts = _grid(t, Fraction(1, 3))
    p, q, r = (pts[i % len(pts)] for i in idx)
    m = t.median(p, q, r)
    assert all(t.median(*perm) == m for perm in itertools.permutations((p, q, r)))
    on = t.distance(p, q) + t.distance(q, r) == t.distance(p, r)
    assert on == t.on_geodesic(p, r, q)


@settings(max_examples=40)
@given(st.lists(points_index, min_size=1, max_size=5), st.lists(points_index, max_size=3))
def test_hull_idempotent_and_monotone(a, b):
    t = caterpillar()
    pts = _grid(t, Fraction(1, 2))
    A = [pts[i % len(pts)] for i in a]
    B = A + [pts[i % len(pts)] for i in b]
    H = t.hull(A)
    assert t.same(t.hull(H.points), H)
    assert t.is_subset(H, t.hull(B))
