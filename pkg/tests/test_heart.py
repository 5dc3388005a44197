import pytest

from heartwood import bundled, fib_gen, golden, induced_system, periodic
from heartwood.errors import InputError
from heartwood.heart import (
    geometric_probe,
    heart_approx,
    limit_set_approx,
    pieces_refine,
    qk_eval,
    ray_is_nested,
    theorem_audit,
)
from heartwood.suspension import SuspensionTree
from heartwood.words import explicit

ALPHA = golden()


def span(sys, S):
    t = sys.tree
    cs = sorted(t.distance(t.along(0), p) for p in S.points)
    return cs[0], cs[-1]


def test_ray_on_point_system(point):
    T = SuspensionTree(point)
    s = qk_eval(point, periodic((1,)), 4, T)
    assert s.kind == "RAY" and s.dead_index == 2
    # the first convergent is the bridge start itself
    assert s.distances == [0, 1, 2, 3]
    assert ray_is_nested(T, s)
    assert (1, 3) in s.certificates and (2, 4) in s.certificates


def test_admissible_identity(systems):
    ident = systems["SYS-ID"]
    s = qk_eval(ident, periodic((1,)), 6)
    assert s.kind == "ADMISSIBLE" and s.diameter == 1
    assert ident.tree.same(s.domain, ident.core)


def test_fibonacci_word_shrinks(gold):
    X = fib_gen(gold.alphabet)
    assert qk_eval(gold, X, 12).diameter <= ALPHA**5
    diams = [qk_eval(gold, X, n).diameter for n in range(1, 15)]
    assert all(a >= b for a, b in zip(diams, diams[1:]))


def test_eventually_admissible(gold):
    X = explicit(gold.parse("a.a") + fib_gen(gold.alphabet).prefix(30))
    s = qk_eval(gold, X, 16)
    assert s.kind == "EVENTUALLY_ADMISSIBLE" and s.split == 1 and s.dead_index == 2
    # the reported points sit in the copy of the first letter
    T = SuspensionTree(gold)
    assert all(T.in_copy(p, (1,)) for p in s.points)
    with pytest.raises(InputError):
        qk_eval(gold, X, 0)


def test_prefix_equivariance(gold):
    X = fib_gen(gold.alphabet)
    t = gold.tree
    for n in range(4, 9):
        word = X.prefix(n)
        D = gold.dom(word)
        for i in range(1, 4):
            Xi, tail = word[:i], word[i:]
            moved = t.hull(gold.apply(p, Xi) for p in D.points)
            assert t.same(moved, t.intersection(gold.dom(tail), gold.image(Xi)))
            assert t.is_subset(moved, gold.dom(tail))


def test_limit_set_examples(point, gold):
    assert limit_set_approx(point, 3) == []
    ident = bundled("SYS-ID")
    assert [span(ident, S) for S in limit_set_approx(ident, 3)] == [(0, 1)]
    pieces = limit_set_approx(gold, 6)
    spans = [span(gold, S) for S in pieces]
    assert any(lo == 0 for lo, _ in spans) and any(hi == 1 for _, hi in spans)
    assert any(lo <= ALPHA**2 <= hi for lo, hi in spans)
    assert [len(limit_set_approx(gold, n)) for n in range(1, 6)] == [5, 9, 11, 15, 19]


@pytest.mark.parametrize("name", ["SYS-SHIFT", "SYS-ID", "SYS-REFLECT", "SYS-GOLD"])
def test_limit_sets_refine(name):
    sys = bundled(name)
    prev = limit_set_approx(sys, 1)
    for n in range(2, 7):
        cur = limit_set_approx(sys, n)
        assert pieces_refine(sys, prev, cur)
        assert all(sys.tree.is_subset(S, sys.core) for S in cur)
        prev = cur


def test_heart_examples(point, gold):
    ident = bundled("SYS-ID")
    assert span(ident, heart_approx(ident, 3).subtree) == (0, 1)
    assert heart_approx(point, 4).empty
    h = heart_approx(gold, 8)
    lo, hi = span(gold, h.subtree)
    assert lo <= ALPHA**4 and hi >= 1 - ALPHA**4


def test_heart_non_increasing(gold):
    t = gold.tree
    hearts = [heart_approx(gold, n).subtree for n in range(1, 7)]
    assert all(t.is_subset(b, a) for a, b in zip(hearts, hearts[1:]))


def test_audit_whole_core_is_consistent(gold):
    r = theorem_audit(gold, gold.core, 4, 2)
    assert r.cond3 and r.cond2 and r.consistent and r.lengths_equal
    assert r.violations == []


def test_audit_small_subtree_misses_pieces(gold):
    t = gold.tree
    Kp = t.hull([t.along(0), t.along(ALPHA**4)])
    r = theorem_audit(gold, Kp, 6, 2)
    assert not r.cond3 and r.cond3_witness is not None
    assert t.intersection(r.cond3_witness, Kp).is_empty
    assert r.cond2 is None and "empty" in r.note
    with pytest.raises(InputError):
        theorem_audit(gold, Kp, 6, 2, strict=True)
    assert any("COND3" in line for line in r.lines(gold.format))


def test_audit_shift_subsegment(shift):
    t = shift.tree
    r = theorem_audit(shift, t.hull([t.along(0), t.along(1)]), 4, 1)
    assert all(ls >= lb for _, ls, lb in r.lengths)
    assert r.violations == []


def test_audit_rejects_outside_subtree(gold):
    t = gold.tree
    small = induced_system(gold, t.hull([t.along(0), t.along(ALPHA)]))
    with pytest.raises(InputError):
        theorem_audit(small, t.whole(), 3, 1)


def test_geometric_probe(point, gold):
    ident = bundled("SYS-ID")
    r = geometric_probe(ident, 4)
    assert r.stable_from == 1 and r.rows[0][1] == 2
    r = geometric_probe(gold, 10)
    assert r.rows[-1][1] == 2 and r.stable_from is not None
    assert geometric_probe(point, 3).empty
