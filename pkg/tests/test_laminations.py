from fractions import Fraction

import pytest

from heartwood import bundled, golden
from heartwood.errors import BudgetError, InputError
from heartwood.heart import cyclic_words
from heartwood.laminations import (
    admissible_words,
    closure_chain,
    default_epsilon,
    diagonal_closure_check,
    dual_membership,
    laminary_closure,
    minimal_forbidden,
    unit_cylinder_leaves,
)
from heartwood.oracles import IntervalMap
from heartwood.scalars import sqrt
from heartwood.suspension import SuspensionTree
from heartwood.words import BiinfiniteWord, enumerate_reduced, periodic, shift

ALPHA = golden()


def names(sys, words):
    return {sys.format(w) for w in words}


def test_admissible_examples(gold, point):
    assert names(gold, admissible_words(gold, 2, positive_only=True)) == {"a", "b", "a.b", "b.a", "b.b"}
    ident = bundled("SYS-ID")
    assert len(admissible_words(ident, 3)) == 6
    assert names(point, admissible_words(point, 2)) == {"a", "A"}


@pytest.mark.parametrize("name", ["SYS-SHIFT", "SYS-POINT", "SYS-ID", "SYS-REFLECT", "SYS-GOLD"])
def test_admissible_sets_are_closed(name):
    sys = bundled(name)
    words = set(admissible_words(sys, 6))
    for w in words:
        assert tuple(-z for z in reversed(w)) in words
        assert all(w[i:j] in words for i in range(len(w)) for j in range(i + 1, len(w) + 1))
    counts = [len(admissible_words(sys, n)) for n in range(1, 7)]
    assert counts == sorted(counts)


def test_sturmian_complexity_against_interval_oracle(gold):
    oracle = IntervalMap.from_iet([1 - ALPHA, ALPHA], [1, 0])
    for n in range(1, 13):
        got = sum(1 for w, _ in gold.iter_admissible(n, positive_only=True) if len(w) == n)
        assert got == oracle.admissible_count(n) == n + 1


def test_closure_examples(gold, point):
    assert len(laminary_closure(point, 1, 1)) == 0
    ident = bundled("SYS-ID")
    sl = laminary_closure(ident, 3, 2)
    assert sl.words == sl.admissible
    g = laminary_closure(gold, 3, 2, positive_only=True)
    three = {w for w in g.words if len(w) == 3}
    assert names(gold, three) == {"a.b.a", "a.b.b", "b.a.b", "b.b.a"}


def test_closure_provenance(point):
    sl = laminary_closure(point, 1, 1)
    assert sl.provenance((1,)) == "admissible-only"
    assert sl.provenance((1, 1)) == "absent"


@pytest.mark.parametrize("name", ["SYS-SHIFT", "SYS-POINT", "SYS-REFLECT", "SYS-GOLD"])
def test_closure_chain_is_nested(name):
    sys = bundled(name)
    chain = closure_chain(sys, 3, 3)
    assert chain.slices[0].words <= chain.slices[0].admissible
    for prev, cur in zip(chain.slices, chain.slices[1:]):
        assert cur.words <= prev.words
    for sl in chain.slices:
        assert sl.is_subword_closed() and sl.is_inverse_closed()


def test_closure_budget(gold):
    with pytest.raises(BudgetError) as exc:
        laminary_closure(gold, 4, 3, budget=50)
    assert exc.value.required > 50


def test_biinfinite_shift():
    a, b = 1, 2
    Z = BiinfiniteWord(periodic((-b, -a)), periodic((a, b)))
    assert shift(Z, 0) is Z
    assert shift(Z, 2).same_as(Z, 8)
    assert shift(shift(Z, 1), -1).same_as(Z, 8)
    assert shift(Z, 1).window(3, 3) == Z.window(2, 4)


def test_leaf_examples(point, gold):
    ident = bundled("SYS-ID")
    leaves = unit_cylinder_leaves(ident, 1)
    assert {(lf.X, lf.Y) for lf in leaves} == {((1,), (-1,)), ((-1,), (1,))}
    assert ident.tree.diameter(leaves[0].domain) == 1
    assert unit_cylinder_leaves(point, 1) == []
    assert unit_cylinder_leaves(gold, 2)


def test_leaves_flip_symmetric_and_match_brute_force(gold):
    t = gold.tree
    for n in (1, 2, 3):
        leaves = unit_cylinder_leaves(gold, n)
        pairs = {(lf.X, lf.Y) for lf in leaves}
        assert {(y, x) for x, y in pairs} == pairs
        brute = set()
        for P in enumerate_reduced(gold.alphabet, n):
            for S in enumerate_reduced(gold.alphabet, n):
                if P[0] != S[0] and not t.intersection(gold.dom(P), gold.dom(S)).is_empty:
                    brute.add((P, S))
        assert brute == pairs
        canon = unit_cylinder_leaves(gold, n, canonical=True)
        assert 2 * len(canon) == len(leaves)


def test_diagonal_closure(gold):
    ident = bundled("SYS-ID")
    assert diagonal_closure_check(ident, unit_cylinder_leaves(ident, 3))[0]
    assert diagonal_closure_check(gold, [])[0]
    assert diagonal_closure_check(gold, unit_cylinder_leaves(gold, 4))[0]


def test_dual_membership_examples(shift, gold):
    ident = bundled("SYS-ID")
    r = dual_membership(ident, (1,), "1/2", 3)
    assert (r.status, r.u, r.w, r.length) == ("YES", (), (), 0)
    assert dual_membership(shift, (1,), "1/2", 8).status == "NO-WITNESS"
    r = dual_membership(gold, gold.parse("a.b"), "1/4", 13)
    assert r.status == "YES" and 4 * r.length < 1
    W = r.u + gold.parse("a.b") + r.w
    assert SuspensionTree(gold).translation_length(W).length == r.length


def test_dual_membership_rejects_bad_input(gold):
    with pytest.raises(InputError):
        dual_membership(gold, (1, 2), 0, 4)
    with pytest.raises(InputError):
        dual_membership(gold, (1, 2, 1), "1/2", 2)


def test_minimal_forbidden_gaps(gold, shift):
    forb = minimal_forbidden(gold, 3)
    assert forb[gold.parse("a.a")] == sqrt(5) - 2
    # bbb overshoots by 3 alpha^2 - 1
    assert forb[gold.parse("b.b.b")] == 3 * ALPHA**2 - 1 == min(forb.values())
    assert default_epsilon(gold, 3) == (7 - 3 * sqrt(5)) / 4
    assert default_epsilon(shift, 3) == default_epsilon(bundled("SYS-ID"), 3) == Fraction(1, 2)


@pytest.mark.parametrize("name", ["SYS-SHIFT", "SYS-POINT", "SYS-REFLECT", "SYS-GOLD"])
def test_forbidden_subword_bounds_translation_length(name):
    sys = bundled(name)
    T = SuspensionTree(sys)
    for w in cyclic_words(sys, 5):
        ell = T.translation_length(w).length
        for i in range(len(w)):
            for j in range(i + 1, len(w) + 1):
                u = w[i:j]
                if not sys.is_admissible(u):
                    assert ell >= T.gap(u)
