"""Acceptance criteria, one test each.

Every test records a one-line PASS/FAIL verdict (shown in the terminal
summary) before asserting, so a failing criterion still reports what it
measured.
"""

import pytest

from heartwood import BUNDLED_NAMES, bundled, golden, periodic
from heartwood.approx import build_sequence, convergence_report, length_table, orbit_stages
from heartwood.heart import (
    cyclic_words,
    heart_approx,
    limit_set_approx,
    pieces_refine,
    qk_eval,
    ray_is_nested,
    theorem_audit,
)
from heartwood.io import parse_system, serialize_system, systems_equal
from heartwood.laminations import closure_chain, default_epsilon, dual_membership
from heartwood.oracles import IntervalMap
from heartwood.suspension import SuspensionTree, build_ball, path_ball
from heartwood.systems import independent_generators_probe
from heartwood.trees import EMPTY
from heartwood.words import enumerate_reduced

from conftest import record

ALPHA = golden()
MAX_LEN = {"SYS-SHIFT": 8, "SYS-POINT": 8, "SYS-REFLECT": 8, "SYS-ID": 6, "SYS-GOLD": 6}


@pytest.fixture(scope="module")
def path_balls():
    """One sub-ball per maximal word, spanned by that word's prefix copies."""
    out = {}
    for name, n in MAX_LEN.items():
        sys = bundled(name)
        T = SuspensionTree(sys)
        out[name] = (sys, T, {w: path_ball(sys, [w], T=T) for w in enumerate_reduced(sys.alphabet, n)})
    return out


def _ball_dom(ball, w):
    host = ball.host
    S = ball.copy_subtree(())
    for i in range(1, len(w) + 1):
        S = host.intersection(S, ball.copy_subtree(w[:i]))
        if S.is_empty:
            return EMPTY
    return ball.sys.tree.hull(ball.pull_back(p) for p in S.points)


def test_criterion_01_domains_match_translate_intersections(path_balls):
    checked, bad = 0, []
    for name in ("SYS-SHIFT", "SYS-POINT", "SYS-REFLECT", "SYS-GOLD"):
        sys, _, balls = path_balls[name]
        t = sys.tree
        seen = set()
        for W, ball in balls.items():
            for i in range(1, len(W) + 1):
                w = W[:i]
                if w in seen:
                    continue
                seen.add(w)
                checked += 1
                if not t.same(_ball_dom(ball, w), sys.dom(w)):
                    bad.append((name, sys.format(w)))
    ok = record(1, not bad, f"{checked} words, {len(bad)} mismatches between pullback and ball intersection")
    assert ok, bad[:5]


def test_criterion_02_bridges_covered_by_prefix_copies(path_balls):
    checked, bad = 0, []
    for name in BUNDLED_NAMES:
        sys, T, balls = path_balls[name]
        seen = set()
        for W, ball in balls.items():
            host = ball.host
            for i in range(1, min(len(W), 6) + 1):
                w = W[:i]
                if w in seen or sys.is_admissible(w):
                    continue
                seen.add(w)
                checked += 1
                b = T.bridge_to_translate(w)
                hs, he = ball.embed(T.base(b.start)), ball.embed(b.end)
                copies = [ball.copy_subtree(w[:j]) for j in range(len(w) + 1)]
                arc = host.geodesic(hs, he)
                # copy boundaries are host vertices, so each arc piece lies in one copy
                covered = all(
                    any(host.contains(C, p) and host.contains(C, q) for C in copies) for p, q in zip(arc, arc[1:])
                )
                segment = host.hull([hs, he])
                meets = all(not host.intersection(segment, C).is_empty for C in copies)
                exact = host.distance(hs, he) == b.length
                if not (covered and meets and exact):
                    bad.append((name, sys.format(w), covered, meets, exact))
    ok = record(2, not bad, f"{checked} non-admissible words, {len(bad)} bridges not covered or missing a prefix copy")
    assert ok, bad[:5]


def test_criterion_03_axis_witnesses_and_bridge_growth():
    checked, telescoped, bad = 0, 0, []
    for name in BUNDLED_NAMES:
        sys = bundled(name)
        T = SuspensionTree(sys)
        for w in cyclic_words(sys, 6):
            checked += 1
            tl = T.translation_length(w)
            x = T.base(tl.witness)
            wx = T.act(w, x)
            if tl.kind == "HYPERBOLIC":
                ok = tl.length.sign() > 0 and T.distance(x, wx) == tl.length
            else:
                ok = tl.length == 0 and wx == x
            ok = ok and sys.in_core(tl.witness)
            for k in (2, 3):
                g1, g2 = T.gap(w * k), T.gap(w * (2 * k))
                ok = ok and g2 <= 2 * k * tl.length
                if tl.kind == "HYPERBOLIC" and g1.sign() > 0:
                    telescoped += 1
                    ok = ok and g2 - g1 == k * tl.length
                if tl.kind == "ELLIPTIC":
                    ok = ok and g2 == 0
            if not ok:
                bad.append((name, sys.format(w)))
    ok = record(
        3, not bad, f"{checked} cyclic words, {telescoped} telescoping checks d(K,w^2kK)-d(K,w^kK)=k||w||, {len(bad)} failures"
    )
    assert ok, bad[:5]


def test_criterion_04_specific_lengths():
    want = {"SYS-SHIFT": 1, "SYS-POINT": 1, "SYS-REFLECT": 0, "SYS-ID": 0}
    got = {name: SuspensionTree(bundled(name)).translation_length((1,)).length for name in want}
    ok = record(4, got == want, " ".join(f"{n}:||a||={v}" for n, v in got.items()))
    assert ok, got


def test_criterion_05_sturmian_complexity():
    gold = bundled("SYS-GOLD")
    oracle = IntervalMap.from_iet([1 - ALPHA, ALPHA], [1, 0])
    counts = [sum(1 for w, _ in gold.iter_admissible(n, True) if len(w) == n) for n in range(1, 13)]
    brute = [oracle.admissible_count(n) for n in range(1, 13)]
    ok = record(5, counts == brute == [n + 1 for n in range(1, 13)], f"counts n=1..12: {counts}")
    assert ok, (counts, brute)


def test_criterion_06_dual_words_lie_in_the_closure():
    search_len, depth, k_max = 8, 4, 4
    yes, bad, notes = 0, [], []
    for name in BUNDLED_NAMES:
        sys = bundled(name)
        T = SuspensionTree(sys)
        eps = default_epsilon(sys, search_len, T)
        chain = closure_chain(sys, depth, k_max)
        k = chain.stabilized_at if chain.stabilized_at is not None else k_max
        closure = chain.slices[k]
        n_yes = 0
        for m in range(1, depth + 1):
            for v in enumerate_reduced(sys.alphabet, m):
                r = dual_membership(sys, v, eps, search_len, T)
                if r.status == "YES":
                    n_yes += 1
                    if v not in closure:
                        bad.append((name, sys.format(v)))
        yes += n_yes
        notes.append(f"{name}:k={k},yes={n_yes}")
    ok = record(6, not bad, f"{yes} YES words, {len(bad)} outside the closure ({' '.join(notes)})")
    assert ok, bad[:5]


def test_criterion_07_monotone_approximation():
    gold = bundled("SYS-GOLD")
    seq = build_sequence(gold, orbit_stages(gold, gold.tree.along(0), (2, 4, 9)))
    words = list(cyclic_words(gold, 4))
    tab = length_table(seq, words)
    rows_ok = all(tab.row_monotone(r) and tab.ends_at_host(r) for r in range(len(words)))
    rep = convergence_report(seq, 4)
    decreasing = all(a > b for a, b in zip(rep.gaps, rep.gaps[1:]))
    ok = record(
        7,
        len(seq.stages) == 4 and rows_ok and decreasing,
        f"{len(seq.stages)} stages, {len(words)} rows monotone={rows_ok}, gaps {[str(g) for g in rep.gaps]}",
    )
    assert ok


def test_criterion_08_ray_on_point_system():
    point = bundled("SYS-POINT")
    T = SuspensionTree(point)
    s = qk_eval(point, periodic((1,)), 6, T)
    certs = all((i, i + 2) in s.certificates for i in range(1, 5))
    dists = s.distances
    ok = record(
        8,
        s.kind == "RAY" and certs and dists == list(range(1, 7)),
        f"status {s.kind}, d(Q,Q_i) for i=1..6 = {[str(d) for d in dists]} (want 1..6), "
        f"(i,i+2) certificates={certs}, nested={ray_is_nested(T, s)}",
    )
    assert ok


def test_criterion_09_independent_generator_probes():
    ident = independent_generators_probe(bundled("SYS-ID"), 5)
    refl = independent_generators_probe(bundled("SYS-REFLECT"), 4)
    gold = independent_generators_probe(bundled("SYS-GOLD"), 20)
    fails = ident.verdict == "FAILS" and refl.verdict == "FAILS"
    bound = gold.verdict == "UNDECIDED" and gold.max_diameter <= ALPHA**8
    ok = record(
        9,
        fails and bound,
        f"SYS-ID {ident.verdict} {ident.certificate}, SYS-REFLECT {refl.verdict} {refl.certificate}, "
        f"SYS-GOLD {gold.verdict} max diameter {gold.max_diameter} ~ {float(gold.max_diameter):.4f} "
        f"vs alpha^8 ~ {float(ALPHA**8):.4f}",
    )
    assert ok


def test_criterion_10_heart_and_audit():
    refine_bad = []
    for name in BUNDLED_NAMES:
        sys = bundled(name)
        prev = limit_set_approx(sys, 1)
        for n in range(2, 9):
            cur = limit_set_approx(sys, n)
            if not pieces_refine(sys, prev, cur):
                refine_bad.append((name, n))
            prev = cur
    gold = bundled("SYS-GOLD")
    t = gold.tree
    H = heart_approx(gold, 8).subtree
    inner = t.hull([t.along(ALPHA**4), t.along(1 - ALPHA**4)])
    heart_ok = t.is_subset(inner, H)
    violations = {}
    for name in BUNDLED_NAMES:
        sys = bundled(name)
        n = 6 if name == "SYS-GOLD" else 4
        violations[name] = len(theorem_audit(sys, sys.core, n, 2).violations)
    small = theorem_audit(gold, t.hull([t.along(0), t.along(ALPHA**4)]), 6, 2)
    witness = not small.cond3 and small.cond3_witness is not None
    ok = record(
        10,
        not refine_bad and heart_ok and not any(violations.values()) and witness,
        f"refinement failures {refine_bad}, heart contains [a^4,1-a^4]={heart_ok}, "
        f"K'=K violations {sum(violations.values())}, COND3 witness {small.cond3_witness.points if witness else None}",
    )
    assert ok


def test_criterion_11_round_trip_and_four_point():
    trips = {name: systems_equal(bundled(name), parse_system(serialize_system(bundled(name)))) for name in BUNDLED_NAMES}
    radius = {"SYS-SHIFT": 4, "SYS-POINT": 4, "SYS-ID": 4, "SYS-REFLECT": 4, "SYS-GOLD": 2}
    bad = {name: build_ball(bundled(name), R).four_point_violations(samples=10_000) for name, R in radius.items()}
    ok = record(
        11,
        all(trips.values()) and not any(bad.values()),
        f"round trips {sum(trips.values())}/{len(trips)}, four-point violations over 10^4 samples per ball: {bad}",
    )
    assert ok
