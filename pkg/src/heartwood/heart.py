"""Finite-depth evaluation of ``Q_K``, the limit set, the heart, and audits."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import InputError
from .laminations import default_epsilon, laminary_closure, dual_membership, unit_cylinder_leaves
from .scalars import ExactScalar
from .suspension import HostPoint, SuspensionTree
from .systems import induced_system
from .trees import EMPTY, ClosedSubtree
from .words import enumerate_reduced, is_cyclically_reduced

__all__ = [
    "QkStatus",
    "qk_eval",
    "limit_set_approx",
    "HeartApprox",
    "heart_approx",
    "AuditReport",
    "theorem_audit",
    "GeometricProbe",
    "geometric_probe",
]

ZERO = ExactScalar(0)


@dataclass
class QkStatus:
    """One of ``ADMISSIBLE``, ``RAY`` or ``EVENTUALLY_ADMISSIBLE`` at depth ``n``.

    ADMISSIBLE carries ``domain = dom(X_n)`` and its diameter.  RAY carries
    the bridge start ``base`` in K, the convergents ``ray[i-1] = Q_i`` (the
    point of ``X_i K`` nearest to ``base``), their distances from ``base``
    and the gap certificates ``(i, j)`` with ``X_[i+1, j]`` non-admissible.
    EVENTUALLY_ADMISSIBLE carries the least split ``split`` whose tail stays
    admissible, the tail domain, and ``points``: the tail domain's
    extremals carried into the copy ``X_split K``.
    """

    kind: str
    depth: int
    domain: ClosedSubtree = EMPTY
    diameter: Optional[ExactScalar] = None
    dead_index: Optional[int] = None
    base: Optional[HostPoint] = None
    ray: list = field(default_factory=list)
    distances: list = field(default_factory=list)
    certificates: list = field(default_factory=list)
    split: Optional[int] = None
    tail_domain: ClosedSubtree = EMPTY
    points: list = field(default_factory=list)


def _first_dead(sys, word):
    for j in range(1, len(word) + 1):
        if not sys.is_admissible(word[:j]):
            return j
    return None


def qk_eval(sys, X, n, T=None):
    """Classify the infinite word ``X`` from its prefix of length ``n``.

    A tail counts as admissible only if it is at least half the prefix
    long, so that a short admissible tail does not mask a ray.
    """
    if n < 1:
        raise InputError("n must be at least 1")
    t = sys.tree
    word = X.prefix(n)
    dead = _first_dead(sys, word)
    if dead is None:
        D = sys.dom(word)
        return QkStatus("ADMISSIBLE", n, domain=D, diameter=t.diameter(D))
    T = T or SuspensionTree(sys)
    min_tail = math.ceil(n / 2)
    for i in range(1, n - min_tail + 1):
        tail = word[i:]
        if sys.is_admissible(tail):
            D = sys.dom(tail)
            pts = [T._canon(word[:i], p) for p in D.points]
            return QkStatus(
                "EVENTUALLY_ADMISSIBLE", n, dead_index=dead, split=i, tail_domain=D, points=pts,
                diameter=t.diameter(D),
            )
    a, _, _ = T.copy_bridge((), word)
    ray = [T.project_to_copy(a, word[:i]) for i in range(1, n + 1)]
    certs = [(i, j) for i in range(1, n) for j in range(i + 1, n + 1) if not sys.is_admissible(word[i:j])]
    return QkStatus(
        "RAY", n, dead_index=dead, base=a, ray=ray,
        distances=[T.distance(a, q) for q in ray], certificates=certs,
    )


def ray_is_nested(T, status):
    """Do the convergents lie in order on one geodesic from the base?"""
    q, pts = status.base, status.ray
    last = pts[-1]
    total = T.distance(q, last)
    prev = ZERO
    for p, d in zip(pts, status.distances):
        if d < prev or T.distance(q, p) + T.distance(p, last) != total:
            return False
        prev = d
    return True


# --- limit set and heart ------------------------------------------------------


def limit_set_approx(sys, n):
    """Distinct nonempty ``dom(P) ∩ dom(S)`` over depth-``n`` unit-cylinder leaves."""
    pieces = {lf.domain for lf in unit_cylinder_leaves(sys, n, canonical=True)}
    return sorted(pieces, key=lambda S: [p.sort_key() for p in S.points])


def pieces_refine(sys, coarse, fine):
    t = sys.tree
    return all(any(t.is_subset(S, C) for C in coarse) for S in fine)


@dataclass
class HeartApprox:
    subtree: ClosedSubtree
    pieces: list
    empty: bool


def heart_approx(sys, n):
    pieces = limit_set_approx(sys, n)
    pts = [p for S in pieces for p in S.points]
    S = sys.tree.hull(pts) if pts else EMPTY
    return HeartApprox(S, pieces, S.is_empty)


# --- audit -----------------------------------------------------------------


@dataclass
class AuditReport:
    n: int
    k: int
    cond3: bool
    cond3_witness: Optional[ClosedSubtree]
    cond2: Optional[bool]
    cond2_witness: Optional[tuple]
    consistent: Optional[bool]
    lengths: list  # (word, length on K', length on K)
    lengths_equal: Optional[bool]
    violations: list
    note: str = ""

    def lines(self, fmt):
        out = [f"COND3 (pieces of Omega_A({self.n}) meet K'): {'holds' if self.cond3 else 'fails'}"]
        if self.cond3_witness is not None:
            out.append(f"  witness piece: {self.cond3_witness.points}")
        if self.cond2 is None:
            out.append(f"COND2: undefined ({self.note})")
        else:
            out.append(f"COND2 (dual words of length <= {self.n} in closure at k={self.k}): {'holds' if self.cond2 else 'fails'}")
            if self.cond2_witness is not None:
                out.append(f"  witness word: {fmt(self.cond2_witness)}")
            out.append(f"consistency: {'agree' if self.consistent else 'DISAGREE'}")
            out.append(f"translation lengths equal on K' and K: {self.lengths_equal}")
        out.append(f"violations: {len(self.violations)}")
        out += [f"  {v}" for v in self.violations]
        return out


def cyclic_words(sys, n):
    for m in range(1, n + 1):
        for w in enumerate_reduced(sys.alphabet, m):
            if is_cyclically_reduced(w):
                yield w


def theorem_audit(sys, Kprime: ClosedSubtree, n, k, search_len=None, strict=False):
    """Finite-depth evidence for ``L(T) ⊂ L_adm(K')`` and ``Omega_A ⊂ K'`` with ``T = T_K``.

    When some induced generator is empty on ``K'`` the closure and length
    comparisons are undefined; they are reported as such (or raise with
    ``strict``), while the limit-set condition is still evaluated.
    """
    t = sys.tree
    if not t.is_subset(Kprime, sys.core):
        raise InputError("K' is not contained in K")
    pieces = limit_set_approx(sys, n)
    cond3_witness = next((S for S in pieces if t.intersection(S, Kprime).is_empty), None)
    cond3 = cond3_witness is None
    try:
        small = induced_system(sys, Kprime)
    except InputError as exc:
        if strict:
            raise
        return AuditReport(n, k, cond3, cond3_witness, None, None, None, [], None, [], note=str(exc))

    T, Ts = SuspensionTree(sys), SuspensionTree(small)
    eps = default_epsilon(sys, n, T)
    search_len = search_len or n
    closure = laminary_closure(small, n, k)
    cond2_witness = None
    for m in range(1, n + 1):
        for v in enumerate_reduced(sys.alphabet, m):
            r = dual_membership(sys, v, eps, max(search_len, m), T)
            if r.status == "YES" and v not in closure:
                cond2_witness = v
                break
        if cond2_witness is not None:
            break
    cond2 = cond2_witness is None

    rows, violations = [], []
    for w in cyclic_words(sys, n):
        ls, lb = Ts.translation_length(w).length, T.translation_length(w).length
        rows.append((w, ls, lb))
        if ls < lb:
            violations.append(f"length increased under j: {sys.format(w)} {ls} < {lb}")
    if cond2 != cond3:
        violations.append(f"COND2={cond2} but COND3={cond3} at depth n={n}, k={k}")
    equal = all(ls == lb for _, ls, lb in rows)
    return AuditReport(n, k, cond3, cond3_witness, cond2, cond2_witness, cond2 == cond3, rows, equal, violations)


# --- geometric probe -----------------------------------------------------------


@dataclass
class GeometricProbe:
    rows: list  # (m, extremal count, branch count)
    stable_from: Optional[int]
    empty: bool


def geometric_probe(sys, n):
    if n < 1:
        raise InputError("n must be at least 1")
    rows = []
    empty = False
    for m in range(1, n + 1):
        h = heart_approx(sys, m)
        S = h.subtree
        rows.append((m, len(S.points), 0 if S.is_empty else len(sys.tree.branch_points(S))))
        empty = h.empty
    stable = None
    for i in range(len(rows)):
        if all(r[1:] == rows[i][1:] for r in rows[i:]):
            stable = rows[i][0]
            break
    return GeometricProbe(rows, stable, empty)
