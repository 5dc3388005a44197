"""Admissible words, laminary closures, unit-cylinder leaves and the dual language."""

from __future__ import annotations

import itertools
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Optional

from .errors import BudgetError, InputError
from .scalars import ExactScalar, as_scalar
from .suspension import SuspensionTree, ball_size
from .trees import ClosedSubtree
from .words import chop, inverse, is_cyclically_reduced, is_reduced

__all__ = [
    "admissible_words",
    "LaminaryLanguageSlice",
    "laminary_closure",
    "closure_chain",
    "LeafPair",
    "unit_cylinder_leaves",
    "DualResult",
    "dual_membership",
    "minimal_forbidden",
    "default_epsilon",
    "diagonal_closure_check",
]


def _length_lex(w):
    return (len(w), w)


def admissible_words(sys, n, positive_only=False):
    """Reduced words of length ``1..n`` with nonempty domain, length-lex sorted."""
    if n < 1:
        raise InputError("n must be at least 1")
    return sorted((w for w, _ in sys.iter_admissible(n, positive_only)), key=_length_lex)


@dataclass(frozen=True)
class LaminaryLanguageSlice:
    """Words of length ``<= n`` kept by the depth-``k`` closure.

    ``admissible`` holds every admissible word of length ``<= n``; words in
    it but not in ``words`` are raw-admissible without surviving extension.
    """

    n: int
    k: int
    words: frozenset
    admissible: frozenset
    positive_only: bool = False

    def __contains__(self, w):
        return tuple(w) in self.words

    def __len__(self):
        return len(self.words)

    def sorted(self):
        return sorted(self.words, key=_length_lex)

    def provenance(self, w):
        w = tuple(w)
        if w in self.words:
            return "closure"
        if w in self.admissible:
            return "admissible-only"
        return "absent"

    def counts(self):
        out = {m: 0 for m in range(1, self.n + 1)}
        for w in self.words:
            out[len(w)] += 1
        return out

    def is_subword_closed(self):
        for w in self.words:
            for i, j in itertools.combinations(range(len(w) + 1), 2):
                if (i, j) != (0, len(w)) and w[i:j] not in self.words:
                    return False
        return True

    def is_inverse_closed(self):
        return all(inverse(w) in self.words for w in self.words)


def _admissible_upto(sys, m, positive_only, budget):
    if budget is not None and ball_size(sys.rank, m, positive_only) > budget:
        found = []
        for w, _ in sys.iter_admissible(m, positive_only):
            found.append(w)
            if len(found) > budget:
                raise BudgetError(
                    f"closure needs more than {budget} admissible words up to length {m}",
                    required=ball_size(sys.rank, m, positive_only),
                )
        return found
    return [w for w, _ in sys.iter_admissible(m, positive_only)]


def laminary_closure(sys, n, k, positive_only=False, budget=None, _pool=None):
    """Keep ``w`` (``|w| <= n``) iff some admissible ``v`` of length ``|w| + 2k`` chops to ``w``."""
    if n < 1 or k < 0:
        raise InputError("need n >= 1 and k >= 0")
    pool = _pool if _pool is not None else _admissible_upto(sys, n + 2 * k, positive_only, budget)
    adm = frozenset(w for w in pool if len(w) <= n)
    kept = frozenset(chop(v, k) for v in pool if 2 * k < len(v) <= n + 2 * k)
    return LaminaryLanguageSlice(n, k, kept, adm, positive_only)


@dataclass
class ClosureChain:
    slices: list
    stabilized_at: Optional[int]

    @property
    def last(self):
        return self.slices[-1]


def closure_chain(sys, n, k_max, positive_only=False, budget=None):
    """Slices for ``k = 0..k_max`` and the first ``k`` after which they stop shrinking."""
    pool = _admissible_upto(sys, n + 2 * k_max, positive_only, budget)
    slices = [laminary_closure(sys, n, k, positive_only, _pool=pool) for k in range(k_max + 1)]
    stab = None
    for k in range(1, k_max + 1):
        if slices[k].words == slices[k - 1].words:
            stab = k - 1
            break
    return ClosureChain(slices, stab)


# --- leaves ---------------------------------------------------------------


@dataclass(frozen=True)
class LeafPair:
    """Depth-``n`` prefixes of a unit-cylinder leaf ``(X, Y)``, ``X_1 != Y_1``.

    ``domain`` is ``dom(X) ∩ dom(Y)``, the outer approximation of the point
    the leaf maps to.
    """

    X: tuple
    Y: tuple
    domain: ClosedSubtree

    @property
    def depth(self):
        return len(self.X)

    def flip(self):
        return LeafPair(self.Y, self.X, self.domain)


def _letter_rank(sys):
    return {z: i for i, z in enumerate(sys.alphabet.letters())}


def unit_cylinder_leaves(sys, n, canonical=False):
    """All ordered pairs ``(P, S)`` of admissible words of length ``n`` with
    distinct first letters and ``dom(P) ∩ dom(S)`` nonempty.

    The list is flip-symmetric; ``canonical=True`` keeps one of each flip
    pair, the one whose first letter comes first in the alphabet order.
    """
    if n < 1:
        raise InputError("n must be at least 1")
    t = sys.tree
    words = [(w, f.domain) for w, f in sys.iter_admissible(n) if len(w) == n]
    rank = _letter_rank(sys)
    out = []
    cache = {}
    for (P, DP), (S, DS) in itertools.product(words, repeat=2):
        if P[0] == S[0] or (canonical and rank[P[0]] > rank[S[0]]):
            continue
        key = frozenset((DP, DS))
        D = cache.get(key)
        if D is None:
            D = cache[key] = t.intersection(DP, DS)
        if not D.is_empty:
            out.append(LeafPair(P, S, D))
    return out


def diagonal_closure_check(sys, leaves):
    """Chains ``(X, X'), (X', X'')`` whose diagonal ``(X, X'')`` is missing.

    Equal depth-``n`` prefixes do not make equal rays, so a chain counts only
    when the two leaf domains meet: then all three rays can come from one
    point.  A diagonal with common prefix ``c`` is looked up after
    translating by ``c^-1``, at the shorter depth that leaves.  Returns
    ``(ok, violations)``.
    """
    t = sys.tree
    by_first = {}
    for lf in leaves:
        by_first.setdefault(lf.X, []).append(lf)
    pairs = {(lf.X, lf.Y) for lf in leaves}
    violations = []
    for first in leaves:
        X = first.X
        for second in by_first.get(first.Y, []):
            Xpp = second.Y
            if Xpp == X or (X, Xpp) in pairs:
                continue
            if t.intersection(first.domain, second.domain).is_empty:
                continue
            c = 0
            while X[c] == Xpp[c]:
                c += 1
            m = len(X) - c
            a, b = X[c:], Xpp[c:]
            if not any(P[:m] == a and S[:m] == b for P, S in pairs):
                violations.append((X, first.Y, Xpp))
    return (not violations, violations)


# --- dual language ----------------------------------------------------------


@dataclass(frozen=True)
class DualResult:
    status: str  # "YES" or "NO-WITNESS"
    u: tuple = ()
    w: tuple = ()
    length: Optional[ExactScalar] = None
    tried: int = 0


class _GapOracle:
    """Memoised gaps ``d(K, sK)`` of non-admissible subwords."""

    def __init__(self, sys, T):
        self.sys, self.T = sys, T
        self._gap = {}

    def gap(self, s):
        g = self._gap.get(s)
        if g is None:
            g = self._gap[s] = ExactScalar(0) if self.sys.is_admissible(s) else self.T.gap(s)
        return g

    def blocked_at_edge(self, word, left, eps):
        """Does some subword touching the ``left``/right end have gap ``>= eps``?"""
        n = len(word)
        for m in range(1, n + 1):
            s = word[:m] if left else word[n - m :]
            if self.sys.is_admissible(s):
                continue
            return self.gap(s) >= eps
        return False


def dual_membership(sys, v, eps, search_len, T=None):
    """Search ``u, w`` with ``u.v.w`` reduced, cyclically reduced and ``||u v w|| < eps``.

    Candidates are tried by total length, then by ``|u|``, then
    lexicographically.  A candidate containing a non-admissible subword of
    gap at least ``eps`` is pruned with all its extensions, since that gap
    bounds the translation length from below.
    """
    v = tuple(v)
    sys.check_word(v)
    eps = as_scalar(eps)
    if eps.sign() <= 0:
        raise InputError("eps must be positive")
    if search_len < len(v):
        raise InputError("search_len must be at least |v|")
    T = T or SuspensionTree(sys)
    oracle = _GapOracle(sys, T)
    letters = sys.alphabet.letters()
    tried = 0

    def blocked(word):
        # a minimal non-admissible subword starting anywhere
        for i in range(len(word)):
            if oracle.blocked_at_edge(word[i:], True, eps):
                return True
        return False

    if v and blocked(v):
        return DualResult("NO-WITNESS", tried=0)

    def lefts(word, need):
        if need == 0:
            yield word
            return
        for z in letters:
            if word and z == -word[0]:
                continue
            cand = (z,) + word
            if oracle.blocked_at_edge(cand, True, eps):
                continue
            yield from lefts(cand, need - 1)

    def rights(word, need):
        if need == 0:
            yield word
            return
        for z in letters:
            if word and z == -word[-1]:
                continue
            cand = word + (z,)
            if oracle.blocked_at_edge(cand, False, eps):
                continue
            yield from rights(cand, need - 1)

    for L in range(max(len(v), 1), search_len + 1):
        extra = L - len(v)
        for i in range(extra + 1):
            for left in lefts(v, i):
                for W in rights(left, extra - i):
                    if not is_cyclically_reduced(W):
                        continue
                    tried += 1
                    tl = T.translation_length(W)
                    if tl.length < eps:
                        return DualResult("YES", W[:i], W[i + len(v) :], tl.length, tried)
    return DualResult("NO-WITNESS", tried=tried)


def minimal_forbidden(sys, max_len, T=None):
    """Minimal non-admissible words up to ``max_len`` with their gaps ``d(K, wK)``."""
    T = T or SuspensionTree(sys)
    letters = sys.alphabet.letters()
    adm = [w for w, _ in sys.iter_admissible(max_len - 1)] if max_len > 1 else []
    out = {}
    for w in [()] + adm:
        for z in letters:
            if w and z == -w[-1]:
                continue
            c = w + (z,)
            if len(c) > max_len or sys.is_admissible(c):
                continue
            if len(c) == 1 or sys.is_admissible(c[1:]):
                out[c] = T.gap(c)
    return dict(sorted(out.items(), key=lambda kv: _length_lex(kv[0])))


def default_epsilon(sys, max_len, T=None):
    """Half the smallest gap of a minimal forbidden word; ``1/2`` if there is none."""
    gaps = minimal_forbidden(sys, max_len, T).values()
    return min(gaps) / 2 if gaps else ExactScalar(Fraction(1, 2))
