"""Bundled example systems and interval exchange / translation builders.

All bundled systems live on a segment ``[0, L]`` built by
:func:`heartwood.trees.segment`, so ``K.along(t)`` is the point at
coordinate ``t``.

=============  ==========================================================
SYS-SHIFT      K=[0,2], a: [0,1] -> [1,2], x -> x+1
SYS-POINT      K=[0,1], a: {1} -> {0}
SYS-ID         K=[0,1], a = identity
SYS-REFLECT    K=[0,2], a: x -> 2-x
SYS-GOLD       K=[0,1], a: [0,alpha^2] -> [alpha,1] (+alpha),
               b: [alpha^2,1] -> [0,alpha] (-alpha^2), alpha=(sqrt5-1)/2
=============  ==========================================================
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .scalars import ExactScalar, as_scalar, golden
from .systems import IsometrySystem, PartialIsometry
from .trees import segment

__all__ = [
    "IetSpec",
    "gen_iet",
    "gen_itm",
    "interval_regime",
    "bundled",
    "BUNDLED_NAMES",
    "EXPECTED",
]


def _names(m, letters):
    letters = list(letters) if letters else [chr(ord("a") + i) for i in range(m)]
    if len(letters) != m:
        raise InputError(f"{m} subintervals but {len(letters)} letter names")
    return letters


@dataclass(frozen=True)
class IetSpec:
    """Interval ``[0, L]`` cut into pieces of ``lengths``, reordered by ``perm``.

    ``perm[i]`` is the rank (0-based) of piece ``i`` after the exchange.
    """

    length: ExactScalar
    lengths: tuple
    perm: tuple
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "length", as_scalar(self.length))
        object.__setattr__(self, "lengths", tuple(as_scalar(x) for x in self.lengths))
        object.__setattr__(self, "perm", tuple(self.perm))
        if sorted(self.perm) != list(range(len(self.lengths))):
            raise InputError(f"{self.perm} is not a permutation of {len(self.lengths)} pieces")
        if any(x.sign() <= 0 for x in self.lengths):
            raise InputError("subinterval lengths must be positive")
        if sum(self.lengths, ExactScalar(0)) != self.length:
            raise InputError(f"subinterval lengths sum to {sum(self.lengths, ExactScalar(0))}, not {self.length}")


def gen_iet(spec: IetSpec, name=""):
    """One partial isometry per piece, sending it to its exchanged position."""
    m = len(spec.lengths)
    letters = _names(m, spec.letters)
    K = segment(spec.length)
    starts, s = [], ExactScalar(0)
    for x in spec.lengths:
        starts.append(s)
        s = s + x
    order = sorted(range(m), key=lambda i: spec.perm[i])
    targets, s = {}, ExactScalar(0)
    for i in order:
        targets[i] = s
        s = s + spec.lengths[i]
    gens = []
    for i in range(m):
        lo, hi = starts[i], starts[i] + spec.lengths[i]
        shift = targets[i] - lo
        gens.append(PartialIsometry(K, [K.along(lo), K.along(hi)], [K.along(lo + shift), K.along(hi + shift)], letters[i]))
    return IsometrySystem(K, gens, name=name or "iet")


def gen_itm(length, domains, translations, letters=None, name=""):
    """Interval translation mapping: piece ``[l, r]`` moves by ``t`` inside ``[0, length]``."""
    length = as_scalar(length)
    if not domains or len(domains) != len(translations):
        raise InputError("need one translation per domain and at least one domain")
    letters = _names(len(domains), letters)
    K = segment(length)
    gens = []
    for (lo, hi), t, name_i in zip(domains, translations, letters):
        lo, hi, t = as_scalar(lo), as_scalar(hi), as_scalar(t)
        if not (0 <= lo <= hi <= length):
            raise InputError(f"domain [{lo}, {hi}] is not inside [0, {length}]")
        if lo + t < 0 or hi + t > length:
            raise InputError(f"piece {name_i!r} translated by {t} escapes [0, {length}]")
        pts = [K.along(lo)] if lo == hi else [K.along(lo), K.along(hi)]
        imgs = [K.along(lo + t)] if lo == hi else [K.along(lo + t), K.along(hi + t)]
        gens.append(PartialIsometry(K, pts, imgs, name_i))
    return IsometrySystem(K, gens, name=name or "itm")


def _interval_union_covers(intervals, length):
    intervals = sorted(intervals)
    reach = ExactScalar(0)
    if not intervals or intervals[0][0] != 0:
        return False
    for lo, hi in intervals:
        if lo > reach:
            return False
        reach = max(reach, hi)
    return reach == length


def interval_regime(sys):
    """Classify an interval system by whether domains and images both tile K.

    Returns ``"surface"`` when both unions cover K with disjoint interiors
    (interval exchange), otherwise ``"thin"``.
    """
    t = sys.tree
    if len(t.edges) != 1:
        raise InputError("regime stamping applies to interval systems")
    u, _, length = t.edges[0]

    def coord(p):
        return t.distance(t.along(0), p)

    def spans(subtrees):
        out = []
        for S in subtrees:
            cs = sorted(coord(p) for p in S.points)
            out.append((cs[0], cs[-1]))
        return out

    def tiles(iv):
        if not _interval_union_covers(iv, length):
            return False
        iv = sorted(iv)
        return all(a[1] <= b[0] for a, b in zip(iv, iv[1:]))

    doms = spans(g.domain for g in sys.generators)
    imgs = spans(g.image for g in sys.generators)
    return "surface" if tiles(doms) and tiles(imgs) else "thin"


def _shift():
    return gen_itm(2, [(0, 1)], [1], name="SYS-SHIFT")


def _point():
    return gen_itm(1, [(1, 1)], [-1], name="SYS-POINT")


def _ident():
    return gen_itm(1, [(0, 1)], [0], name="SYS-ID")


def _reflect():
    K = segment(2)
    a = PartialIsometry(K, [K.along(0), K.along(2)], [K.along(2), K.along(0)], "a")
    return IsometrySystem(K, [a], name="SYS-REFLECT")


def _gold():
    alpha = golden()
    return gen_iet(IetSpec(1, (1 - alpha, alpha), (1, 0), ("a", "b")), name="SYS-GOLD")


_BUILDERS = {
    "SYS-SHIFT": _shift,
    "SYS-POINT": _point,
    "SYS-ID": _ident,
    "SYS-REFLECT": _reflect,
    "SYS-GOLD": _gold,
}
BUNDLED_NAMES = tuple(_BUILDERS)


def bundled(name):
    """Build one of the catalog systems by name."""
    try:
        return _BUILDERS[name.upper()]()
    except KeyError:
        raise InputError(f"unknown system {name!r}; known: {', '.join(BUNDLED_NAMES)}") from None


# Expected results per bundled system, each tagged with the oracle that
# produced it.  Translation lengths are keyed by word text.
EXPECTED = {
    "SYS-SHIFT": {
        "translation_length": {"a": ("1", "global translation of the line by 1")},
        "admissible_counts": {1: 2, 2: 2, 3: 0},
    },
    "SYS-POINT": {
        "translation_length": {"a": ("1", "copies chained at single points")},
        "admissible_counts": {1: 2, 2: 0},
    },
    "SYS-ID": {
        "translation_length": {"a": ("0", "identity fixes K")},
        "admissible_counts": {1: 2, 2: 2, 3: 2},
    },
    "SYS-REFLECT": {
        "translation_length": {"a": ("0", "reflection fixes the midpoint 1")},
        "admissible_counts": {1: 2, 2: 2, 3: 2},
    },
    "SYS-GOLD": {
        "translation_length": {"a.b": ({"a": "-2", "b": "1"}, "ab translates [0,alpha^2] by alpha^3 = sqrt5 - 2")},
        "positive_admissible_counts": {n: (n + 1) for n in range(1, 13)},
    },
}
