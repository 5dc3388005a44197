"""Increasing sequences of induced systems on nested subtrees ``K(1) ⊆ ... ⊆ K(m)``.

Each stage gives a suspension tree mapped onto the next one by the
length-decreasing morphism ``(u, x) -> (u, x)``; the runner tabulates
translation lengths across stages and reports how fast they approach the
host values.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .errors import BudgetError, InputError
from .heart import cyclic_words
from .laminations import laminary_closure
from .suspension import SuspensionTree
from .systems import induced_system
from .trees import ClosedSubtree
from .words import enumerate_reduced

__all__ = [
    "ApproxSequence",
    "build_sequence",
    "orbit_points",
    "orbit_stages",
    "forward_orbit",
    "length_table",
    "LengthTable",
    "convergence_report",
    "ConvergenceReport",
    "composition_coherent",
]


@dataclass
class ApproxSequence:
    host: object
    subtrees: list
    stages: list
    skipped: list = field(default_factory=list)  # (index, reason)

    def __post_init__(self):
        self._T = {}

    def tree_of(self, i):
        T = self._T.get(i)
        if T is None:
            T = self._T[i] = SuspensionTree(self.stages[i])
        return T

    @property
    def host_tree(self):
        T = self._T.get("host")
        if T is None:
            T = self._T["host"] = SuspensionTree(self.host)
        return T


def build_sequence(host, subtrees):
    """Induced systems on the nested subtrees; leading stages with an empty generator are skipped."""
    subtrees = list(subtrees)
    if not subtrees:
        raise InputError("need at least one stage")
    t = host.tree
    for i, S in enumerate(subtrees):
        if S.is_empty:
            raise InputError(f"stage {i} is empty")
        if not t.is_subset(S, host.core):
            raise InputError(f"stage {i} is not contained in K")
        if i and not t.is_subset(subtrees[i - 1], S):
            raise InputError(f"stages {i - 1} and {i} are not nested")
    stages, kept, skipped = [], [], []
    for i, S in enumerate(subtrees):
        try:
            sys_i = induced_system(host, S, name=f"{host.name}|K({i + 1})")
        except InputError as exc:
            if stages:
                raise
            skipped.append((i, str(exc)))
            continue
        stages.append(sys_i)
        kept.append(S)
    if not stages:
        raise InputError("every stage has an empty induced generator")
    return ApproxSequence(host, kept, stages, skipped)


def orbit_points(sys, x0, count):
    """The first ``count`` distinct points of the orbit of ``x0``, breadth first."""
    seen = [x0]
    frontier = [x0]
    letters = sys.alphabet.letters()
    while frontier and len(seen) < count:
        nxt = []
        for x in frontier:
            for z in letters:
                y = sys.gen(z).apply(x)
                if y is not None and y not in seen:
                    seen.append(y)
                    nxt.append(y)
                    if len(seen) == count:
                        return seen
        frontier = nxt
    return seen


def forward_orbit(sys, x0, count):
    """Iterate the first positive generator defined at the current point.

    For an interval exchange this is the exchange map itself.
    """
    pts = [x0]
    gens = sys.generators
    while len(pts) < count:
        y = next((g.apply(pts[-1]) for g in gens if g.apply(pts[-1]) is not None), None)
        if y is None or y in pts:
            break
        pts.append(y)
    return pts


def orbit_stages(sys, x0, sizes, close_with_core=True, forward=True):
    """Hulls of growing orbit prefixes, deduplicated, optionally ending with K."""
    t = sys.tree
    pts = (forward_orbit if forward else orbit_points)(sys, x0, max(sizes))
    out = []
    for m in sizes:
        S = t.hull(pts[:m])
        if not out or S != out[-1]:
            out.append(S)
    if close_with_core and (not out or not t.same(out[-1], sys.core)):
        out.append(sys.core)
    return out


@dataclass
class LengthTable:
    words: list
    cells: list  # rows of per-stage values, None for a cell over budget
    host: list

    def row_monotone(self, r):
        vals = [v for v in self.cells[r] if v is not None]
        return all(a >= b for a, b in zip(vals, vals[1:])) and all(v >= self.host[r] for v in vals)

    def ends_at_host(self, r):
        return self.cells[r][-1] == self.host[r]

    def to_rows(self, fmt):
        for w, row, h in zip(self.words, self.cells, self.host):
            yield [fmt(w)] + ["" if v is None else str(v) for v in row] + [str(h)]


def length_table(seq, words, budget=None):
    words = [tuple(w) for w in words]
    cells, host = [], []
    for w in words:
        row = []
        for i in range(len(seq.stages)):
            try:
                # the chain walk for w and w^2 crosses 2|w| copies
                if budget is not None and 2 * len(w) > budget:
                    raise BudgetError(f"word {w} needs {2 * len(w)} copies", required=2 * len(w))
                row.append(seq.tree_of(i).translation_length(w).length)
            except BudgetError:
                row.append(None)
        cells.append(row)
        host.append(seq.host_tree.translation_length(w).length)
    return LengthTable(words, cells, host)


@dataclass
class ConvergenceReport:
    gaps: list  # per-stage max of stage length minus host length
    non_increasing: bool
    final: object
    empty_laminations: list  # stage indices whose closure at the tested depth is empty


def convergence_report(seq, wordlen, lamination_depth=2):
    words = list(cyclic_words(seq.host, wordlen))
    table = length_table(seq, words)
    gaps = []
    for i in range(len(seq.stages)):
        gaps.append(max(row[i] - h for row, h in zip(table.cells, table.host)))
    empty = [
        i for i, s in enumerate(seq.stages) if not laminary_closure(s, lamination_depth, lamination_depth).words
    ]
    mono = all(a >= b for a, b in zip(gaps, gaps[1:]))
    return ConvergenceReport(gaps, mono, gaps[-1], empty)


def composition_coherent(seq, n, m, k, R=2, samples=100, seed=0):
    """Check ``j_{k,m} ∘ j_{m,n} = j_{k,n}`` for ``n <= m <= k`` on sampled points of ``T_{K(n)}``."""
    if not n <= m <= k < len(seq.stages):
        raise InputError("need n <= m <= k among the stage indices")
    rng = random.Random(seed)
    small = seq.stages[n]
    Tn, Tm, Tk = seq.tree_of(n), seq.tree_of(m), seq.tree_of(k)
    words = [w for r in range(R + 1) for w in enumerate_reduced(small.alphabet, r)]
    pts = list(small.core.points) + [p for p in small.tree.vertex_points() if small.in_core(p)]
    for _ in range(samples):
        p = Tn._canon(rng.choice(words), rng.choice(pts))
        q = Tm._canon(p.word, p.x)
        if Tk._canon(q.word, q.x) != Tk._canon(p.word, p.x):
            return False
    return True
