"""Plain interval arithmetic for interval exchanges and translation mappings.

This is a second, deliberately naive implementation of cylinders on
``[0, L]``: no trees, no subtrees, no memoisation.  It is fed raw interval
data, not a built system, and is used to cross-check the tree machinery.
"""

from __future__ import annotations

import itertools

from .scalars import as_scalar

__all__ = ["IntervalMap"]


class IntervalMap:
    """Pieces ``[lo, hi]`` translated by ``t``; letter ``i`` (1-based) is piece ``i``."""

    def __init__(self, length, pieces):
        self.length = as_scalar(length)
        self.pieces = [(as_scalar(lo), as_scalar(hi), as_scalar(t)) for lo, hi, t in pieces]

    @classmethod
    def from_iet(cls, lengths, perm):
        lengths = [as_scalar(x) for x in lengths]
        starts = [sum(lengths[:i], as_scalar(0)) for i in range(len(lengths))]
        order = sorted(range(len(lengths)), key=lambda i: perm[i])
        target = {}
        s = as_scalar(0)
        for i in order:
            target[i] = s
            s = s + lengths[i]
        return cls(s, [(starts[i], starts[i] + lengths[i], target[i] - starts[i]) for i in range(len(lengths))])

    @classmethod
    def from_itm(cls, length, domains, translations):
        return cls(length, [(lo, hi, t) for (lo, hi), t in zip(domains, translations)])

    def _piece(self, letter):
        lo, hi, t = self.pieces[abs(letter) - 1]
        return (lo, hi, t) if letter > 0 else (lo + t, hi + t, -t)

    def cylinder(self, word):
        """``(lo, hi)`` of the points whose itinerary follows ``word``, or ``None``."""
        lo, hi, shift = as_scalar(0), self.length, as_scalar(0)
        for z in word:
            a, b, t = self._piece(z)
            lo, hi = max(lo, a), min(hi, b)
            if lo > hi:
                return None
            lo, hi, shift = lo + t, hi + t, shift + t
        return (lo - shift, hi - shift)

    def positive_words(self, n):
        return itertools.product(range(1, len(self.pieces) + 1), repeat=n)

    def admissible_count(self, n, positive_only=True):
        """Count by brute force over every word, reduced or not when positive."""
        letters = list(range(1, len(self.pieces) + 1))
        if not positive_only:
            letters += [-x for x in letters]
        count = 0
        for w in itertools.product(letters, repeat=n):
            if any(x == -y for x, y in zip(w, w[1:])):
                continue
            if self.cylinder(w) is not None:
                count += 1
        return count
