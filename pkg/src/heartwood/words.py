"""Freely reduced words over A^{+-1} and one-sided infinite words.

Letters are small nonzero integers: ``i`` is the i-th generator (1-based)
and ``-i`` its inverse.  A word is a plain tuple of letters.  The text form
joins letter names with dots, writes inverses in upper case and uses ``1``
for the empty word, e.g. ``a.b.A.B``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .errors import DepthError, InputError

__all__ = [
    "Alphabet",
    "reduce",
    "inverse",
    "is_reduced",
    "is_cyclically_reduced",
    "enumerate_reduced",
    "cyclic_reduce",
    "chop",
    "InfiniteWordGen",
    "periodic",
    "substitution_fixed_point",
    "explicit",
    "fib_gen",
    "BiinfiniteWord",
    "shift",
]


class Alphabet:
    """Generator names ``a_1 .. a_N`` (lower case) with upper-case inverses."""

    def __init__(self, names: Sequence[str]):
        names = list(names)
        if not names:
            raise InputError("an alphabet needs at least one generator")
        if len(set(names)) != len(names):
            raise InputError(f"duplicate generator names in {names}")
        for name in names:
            if not name or not name.isalpha() or name != name.lower():
                raise InputError(f"generator names must be lower-case letters, got {name!r}")
        self.names = names
        self._code = {n: i + 1 for i, n in enumerate(names)}
        self._code.update({n.upper(): -(i + 1) for i, n in enumerate(names)})

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self):
        return hash(tuple(self.names))

    def __repr__(self):
        return f"Alphabet({self.names})"

    @property
    def rank(self):
        return len(self.names)

    def letters(self, positive_only=False):
        """Letters in enumeration order: a_1..a_N, then their inverses."""
        pos = list(range(1, self.rank + 1))
        return pos if positive_only else pos + [-i for i in pos]

    def code(self, name):
        try:
            return self._code[name]
        except KeyError:
            raise InputError(f"unknown letter {name!r}") from None

    def name(self, letter):
        if letter == 0 or abs(letter) > self.rank:
            raise InputError(f"unknown letter code {letter}")
        n = self.names[abs(letter) - 1]
        return n if letter > 0 else n.upper()

    def parse(self, text):
        """Parse ``a.b.A`` (or ``abA`` for one-character names); ``1`` is empty."""
        text = text.strip()
        if text in ("", "1"):
            return ()
        if "." in text:
            parts = text.split(".")
        elif all(len(n) == 1 for n in self.names):
            parts = list(text)
        else:
            parts = [text]
        return tuple(self.code(p) for p in parts)

    def format(self, word):
        return ".".join(self.name(x) for x in word) if word else "1"

    def check(self, letters):
        for x in letters:
            if not isinstance(x, int) or x == 0 or abs(x) > self.rank:
                raise InputError(f"unknown letter {x!r}")


def reduce(letters, alphabet=None):
    """Freely reduce a letter sequence (stack cancellation)."""
    if alphabet is not None:
        alphabet.check(letters)
    out = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(word):
    return tuple(-x for x in reversed(word))


def is_reduced(word):
    return all(x != -y for x, y in zip(word, word[1:]))


def is_cyclically_reduced(word):
    return is_reduced(word) and (len(word) < 2 or word[0] != -word[-1])


def enumerate_reduced(alphabet, n, first=None, positive_only=False) -> Iterator[tuple]:
    """All reduced words of length exactly ``n`` in lexicographic order.

    ``first`` restricts the stream to one leading letter, which lets callers
    shard an enumeration across workers.
    """
    if n < 0:
        raise InputError("length must be nonnegative")
    letters = alphabet.letters(positive_only)
    if n == 0:
        if first is None:
            yield ()
        return
    starts = letters if first is None else [first]

    def extend(word):
        if len(word) == n:
            yield tuple(word)
            return
        for x in letters:
            if x != -word[-1]:
                word.append(x)
                yield from extend(word)
                word.pop()

    for x in starts:
        yield from extend([x])


def cyclic_reduce(word):
    """Split ``word = u . core . u^-1`` with ``core`` cyclically reduced."""
    i, j = 0, len(word)
    while j - i >= 2 and word[i] == -word[j - 1]:
        i += 1
        j -= 1
    return tuple(word[:i]), tuple(word[i:j])


def chop(v, k):
    """``v`` with its first and last ``k`` letters removed."""
    if k < 0 or len(v) < 2 * k:
        raise InputError(f"cannot chop {k} letters from each end of a word of length {len(v)}")
    return tuple(v[k : len(v) - k])


class InfiniteWordGen:
    """A deterministic producer of prefixes of a one-sided infinite reduced word."""

    def __init__(self, producer: Callable[[int], tuple], kind: str, label: str = ""):
        self._producer = producer
        self.kind = kind
        self.label = label
        self._cache = ()

    def prefix(self, n):
        if n < 0:
            raise InputError("negative prefix length")
        if len(self._cache) < n:
            self._cache = tuple(self._producer(max(n, 2 * len(self._cache))))
        out = self._cache[:n]
        if len(out) < n:
            raise DepthError(f"{self.kind} word {self.label!r} has no prefix of length {n}")
        return out

    def letter(self, i):
        """The i-th letter, 1-based."""
        return self.prefix(i)[i - 1]

    def __repr__(self):
        return f"InfiniteWordGen({self.kind}, {self.label!r})"


def periodic(word):
    """``word^infinity``; ``word`` must be nonempty and cyclically reduced."""
    word = tuple(word)
    if not word or not is_cyclically_reduced(word):
        raise InputError("periodic words need a nonempty cyclically reduced period")
    return InfiniteWordGen(lambda n: (word * (n // len(word) + 1))[:n], "periodic", str(word))


def explicit(letters):
    """A finite list viewed as an infinite word; deeper prefixes raise DepthError."""
    letters = tuple(letters)
    if not is_reduced(letters):
        raise InputError("explicit words must be reduced")
    return InfiniteWordGen(lambda n: letters[:n], "explicit", str(letters))


def substitution_fixed_point(rules, start):
    """Fixed point of a letter substitution beginning with ``start``.

    ``rules`` maps each letter to its image; ``rules[start]`` must begin with
    ``start`` and be longer than one letter.
    """
    img = {x: tuple(w) for x, w in rules.items()}
    if not img[start] or img[start][0] != start or len(img[start]) < 2:
        raise InputError("the start letter must be a prefix of its own image")

    def produce(n):
        w = (start,)
        while len(w) < n:
            w = tuple(itertools.chain.from_iterable(img[x] for x in w))
        return w[:n]

    return InfiniteWordGen(produce, "substitution", str(rules))


def fib_gen(alphabet, a="a", b="b"):
    """Fibonacci word: fixed point of ``b -> ba, a -> b``, i.e. ``babbabab...``."""
    ca, cb = alphabet.code(a), alphabet.code(b)
    if ca <= 0 or cb <= 0:
        raise InputError("fib_gen needs two positive letters")
    gen = substitution_fixed_point({cb: (cb, ca), ca: (cb,)}, cb)
    gen.label = f"fib({a},{b})"
    return gen


@dataclass(frozen=True)
class BiinfiniteWord:
    """``Z = (Z^-)^{-1} . Z^+``; the letter of index 1 is ``Z^+_1``."""

    negative: InfiniteWordGen
    positive: InfiniteWordGen

    def __post_init__(self):
        if self.negative.letter(1) == self.positive.letter(1):
            raise InputError("the two halves must start with distinct letters")

    def window(self, left, right):
        """Letters of indices ``-left+1 .. right`` (index 1 is the first positive letter)."""
        return inverse(self.negative.prefix(left)) + self.positive.prefix(right)

    def same_as(self, other, depth):
        return self.negative.prefix(depth) == other.negative.prefix(depth) and self.positive.prefix(
            depth
        ) == other.positive.prefix(depth)


def _shift_once(Z, forward):
    neg, pos = (Z.negative, Z.positive) if forward else (Z.positive, Z.negative)
    # X^-1 . Y  ->  X^-1 Y_1 . (Y_1^-1 Y): the new negative half is Y_1^-1 X
    def new_neg(n):
        return (-pos.letter(1),) + neg.prefix(n - 1) if n else ()

    def new_pos(n):
        return pos.prefix(n + 1)[1:]

    a = InfiniteWordGen(new_neg, "shifted", neg.label)
    b = InfiniteWordGen(new_pos, "shifted", pos.label)
    return BiinfiniteWord(a, b) if forward else BiinfiniteWord(b, a)


def shift(Z, steps):
    """Move the index-1 marker ``steps`` letters to the right (left if negative)."""
    for _ in range(abs(steps)):
        Z = _shift_once(Z, steps > 0)
    return Z
