"""Words over the two-letter alphabet {x, y} with exact rational arithmetic.

A word is a plain ``str`` over ``"xy"``; the empty string is the unit of the
algebra.  Words ending in ``y`` factor uniquely into blocks ``z_l = x^(l-1) y``
and thereby encode compositions ``(l_1, ..., l_n)`` of positive integers
(weight = sum of parts = letter count, depth = number of parts = y-count).
``WordSum`` is a finite Q-linear combination of words and carries the two
classical commutative products:

* the harmonic (quasi-shuffle) product, by the block recursion
  ``z_k w1 * z_l w2 = z_k(w1 * z_l w2) + z_l(z_k w1 * w2) + z_{k+l}(w1 * w2)``,
* the shuffle product, by the letter recursion
  ``a w1 sh b w2 = a(w1 sh b w2) + b(a w1 sh w2)``.

Coefficients are :class:`fractions.Fraction` throughout; no floating point
enters this module.  The word-pair kernels of both products are memoised up to
a configurable total weight, since the recursions re-derive identical
subproblems exponentially often.  All values are immutable and the operations
are pure, so everything here is safe to call concurrently; the memo tables are
idempotent caches.
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter
from fractions import Fraction
from typing import Iterator

X = "x"
Y = "y"

#: compositions are plain tuples of positive ints
Composition = tuple


# ---------------------------------------------------------------------------
# predicates and conversions


def in_h1(w: str) -> bool:
    """Membership in Q + h*y: the empty word, or final letter y."""
    return w == "" or w[-1] == Y


def is_admissible_word(w: str) -> bool:
    """Membership in Q + x*h*y: the empty word, or first letter x and final y."""
    return w == "" or (w[0] == X and w[-1] == Y)


def word_key(w: str) -> tuple[int, str]:
    """Graded-lexicographic sort key with x < y."""
    return (len(w), w)


def z_word(l: int) -> str:
    """The block z_l = x^(l-1) y."""
    if l < 1:
        raise ValueError("z_l needs l >= 1, got %r" % (l,))
    return X * (l - 1) + Y


def check_composition(c: Composition) -> None:
    if not c or any(int(p) != p or p < 1 for p in c):
        raise ValueError("composition must be a nonempty tuple of positive integers: %r" % (c,))


def is_admissible_composition(c: Composition) -> bool:
    """First part at least 2 (convergent index)."""
    return c[0] >= 2


def composition_to_word(c: Composition) -> str:
    """z_{l_1} ... z_{l_n} for c = (l_1, ..., l_n)."""
    check_composition(c)
    return "".join(z_word(l) for l in c)


def word_to_composition(w: str) -> Composition:
    """Inverse of :func:`composition_to_word`; rejects words not ending in y."""
    if not w or not in_h1(w):
        raise ValueError("only nonempty words ending in y encode compositions: %r" % (w,))
    if set(w) - {X, Y}:
        raise ValueError("word contains letters outside {x, y}: %r" % (w,))
    return tuple(len(block) + 1 for block in w.split(Y)[:-1])


def reverse_composition(c: Composition) -> Composition:
    check_composition(c)
    return tuple(reversed(c))


def dual_composition(c: Composition) -> Composition:
    """The duality involution: reverse the word of c and swap x with y.

    Defined for admissible c only (the first block must provide an x).
    Weight is preserved and depth(dual) = weight - depth.
    """
    check_composition(c)
    if not is_admissible_composition(c):
        raise ValueError("dual needs an admissible composition, got %r" % (c,))
    w = composition_to_word(c)
    swapped = w[::-1].translate(str.maketrans(X + Y, Y + X))
    return word_to_composition(swapped)


def compositions(total: int, depth: int | None = None) -> Iterator[Composition]:
    """All compositions of ``total`` into positive parts, optionally of fixed
    depth, in lexicographic order of the corresponding words."""
    if total < 1:
        return
    found = []
    for cuts in itertools.chain.from_iterable(
        itertools.combinations(range(1, total), k) for k in range(total)
    ):
        bounds = (0,) + cuts + (total,)
        c = tuple(bounds[i + 1] - bounds[i] for i in range(len(bounds) - 1))
        if depth is None or len(c) == depth:
            found.append(c)
    found.sort(key=lambda c: composition_to_word(c))
    yield from found


@functools.cache
def admissible_compositions(total: int) -> tuple[Composition, ...]:
    """Admissible compositions of ``total`` in canonical (word-lex) order."""
    if total < 2:
        return ()
    return tuple(c for c in compositions(total) if is_admissible_composition(c))


# ---------------------------------------------------------------------------
# linear combinations


def _coerce(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class WordSum:
    """Sparse Q-linear combination of words; zero coefficients are dropped.

    Instances are treated as immutable; iteration order is the graded
    lexicographic order on words.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data: dict[str, Fraction] = {}
        if terms:
            for w, c in (terms.items() if isinstance(terms, dict) else terms):
                c = _coerce(c)
                if c:
                    acc = data.get(w, 0) + c
                    if acc:
                        data[w] = acc
                    else:
                        data.pop(w, None)
        self.terms = data

    @classmethod
    def zero(cls) -> "WordSum":
        return cls()

    @classmethod
    def unit(cls) -> "WordSum":
        return cls({"": 1})

    @classmethod
    def from_word(cls, w: str, coeff=1) -> "WordSum":
        return cls({w: coeff})

    def items(self):
        return sorted(self.terms.items(), key=lambda wc: word_key(wc[0]))

    def __add__(self, other: "WordSum") -> "WordSum":
        data = dict(self.terms)
        for w, c in other.terms.items():
            acc = data.get(w, 0) + c
            if acc:
                data[w] = acc
            else:
                data.pop(w, None)
        out = WordSum.__new__(WordSum)
        out.terms = data
        return out

    def __sub__(self, other: "WordSum") -> "WordSum":
        return self + (-other)

    def __neg__(self) -> "WordSum":
        out = WordSum.__new__(WordSum)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __mul__(self, scalar) -> "WordSum":
        s = _coerce(scalar)
        out = WordSum.__new__(WordSum)
        out.terms = {} if not s else {w: c * s for w, c in self.terms.items()}
        return out

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, WordSum) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def homogeneous_weight(self) -> int | None:
        """Common word length, or None if the sum mixes weights (empty sum: 0)."""
        lengths = {len(w) for w in self.terms}
        if not lengths:
            return 0
        if len(lengths) > 1:
            return None
        return lengths.pop()

    def __repr__(self):
        return "WordSum(%s)" % (self.to_text() or "0")

    def to_text(self) -> str:
        parts = []
        for w, c in self.items():
            name = w or "1"
            if c == 1:
                parts.append(name)
            elif c == -1:
                parts.append("-" + name)
            else:
                parts.append("%s·%s" % (c, name))
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


# ---------------------------------------------------------------------------
# products

_memo_cap = 12


def set_product_memo_cap(cap: int) -> None:
    """Adjust the memoisation threshold on total letters of a word pair."""
    global _memo_cap
    _memo_cap = cap
    _harmonic_cached.cache_clear()
    _shuffle_cached.cache_clear()


def _lead_block(w: str) -> tuple[int, str]:
    # leading z_k block of a word in h1
    i = 0
    while w[i] == X:
        i += 1
    return i + 1, w[i + 1:]


def harmonic_words(a: str, b: str):
    """Harmonic product of two words in h1, as ((word, int coeff), ...)."""
    if word_key(b) < word_key(a):
        a, b = b, a
    if len(a) + len(b) <= _memo_cap:
        return _harmonic_cached(a, b)
    return _harmonic_impl(a, b)


@functools.cache
def _harmonic_cached(a: str, b: str):
    return _harmonic_impl(a, b)


def _harmonic_impl(a: str, b: str):
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    k, ra = _lead_block(a)
    l, rb = _lead_block(b)
    acc: Counter = Counter()
    for w, c in harmonic_words(ra, b):
        acc[z_word(k) + w] += c
    for w, c in harmonic_words(a, rb):
        acc[z_word(l) + w] += c
    for w, c in harmonic_words(ra, rb):
        acc[z_word(k + l) + w] += c
    return tuple(sorted(acc.items()))


def shuffle_words(a: str, b: str):
    """Shuffle product of two arbitrary words, as ((word, int coeff), ...)."""
    if word_key(b) < word_key(a):
        a, b = b, a
    if len(a) + len(b) <= _memo_cap:
        return _shuffle_cached(a, b)
    return _shuffle_impl(a, b)


@functools.cache
def _shuffle_cached(a: str, b: str):
    return _shuffle_impl(a, b)


def _shuffle_impl(a: str, b: str):
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    acc: Counter = Counter()
    for w, c in shuffle_words(a[1:], b):
        acc[a[0] + w] += c
    for w, c in shuffle_words(a, b[1:]):
        acc[b[0] + w] += c
    return tuple(sorted(acc.items()))


def _as_wordsum(a) -> WordSum:
    if isinstance(a, WordSum):
        return a
    if isinstance(a, str):
        return WordSum.from_word(a)
    raise TypeError("expected a word or WordSum, got %r" % (a,))


def harmonic_product(a, b) -> WordSum:
    """Bilinear extension of the harmonic recursion.  Rejects words not in h1."""
    a, b = _as_wordsum(a), _as_wordsum(b)
    for ws in (a, b):
        for w in ws.terms:
            if not in_h1(w):
                raise ValueError("harmonic product is defined on h1 only; bad word %r" % (w,))
    acc: dict[str, Fraction] = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            c = ca * cb
            for w, k in harmonic_words(wa, wb):
                val = acc.get(w, 0) + c * k
                if val:
                    acc[w] = val
                else:
                    acc.pop(w, None)
    out = WordSum.__new__(WordSum)
    out.terms = acc
    return out


def shuffle_product(a, b) -> WordSum:
    """Bilinear extension of the shuffle recursion (defined on all words)."""
    a, b = _as_wordsum(a), _as_wordsum(b)
    acc: dict[str, Fraction] = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            c = ca * cb
            for w, k in shuffle_words(wa, wb):
                val = acc.get(w, 0) + c * k
                if val:
                    acc[w] = val
                else:
                    acc.pop(w, None)
    out = WordSum.__new__(WordSum)
    out.terms = acc
    return out
