"""Regularisation of divergent words as exact polynomials in T.

Every word w ending in y has a unique representation

    w  =  sum_k  a_k (.) g^(k)

where (.) is the harmonic or the shuffle product, g is the divergent
generator (z_1 = y in both cases), g^(k) is its k-fold product, and every
a_k is a combination of admissible words.  Evaluating the a_k to zeta
symbols and g to T turns w into a polynomial Z(w; T); its value at T = 0 is
the regularised zeta value of w in the chosen flavour.

The representation is computed by peeling leading y letters: in both
products g (.) (y^(m-1) u) = m * y^m u + (words with fewer leading y's), and
the multiplicity m is invertible over Q, so the peel terminates on the pair
(weight, number of leading y's).

The module also provides the correction map between the two flavours: the
linear map rho with rho(T^j)/j! = sum_i gamma_i T^(j-i)/(j-i)!, whose
coefficients gamma_i come from exp(sum_{m>=2} (-1)^m z(m) u^m / m), and the
closed form of the shuffle-regularised value, (-1)^m Z(x(y^m sh w0')) for
w = y^m x w0'.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import factorial

from .words import (
    WordSum,
    Composition,
    X,
    Y,
    composition_to_word,
    harmonic_words,
    in_h1,
    is_admissible_word,
    shuffle_words,
    word_key,
    word_to_composition,
)

HARMONIC = "harmonic"
SHUFFLE = "shuffle"


def _coerce(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


# ---------------------------------------------------------------------------
# symbol combinations


def _symbol_key(c: Composition):
    return composition_to_word(c) if c else ""


class SymCombo:
    """Weight-homogeneous Q-combination of admissible zeta symbols.

    Keys are admissible compositions.  The empty tuple stands for the
    rational unit and can only appear in weight 0, where it carries the
    scalar part of the combination.
    """

    __slots__ = ("weight", "terms")

    def __init__(self, weight: int, terms=None):
        data: dict[Composition, Fraction] = {}
        if terms:
            for k, c in (terms.items() if isinstance(terms, dict) else terms):
                k = tuple(k)
                if k == ():
                    if weight != 0:
                        raise ValueError("scalar term in a weight-%d combination" % weight)
                else:
                    if sum(k) != weight:
                        raise ValueError("symbol %r has weight %d, expected %d" % (k, sum(k), weight))
                    if k[0] < 2:
                        raise ValueError("non-admissible symbol %r" % (k,))
                c = _coerce(c)
                if c:
                    acc = data.get(k, 0) + c
                    if acc:
                        data[k] = acc
                    else:
                        data.pop(k, None)
        self.weight = weight
        self.terms = data

    @classmethod
    def zero(cls, weight: int) -> "SymCombo":
        return cls(weight)

    @classmethod
    def symbol(cls, c: Composition, coeff=1) -> "SymCombo":
        c = tuple(c)
        return cls(sum(c), {c: coeff})

    @classmethod
    def scalar(cls, q) -> "SymCombo":
        return cls(0, {(): q})

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: _symbol_key(kv[0]))

    def __add__(self, other: "SymCombo") -> "SymCombo":
        if self.terms and other.terms and self.weight != other.weight:
            raise ValueError("weight mismatch: %d vs %d" % (self.weight, other.weight))
        data = dict(self.terms)
        for k, c in other.terms.items():
            acc = data.get(k, 0) + c
            if acc:
                data[k] = acc
            else:
                data.pop(k, None)
        out = SymCombo.__new__(SymCombo)
        out.weight = self.weight if self.terms else other.weight
        out.terms = data
        return out

    def __sub__(self, other: "SymCombo") -> "SymCombo":
        return self + (-other)

    def __neg__(self) -> "SymCombo":
        out = SymCombo.__new__(SymCombo)
        out.weight = self.weight
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __mul__(self, scalar) -> "SymCombo":
        s = _coerce(scalar)
        out = SymCombo.__new__(SymCombo)
        out.weight = self.weight
        out.terms = {} if not s else {k: c * s for k, c in self.terms.items()}
        return out

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymCombo):
            return NotImplemented
        if self.terms != other.terms:
            return False
        return not self.terms or self.weight == other.weight

    def __hash__(self):
        return hash((self.weight if self.terms else None, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def as_vector(self, order) -> list[Fraction]:
        """Coordinates in the given symbol order; every term must be listed."""
        index = {c: i for i, c in enumerate(order)}
        vec = [Fraction(0)] * len(order)
        for k, c in self.terms.items():
            vec[index[k]] = c
        return vec

    @classmethod
    def from_vector(cls, weight: int, order, vec) -> "SymCombo":
        return cls(weight, {c: v for c, v in zip(order, vec) if v})

    def __repr__(self):
        return "SymCombo(%s)" % (self.to_text() or "0")

    def to_text(self) -> str:
        parts = []
        for k, c in self.items():
            if not k:
                parts.append(str(c))
            elif c == 1:
                parts.append("z(%s)" % ",".join(map(str, k)))
            elif c == -1:
                parts.append("-z(%s)" % ",".join(map(str, k)))
            else:
                parts.append("%s·z(%s)" % (c, ",".join(map(str, k))))
        return " + ".join(parts).replace("+ -", "- ")


def word_sum_to_symbols(ws: WordSum, weight: int | None = None) -> SymCombo:
    """Map a combination of admissible words to zeta symbols (empty word -> 1)."""
    if weight is None:
        weight = ws.homogeneous_weight()
        if weight is None:
            raise ValueError("cannot infer the weight of a mixed-weight sum")
    terms = {}
    for w, c in ws.terms.items():
        if not is_admissible_word(w):
            raise ValueError("word %r is not admissible" % (w,))
        terms[word_to_composition(w) if w else ()] = c
    return SymCombo(weight, terms)


class ProductCombo:
    """Q-combination of commutative monomials in zeta symbols.

    A monomial is a multiset of admissible compositions, stored as a sorted
    tuple; the empty monomial is the unit.  Homogeneous in total weight.
    """

    __slots__ = ("weight", "terms")

    def __init__(self, weight: int, terms=None):
        data: dict[tuple, Fraction] = {}
        if terms:
            for mono, c in (terms.items() if isinstance(terms, dict) else terms):
                mono = tuple(sorted((tuple(k) for k in mono), key=_symbol_key))
                if sum(sum(k) for k in mono) != weight:
                    raise ValueError("monomial %r does not have weight %d" % (mono, weight))
                c = _coerce(c)
                if c:
                    acc = data.get(mono, 0) + c
                    if acc:
                        data[mono] = acc
                    else:
                        data.pop(mono, None)
        self.weight = weight
        self.terms = data

    @classmethod
    def zero(cls, weight: int) -> "ProductCombo":
        return cls(weight)

    @classmethod
    def unit(cls, q=1) -> "ProductCombo":
        return cls(0, {(): q})

    @classmethod
    def from_symcombo(cls, v: SymCombo) -> "ProductCombo":
        return cls(v.weight, {((k,) if k else ()): c for k, c in v.terms.items()})

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: tuple(map(_symbol_key, kv[0])))

    def __add__(self, other: "ProductCombo") -> "ProductCombo":
        if self.terms and other.terms and self.weight != other.weight:
            raise ValueError("weight mismatch: %d vs %d" % (self.weight, other.weight))
        data = dict(self.terms)
        for k, c in other.terms.items():
            acc = data.get(k, 0) + c
            if acc:
                data[k] = acc
            else:
                data.pop(k, None)
        out = ProductCombo.__new__(ProductCombo)
        out.weight = self.weight if self.terms else other.weight
        out.terms = data
        return out

    def __sub__(self, other: "ProductCombo") -> "ProductCombo":
        return self + (-other)

    def __neg__(self) -> "ProductCombo":
        out = ProductCombo.__new__(ProductCombo)
        out.weight = self.weight
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, ProductCombo):
            out = ProductCombo.zero(self.weight + other.weight)
            data: dict[tuple, Fraction] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    mono = tuple(sorted(m1 + m2, key=_symbol_key))
                    acc = data.get(mono, 0) + c1 * c2
                    if acc:
                        data[mono] = acc
                    else:
                        data.pop(mono, None)
            out.terms = data
            return out
        s = _coerce(other)
        out = ProductCombo.__new__(ProductCombo)
        out.weight = self.weight
        out.terms = {} if not s else {k: c * s for k, c in self.terms.items()}
        return out

    def __rmul__(self, scalar):
        return self * scalar

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProductCombo):
            return NotImplemented
        if self.terms != other.terms:
            return False
        return not self.terms or self.weight == other.weight

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self):
        parts = []
        for mono, c in self.items():
            name = "·".join("z(%s)" % ",".join(map(str, k)) for k in mono) or "1"
            parts.append("%s·%s" % (c, name) if c != 1 else name)
        return "ProductCombo(%s)" % (" + ".join(parts).replace("+ -", "- ") or "0")


# ---------------------------------------------------------------------------
# T-polynomials and regularised expansions


class TPoly:
    """Polynomial in T whose T^j coefficient is homogeneous of weight l - j.

    Coefficients are :class:`SymCombo` (or :class:`ProductCombo` after the
    correction map has been applied).
    """

    __slots__ = ("weight", "coeffs")

    def __init__(self, weight: int, coeffs=None):
        data = {}
        for j, v in (coeffs or {}).items():
            if v:
                if v.weight != weight - j:
                    raise ValueError(
                        "T^%d coefficient has weight %d, expected %d" % (j, v.weight, weight - j)
                    )
                data[j] = v
        self.weight = weight
        self.coeffs = data

    def constant_term(self):
        return self.coeffs.get(0, SymCombo.zero(self.weight))

    def degree(self) -> int:
        return max(self.coeffs, default=0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TPoly)
            and self.weight == other.weight
            and self.coeffs == other.coeffs
        )

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self):
        return "TPoly(%s)" % (self.to_text() or "0")

    def to_text(self) -> str:
        parts = []
        for j in sorted(self.coeffs, reverse=True):
            c = self.coeffs[j]
            body = c.to_text()
            if len(c.terms) > 1:
                body = "(%s)" % body
            if j == 0:
                parts.append(body)
            else:
                t = "T" if j == 1 else "T^%d" % j
                parts.append(t if body == "1" else "%s·%s" % (body, t))
        return " + ".join(parts).replace("+ -", "- ")


class RegExpansion:
    """Representation of a word as sum_k by_power[k] (.) g^(k), with every
    by_power[k] a combination of admissible words."""

    __slots__ = ("flavor", "weight", "by_power")

    def __init__(self, flavor: str, weight: int, by_power: dict[int, WordSum]):
        self.flavor = flavor
        self.weight = weight
        self.by_power = {k: ws for k, ws in by_power.items() if ws}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RegExpansion)
            and self.flavor == other.flavor
            and self.weight == other.weight
            and self.by_power == other.by_power
        )

    def __repr__(self):
        return "RegExpansion(%s, %r)" % (self.flavor, {
            k: ws.to_text() for k, ws in sorted(self.by_power.items())
        })


@functools.cache
def _reg(w: str, flavor: str) -> RegExpansion:
    if is_admissible_word(w):
        return RegExpansion(flavor, len(w), {0: WordSum.from_word(w)} if w else {0: WordSum.unit()})
    m = 0
    while m < len(w) and w[m] == Y:
        m += 1
    v = w[1:]
    pairs = harmonic_words(Y, v) if flavor == HARMONIC else shuffle_words(Y, v)
    inv_m = Fraction(1, m)
    acc: dict[int, dict[str, Fraction]] = {}

    def bump(k: int, word: str, coeff: Fraction) -> None:
        row = acc.setdefault(k, {})
        val = row.get(word, 0) + coeff
        if val:
            row[word] = val
        else:
            row.pop(word, None)

    # g (.) v contributes a power shift of reg(v); the remaining terms of the
    # product (all with fewer leading y's) are peeled recursively.
    sub = _reg(v, flavor)
    for k, ws in sub.by_power.items():
        for word, c in ws.terms.items():
            bump(k + 1, word, c * inv_m)
    for word, c in pairs:
        if word == w:
            c -= m
        if not c:
            continue
        rexp = _reg(word, flavor)
        scale = Fraction(c) * inv_m
        for k, ws in rexp.by_power.items():
            for wd, cc in ws.terms.items():
                bump(k, wd, -scale * cc)
    return RegExpansion(flavor, len(w), {k: WordSum(row) for k, row in acc.items()})


def reg_harmonic(w: str) -> RegExpansion:
    """Harmonic-flavour expansion of a word in h1 over admissible words."""
    if not in_h1(w):
        raise ValueError("word %r does not end in y" % (w,))
    return _reg(w, HARMONIC)


def reg_shuffle(w: str) -> RegExpansion:
    """Shuffle-flavour expansion of a word in h1 over admissible words."""
    if not in_h1(w):
        raise ValueError("word %r does not end in y" % (w,))
    return _reg(w, SHUFFLE)


def reg_word_sum(ws: WordSum, flavor: str) -> dict[int, WordSum]:
    """Expansion of a linear combination of h1 words, by linearity."""
    acc: dict[int, WordSum] = {}
    for w, c in ws.terms.items():
        e = _reg(w, flavor)
        for k, part in e.by_power.items():
            acc[k] = acc.get(k, WordSum.zero()) + part * c
    return {k: v for k, v in acc.items() if v}


def evaluate_reg(e: RegExpansion) -> TPoly:
    """Map an expansion to its T-polynomial: the T^k coefficient is the
    symbol image of by_power[k]; the constant term is the regularised value."""
    return TPoly(
        e.weight,
        {k: word_sum_to_symbols(ws, e.weight - k) for k, ws in e.by_power.items()},
    )


@functools.cache
def zeta_star(c: Composition) -> SymCombo:
    """Harmonic-regularised value of an index set, at T = 0."""
    c = tuple(c)
    return evaluate_reg(reg_harmonic(composition_to_word(c))).constant_term()


@functools.cache
def zeta_sh(c: Composition) -> SymCombo:
    """Shuffle-regularised value of an index set, at T = 0."""
    c = tuple(c)
    return evaluate_reg(reg_shuffle(composition_to_word(c))).constant_term()


def zeta_value(c: Composition, flavor: str) -> SymCombo:
    if flavor in (HARMONIC, "star"):
        return zeta_star(c)
    if flavor in (SHUFFLE, "sh"):
        return zeta_sh(c)
    raise ValueError("unknown flavour %r" % (flavor,))


# ---------------------------------------------------------------------------
# the correction map between the two flavours


def _series_mul(f: list[ProductCombo], g: list[ProductCombo], cap: int) -> list[ProductCombo]:
    out = [ProductCombo.zero(k) for k in range(cap + 1)]
    for i, fi in enumerate(f):
        if not fi:
            continue
        for j, gj in enumerate(g):
            if i + j > cap:
                break
            if gj:
                out[i + j] = out[i + j] + fi * gj
    return out


@functools.cache
def gamma_coeffs(i_max: int) -> tuple[ProductCombo, ...]:
    """gamma_0..gamma_{i_max} of exp(sum_{m>=2} (-1)^m z(m) u^m / m), as exact
    polynomials in single-zeta symbols."""
    if i_max < 0:
        raise ValueError("i_max must be nonnegative")
    g = [ProductCombo.zero(k) for k in range(i_max + 1)]
    for m in range(2, i_max + 1):
        g[m] = ProductCombo(m, {((m,),): Fraction((-1) ** m, m)})
    out = [ProductCombo.zero(k) for k in range(i_max + 1)]
    out[0] = ProductCombo.unit()
    term = list(out)
    # g has lowest degree 2, so g^j/j! contributes nothing beyond j = i_max//2
    for j in range(1, i_max // 2 + 1):
        term = [t * Fraction(1, j) for t in _series_mul(term, g, i_max)]
        for k in range(2 * j, i_max + 1):
            out[k] = out[k] + term[k]
    return tuple(out)


def rho_apply(p: TPoly) -> TPoly:
    """The T-degree-preserving linear correction map determined by
    rho(T^j)/j! = sum_i gamma_i T^(j-i)/(j-i)!.

    Coefficients of the result live in the product algebra."""
    if not p.coeffs:
        return TPoly(p.weight, {})
    dmax = p.degree()
    gammas = gamma_coeffs(dmax)
    acc: dict[int, ProductCombo] = {}
    for j, cj in p.coeffs.items():
        pc = cj if isinstance(cj, ProductCombo) else ProductCombo.from_symcombo(cj)
        for i in range(j + 1):
            if not gammas[i] :
                continue
            k = j - i
            contrib = pc * gammas[i] * Fraction(factorial(j), factorial(k))
            acc[k] = acc.get(k, ProductCombo.zero(p.weight - k)) + contrib
    return TPoly(p.weight, acc)


def shuffle_reg_closed_form(c: Composition) -> SymCombo:
    """Shuffle-regularised value via the closed form (-1)^m Z(x(y^m sh w0'))
    for the decomposition word = y^m x w0'.

    Pure-y words have no x to anchor the decomposition; their regularised
    polynomial is T^m/m!, so the value is 0 (m >= 1).
    """
    c = tuple(c)
    w = composition_to_word(c)
    m = 0
    while m < len(w) and w[m] == Y:
        m += 1
    if m == len(w):
        return SymCombo.zero(len(w))
    w0p = w[m + 1:]
    sign = (-1) ** m
    terms = {}
    for word, k in shuffle_words(Y * m, w0p):
        key = word_to_composition(X + word)
        terms[key] = terms.get(key, 0) + Fraction(sign * k)
    return SymCombo(len(w), terms)
