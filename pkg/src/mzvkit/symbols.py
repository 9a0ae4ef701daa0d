"""Subspaces of the free Q-span of admissible zeta symbols of fixed weight.

The ambient space at weight l is the free vector space on the 2^(l-2)
admissible compositions, in the canonical word-lexicographic order.  The
module builds the three families of subspaces used as congruence moduli:

* ``DepthSpan(d)`` / ``DepthSpanBelow(n)`` -- spans of fixed / bounded depth,
* ``ProductSpan`` -- the single zeta z(l) together with the harmonic
  expansions of all two-factor products of total weight l (higher products
  lie in this span by associativity),
* ``RelationSpan`` -- the known relations: finite double-shuffle differences
  ``w1 * w2 - w1 sh w2``, the relations obtained from the divergent letter
  ``z1 * w - z1 sh w`` (whose symbol image vanishes), and duality.

Everything is exact: bases are reduced row echelon forms over Fraction with
deterministic pivoting, and membership queries return recombination
certificates over the stored generators.  A versioned flat-file snapshot
("mzvrel/1") can be written and reloaded; loading validates the echelon
invariants and seeds the in-memory caches.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from fractions import Fraction

from .words import (
    WordSum,
    Composition,
    z_word,
    admissible_compositions,
    composition_to_word,
    dual_composition,
    harmonic_product,
    is_admissible_composition,
    shuffle_product,
    word_key,
)
from .regularize import (
    HARMONIC,
    SHUFFLE,
    ProductCombo,
    SymCombo,
    evaluate_reg,
    reg_word_sum,
    word_sum_to_symbols,
)

DB_FORMAT = "mzvrel/1"


def symbol_order(weight: int) -> tuple[Composition, ...]:
    """Canonical ordering of the ambient basis at the given weight."""
    return admissible_compositions(weight)


def ambient_dim(weight: int) -> int:
    return len(symbol_order(weight))


# ---------------------------------------------------------------------------
# exact elimination


def rref(rows, ncols):
    """Reduced row echelon form with deterministic pivoting.

    Returns (rref_rows, pivot_columns, transform) where transform expresses
    each echelon row as an exact combination of the input rows.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    t = [
        [Fraction(1) if i == j else Fraction(0) for j in range(len(m))]
        for i in range(len(m))
    ]
    pivots = []
    pr = 0
    for col in range(ncols):
        sel = None
        for r in range(pr, len(m)):
            if m[r][col]:
                sel = r
                break
        if sel is None:
            continue
        if sel != pr:
            m[pr], m[sel] = m[sel], m[pr]
            t[pr], t[sel] = t[sel], t[pr]
        inv = 1 / m[pr][col]
        if inv != 1:
            m[pr] = [v * inv for v in m[pr]]
            t[pr] = [v * inv for v in t[pr]]
        for r in range(len(m)):
            if r != pr and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[pr])]
                t[r] = [a - f * b for a, b in zip(t[r], t[pr])]
        pivots.append(col)
        pr += 1
        if pr == len(m):
            break
    return m[:pr], pivots, t[:pr]


def reduce_vector(vec, rows, pivots):
    """Residual of vec after eliminating the pivot coordinates, together with
    the coefficients over the echelon rows that were subtracted."""
    v = list(vec)
    coeffs = []
    for row, p in zip(rows, pivots):
        f = v[p]
        coeffs.append(f)
        if f:
            v = [a - f * b for a, b in zip(v, row)]
    return v, coeffs


class SubspaceBasis:
    """Echelonised span of labelled generator vectors at one weight."""

    __slots__ = ("weight", "label", "order", "gens", "gen_info", "rows", "pivots", "transform")

    def __init__(self, weight, label, order, gens, gen_info, rows, pivots, transform):
        self.weight = weight
        self.label = label
        self.order = order
        self.gens = gens
        self.gen_info = gen_info
        self.rows = rows
        self.pivots = pivots
        self.transform = transform

    @classmethod
    def build(cls, weight: int, label: str, gens, gen_info=None) -> "SubspaceBasis":
        order = symbol_order(weight)
        gens = [list(g) for g in gens]
        if gen_info is None:
            gen_info = [None] * len(gens)
        rows, pivots, transform = rref(gens, len(order))
        return cls(weight, label, order, gens, list(gen_info), rows, pivots, transform)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: SymCombo) -> SymCombo:
        """Canonical residue of v modulo this subspace."""
        if v.terms and v.weight != self.weight:
            raise ValueError("weight mismatch: %d vs %d" % (v.weight, self.weight))
        vec = v.as_vector(self.order)
        res, _ = reduce_vector(vec, self.rows, self.pivots)
        return SymCombo.from_vector(self.weight, self.order, res)

    def contains(self, v: SymCombo) -> bool:
        return not self.reduce(v)

    def generator_combos(self):
        """The raw generators as symbol combinations, with their tags."""
        return [
            (info, SymCombo.from_vector(self.weight, self.order, g))
            for info, g in zip(self.gen_info, self.gens)
        ]


@dataclass
class MembershipCertificate:
    """Outcome of an exact membership query.

    When certified, ``combination`` lists (subspace label, generator index,
    coefficient) triples whose exact recombination equals the query.
    """

    verdict: str  # "certified" | "not-in-span"
    combination: list | None

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"


# ---------------------------------------------------------------------------
# subspace builders, cached per (weight, label)

_basis_cache: dict[tuple, SubspaceBasis] = {}
_sum_cache: dict[tuple, tuple] = {}


def clear_caches() -> None:
    _basis_cache.clear()
    _sum_cache.clear()
    _expand_monomial.cache_clear()


def _cached(key, builder) -> SubspaceBasis:
    basis = _basis_cache.get(key)
    if basis is None:
        basis = builder()
        _basis_cache[key] = basis
    return basis


def _unit_vector(weight, c):
    order = symbol_order(weight)
    vec = [Fraction(0)] * len(order)
    vec[order.index(c)] = Fraction(1)
    return vec


def depth_subspace(weight: int, depth: int) -> SubspaceBasis:
    """Span of the weight-l symbols of exactly the given depth (may be empty)."""

    def build():
        gens, info = [], []
        for c in symbol_order(weight):
            if len(c) == depth:
                gens.append(_unit_vector(weight, c))
                info.append(("depth", c))
        return SubspaceBasis.build(weight, "DepthSpan(%d)" % depth, gens, info)

    return _cached((weight, "DepthSpan(%d)" % depth), build)


def depth_subspace_below(weight: int, n: int) -> SubspaceBasis:
    """Span of the weight-l symbols of depth strictly less than n."""

    def build():
        gens, info = [], []
        for c in symbol_order(weight):
            if len(c) < n:
                gens.append(_unit_vector(weight, c))
                info.append(("depth", c))
        return SubspaceBasis.build(weight, "DepthSpanBelow(%d)" % n, gens, info)

    return _cached((weight, "DepthSpanBelow(%d)" % n), build)


@functools.cache
def _expand_monomial(mono: tuple, mode: str, weight: int) -> SymCombo:
    for k in mono:
        if not is_admissible_composition(k):
            raise ValueError("monomial contains non-admissible index %r" % (k,))
    ws = WordSum.unit()
    product = harmonic_product if mode == HARMONIC else shuffle_product
    for k in mono:
        ws = product(ws, WordSum.from_word(composition_to_word(k)))
    return word_sum_to_symbols(ws, weight)


def expand_product(p: ProductCombo, mode: str = HARMONIC) -> SymCombo:
    """Expand a combination of symbol monomials into the free symbol space by
    iterated products of the corresponding words in the chosen mode."""
    if mode not in (HARMONIC, SHUFFLE):
        raise ValueError("unknown mode %r" % (mode,))
    out = SymCombo.zero(p.weight)
    for mono, coeff in p.terms.items():
        out = out + _expand_monomial(mono, mode, p.weight) * coeff
    return out


def combo_product(a: SymCombo, b: SymCombo, mode: str = HARMONIC) -> SymCombo:
    """Product of two symbol combinations, expanded in the chosen mode."""
    pa = ProductCombo.from_symcombo(a)
    pb = ProductCombo.from_symcombo(b)
    return expand_product(pa * pb, mode)


def product_subspace(weight: int) -> SubspaceBasis:
    """Span of z(l) and of all stuffle-expanded two-factor products of total
    weight l.  Products with more factors lie in this span by associativity."""
    if weight < 2:
        raise ValueError("product span needs weight >= 2")

    def build():
        order = symbol_order(weight)
        gens = [_unit_vector(weight, (weight,))]
        info = [("single", (weight,))]
        for w1 in range(2, weight - 1):
            w2 = weight - w1
            if w2 < w1:
                break
            for c1 in admissible_compositions(w1):
                for c2 in admissible_compositions(w2):
                    if w1 == w2 and word_key(composition_to_word(c2)) < word_key(
                        composition_to_word(c1)
                    ):
                        continue
                    combo = _expand_monomial((c1, c2), HARMONIC, weight)
                    gens.append(combo.as_vector(order))
                    info.append(("pair", c1, c2))
        return SubspaceBasis.build(weight, "ProductSpan", gens, info)

    return _cached((weight, "ProductSpan"), build)


def relation_subspace(weight: int) -> SubspaceBasis:
    """Span of the known weight-l relations among admissible symbols:

    (a) finite double shuffle: w1 * w2 - w1 sh w2 for admissible w1, w2;
    (b) divergent-letter relations: the constant term of the shuffle-flavour
        image of z1 * w - z1 sh w for admissible w of weight l - 1;
    (c) duality: z(K) - z(dual K).

    Whether these span all relations at a given weight is an open question;
    membership verdicts are therefore reported as certified / not certified,
    never as counterexamples.
    """

    def build():
        order = symbol_order(weight)
        gens, info = [], []
        y = z_word(1)
        for w1 in range(2, weight - 1):
            w2 = weight - w1
            if w2 < w1:
                break
            for c1 in admissible_compositions(w1):
                for c2 in admissible_compositions(w2):
                    if w1 == w2 and word_key(composition_to_word(c2)) < word_key(
                        composition_to_word(c1)
                    ):
                        continue
                    a = WordSum.from_word(composition_to_word(c1))
                    b = WordSum.from_word(composition_to_word(c2))
                    diff = harmonic_product(a, b) - shuffle_product(a, b)
                    combo = word_sum_to_symbols(diff, weight)
                    if combo:
                        gens.append(combo.as_vector(order))
                        info.append(("fds", c1, c2))
        for c in admissible_compositions(weight - 1):
            w = WordSum.from_word(composition_to_word(c))
            diff = harmonic_product(WordSum.from_word(y), w) - shuffle_product(
                WordSum.from_word(y), w
            )
            const = reg_word_sum(diff, SHUFFLE).get(0, WordSum.zero())
            combo = word_sum_to_symbols(const, weight)
            if combo:
                gens.append(combo.as_vector(order))
                info.append(("hoffman", c))
        for c in symbol_order(weight):
            d = dual_composition(c)
            if d != c:
                combo = SymCombo.symbol(c) - SymCombo.symbol(d)
                gens.append(combo.as_vector(order))
                info.append(("duality", c))
        return SubspaceBasis.build(weight, "RelationSpan", gens, info)

    return _cached((weight, "RelationSpan"), build)


def duality_subspace(weight: int) -> SubspaceBasis:
    """Span of the duality generators alone (the (c) part of RelationSpan)."""

    def build():
        order = symbol_order(weight)
        gens, info = [], []
        for c in symbol_order(weight):
            d = dual_composition(c)
            if d != c:
                combo = SymCombo.symbol(c) - SymCombo.symbol(d)
                gens.append(combo.as_vector(order))
                info.append(("duality", c))
        return SubspaceBasis.build(weight, "DualitySpan", gens, info)

    return _cached((weight, "DualitySpan"), build)


# ---------------------------------------------------------------------------
# membership in sums of subspaces


def _stacked(parts):
    weight = parts[0].weight
    labels = tuple(p.label for p in parts)
    key = (weight, labels)
    entry = _sum_cache.get(key)
    if entry is None:
        gens = []
        owners = []
        for p in parts:
            if p.weight != weight:
                raise ValueError("subspace weights differ: %d vs %d" % (p.weight, weight))
            for i, g in enumerate(p.gens):
                gens.append(g)
                owners.append((p.label, i))
        rows, pivots, transform = rref(gens, len(symbol_order(weight)))
        entry = (rows, pivots, transform, owners)
        _sum_cache[key] = entry
    return entry


def membership(v: SymCombo, parts) -> MembershipCertificate:
    """Decide whether v lies in the sum of the given subspaces.

    A certified verdict carries exact coefficients over the generating sets:
    sum of coeff * generator equals v term by term.
    """
    parts = list(parts)
    if not v:
        return MembershipCertificate("certified", [])
    if not parts or not symbol_order(v.weight):
        return MembershipCertificate("not-in-span", None)
    for p in parts:
        if p.weight != v.weight:
            raise ValueError("weight mismatch: query %d vs subspace %d" % (v.weight, p.weight))
    rows, pivots, transform, owners = _stacked(parts)
    vec = v.as_vector(symbol_order(v.weight))
    res, coeffs = reduce_vector(vec, rows, pivots)
    if any(res):
        return MembershipCertificate("not-in-span", None)
    combo = []
    ngens = len(owners)
    acc = [Fraction(0)] * ngens
    for alpha, trow in zip(coeffs, transform):
        if alpha:
            for i in range(ngens):
                if trow[i]:
                    acc[i] += alpha * trow[i]
    for i, c in enumerate(acc):
        if c:
            label, idx = owners[i]
            combo.append((label, idx, c))
    return MembershipCertificate("certified", combo)


def reduce(v: SymCombo, basis: SubspaceBasis) -> SymCombo:
    """Canonical residue of v modulo a subspace; zero iff membership holds."""
    return basis.reduce(v)


# ---------------------------------------------------------------------------
# persistence: the mzvrel/1 flat-file format


def _rows_to_strings(rows):
    return [[str(x) for x in row] for row in rows]


def _persisted_labels(weight: int):
    labels = ["DepthSpan(%d)" % d for d in range(1, max(weight, 2))]
    labels += ["ProductSpan", "RelationSpan"]
    return labels


def db_build(max_weight: int, path: str | None = None) -> dict:
    """Compute and serialise the depth/product/relation bases for weights
    2..max_weight.  Returns the document; writes JSON when a path is given."""
    weights = []
    for l in range(2, max_weight + 1):
        subspaces = []
        for label in _persisted_labels(l):
            basis = get_subspace(l, label)
            subspaces.append({"label": label, "rows": _rows_to_strings(basis.rows)})
        weights.append(
            {
                "weight": l,
                "basisOrder": [",".join(map(str, c)) for c in symbol_order(l)],
                "subspaces": subspaces,
            }
        )
    doc = {"format": DB_FORMAT, "maxWeight": max_weight, "weights": weights}
    if path is not None:
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)
            fh.write("\n")
    return doc


def get_subspace(weight: int, label: str) -> SubspaceBasis:
    """Look up a subspace by its persisted label."""
    if label.startswith("DepthSpan(") and label.endswith(")"):
        return depth_subspace(weight, int(label[10:-1]))
    if label.startswith("DepthSpanBelow(") and label.endswith(")"):
        return depth_subspace_below(weight, int(label[15:-1]))
    if label == "ProductSpan":
        return product_subspace(weight)
    if label == "RelationSpan":
        return relation_subspace(weight)
    if label == "DualitySpan":
        return duality_subspace(weight)
    raise ValueError("unknown subspace label %r" % (label,))


def db_check(doc) -> list[str]:
    """Validate a database document; returns a list of problems (empty = ok)."""
    problems = []
    if not isinstance(doc, dict) or doc.get("format") != DB_FORMAT:
        return ["missing or unsupported format marker (expected %r)" % DB_FORMAT]
    for rec in doc.get("weights", []):
        l = rec.get("weight")
        order = [tuple(int(p) for p in s.split(",")) for s in rec.get("basisOrder", [])]
        want = list(symbol_order(l))
        where = "weight %s" % l
        if order != want:
            problems.append("%s: basisOrder is not the canonical order" % where)
            continue
        if l >= 2 and len(order) != 2 ** (l - 2):
            problems.append("%s: ambient dimension %d != 2^(l-2)" % (where, len(order)))
        for sub in rec.get("subspaces", []):
            label = sub.get("label", "?")
            try:
                rows = [[Fraction(x) for x in row] for row in sub.get("rows", [])]
            except (ValueError, ZeroDivisionError):
                problems.append("%s %s: non-rational entry" % (where, label))
                continue
            if any(len(row) != len(order) for row in rows):
                problems.append("%s %s: row width mismatch" % (where, label))
                continue
            pivots = []
            ok = True
            for row in rows:
                nz = [i for i, x in enumerate(row) if x]
                if not nz:
                    problems.append("%s %s: zero row stored" % (where, label))
                    ok = False
                    break
                pivots.append(nz[0])
                if row[nz[0]] != 1:
                    problems.append("%s %s: pivot not normalised" % (where, label))
                    ok = False
                    break
            if not ok:
                continue
            if pivots != sorted(pivots) or len(set(pivots)) != len(pivots):
                problems.append("%s %s: pivot columns not strictly increasing" % (where, label))
                continue
            for i, p in enumerate(pivots):
                if any(rows[r][p] for r in range(len(rows)) if r != i):
                    problems.append("%s %s: pivot column %d not reduced" % (where, label, p))
                    break
    return problems


def db_load(path: str, seed: bool = True) -> dict:
    """Load and validate a database file.

    When ``seed`` is true the contained bases replace the in-memory caches,
    so subsequent membership queries run against the loaded data.
    """
    with open(path) as fh:
        doc = json.load(fh)
    problems = db_check(doc)
    if problems:
        raise ValueError("invalid relation database %s: %s" % (path, "; ".join(problems)))
    if seed:
        for rec in doc["weights"]:
            l = rec["weight"]
            order = symbol_order(l)
            for sub in rec["subspaces"]:
                rows = [[Fraction(x) for x in row] for row in sub["rows"]]
                pivots = [next(i for i, x in enumerate(row) if x) for row in rows]
                transform = [
                    [Fraction(1) if i == j else Fraction(0) for j in range(len(rows))]
                    for i in range(len(rows))
                ]
                basis = SubspaceBasis(
                    l, sub["label"], order, [list(r) for r in rows],
                    [("loaded", i) for i in range(len(rows))], rows, pivots, transform,
                )
                _basis_cache[(l, sub["label"])] = basis
        _sum_cache.clear()
    return doc
