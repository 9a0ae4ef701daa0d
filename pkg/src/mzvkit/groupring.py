"""Exact arithmetic in the group ring of unimodular integer matrices.

Permutations of degree n are identified with the matrices (delta_{i,sigma(j)})
so that composition matches matrix multiplication.  The module provides the
named elements of the reversal/cyclic identity catalogue:

* ``minus_identity`` (-1 on the diagonal) and the partial reversals
  ``partial_reversal(n, j)`` fixing 1..j and reversing j+1..n (j = 0 is the
  full reversal, an anti-diagonal matrix),
* the difference matrix (1 on the diagonal, -1 below) and its inverse, the
  suffix-sum matrix,
* the shuffle elements sh_j: the sums of all permutations increasing on the
  first j and on the last n - j positions,
* the projections of the degree-(n+1) symmetric group to n x n matrices
  through the identification y_{n+1} = -(y_1 + ... + y_n).

The two involutions (termwise inverse and termwise transpose) are ring
anti-automorphisms.  ``verify_identity`` checks the named identities of the
catalogue exactly for a given dimension.
"""

from __future__ import annotations

import functools
import itertools
from fractions import Fraction


class IntMatrix:
    """Immutable square integer matrix with determinant +-1."""

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        d = _det(rows)
        if d not in (1, -1):
            raise ValueError("matrix must be unimodular, det = %d" % d)
        self.n = n
        self.rows = rows
        self._hash = hash(rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch: %d vs %d" % (self.n, other.n))
        bt = tuple(zip(*other.rows))
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in bt) for row in self.rows)
        )

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def inverse(self) -> "IntMatrix":
        return _inverse(self)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-x for x in r) for r in self.rows))

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "IntMatrix(%r)" % (self.rows,)


def _det(rows) -> int:
    # fraction-free Bareiss elimination
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@functools.lru_cache(maxsize=None)
def _inverse(mat: IntMatrix) -> IntMatrix:
    n = mat.n
    a = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(mat.rows)]
    for col in range(n):
        sel = next(r for r in range(col, n) if a[r][col])
        a[col], a[sel] = a[sel], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [u - f * v for u, v in zip(a[r], a[col])]
    out = []
    for r in range(n):
        row = []
        for v in a[r][n:]:
            if v.denominator != 1:
                raise ValueError("inverse is not integral")  # cannot happen: det is +-1
            row.append(v.numerator)
        out.append(tuple(row))
    return IntMatrix(tuple(out))


class GroupRingElem:
    """Formal integer combination of unimodular matrices of one dimension."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        data: dict[IntMatrix, int] = {}
        for m, c in (terms or {}).items():
            if m.n != n:
                raise ValueError("matrix dimension %d != %d" % (m.n, n))
            c = int(c)
            if c:
                acc = data.get(m, 0) + c
                if acc:
                    data[m] = acc
                else:
                    data.pop(m, None)
        self.n = n
        self.terms = data

    @classmethod
    def from_matrix(cls, m: IntMatrix, coeff: int = 1) -> "GroupRingElem":
        return cls(m.n, {m: coeff})

    @classmethod
    def identity(cls, n: int) -> "GroupRingElem":
        return cls.from_matrix(IntMatrix.identity(n))

    @classmethod
    def zero(cls, n: int) -> "GroupRingElem":
        return cls(n)

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        other = _as_elem(other, self.n)
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        data = dict(self.terms)
        for m, c in other.terms.items():
            acc = data.get(m, 0) + c
            if acc:
                data[m] = acc
            else:
                data.pop(m, None)
        out = GroupRingElem.__new__(GroupRingElem)
        out.n = self.n
        out.terms = data
        return out

    def __sub__(self, other):
        return self + (-_as_elem(other, self.n))

    def __neg__(self) -> "GroupRingElem":
        out = GroupRingElem.__new__(GroupRingElem)
        out.n = self.n
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, int):
            out = GroupRingElem.__new__(GroupRingElem)
            out.n = self.n
            out.terms = {} if not other else {m: c * other for m, c in self.terms.items()}
            return out
        other = _as_elem(other, self.n)
        if self.n != other.n:
            raise ValueError("dimension mismatch: %d vs %d" % (self.n, other.n))
        data: dict[IntMatrix, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                acc = data.get(m, 0) + c1 * c2
                if acc:
                    data[m] = acc
                else:
                    data.pop(m, None)
        out = GroupRingElem.__new__(GroupRingElem)
        out.n = self.n
        out.terms = data
        return out

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return _as_elem(other, self.n) * self

    def __eq__(self, other) -> bool:
        if isinstance(other, IntMatrix):
            other = GroupRingElem.from_matrix(other)
        return isinstance(other, GroupRingElem) and self.n == other.n and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self):
        return "GroupRingElem(n=%d, %d terms)" % (self.n, len(self.terms))


def _as_elem(x, n: int) -> GroupRingElem:
    if isinstance(x, GroupRingElem):
        return x
    if isinstance(x, IntMatrix):
        return GroupRingElem.from_matrix(x)
    raise TypeError("expected GroupRingElem or IntMatrix, got %r" % (x,))


def product(*factors) -> GroupRingElem:
    """Ring product of matrices and elements, left to right."""
    first = factors[0]
    acc = first if isinstance(first, GroupRingElem) else GroupRingElem.from_matrix(first)
    for f in factors[1:]:
        acc = acc * f
    return acc


# ---------------------------------------------------------------------------
# permutations; images are 1-indexed tuples (sigma(1), ..., sigma(n))


def perm_matrix(images) -> IntMatrix:
    """The matrix (delta_{i,sigma(j)}) of a permutation."""
    n = len(images)
    if sorted(images) != list(range(1, n + 1)):
        raise ValueError("not a permutation of 1..%d: %r" % (n, images))
    return IntMatrix(
        tuple(tuple(1 if i == images[j] else 0 for j in range(n)) for i in range(1, n + 1))
    )


def cycle_perm(n: int, cycle) -> tuple[int, ...]:
    """Images of the cycle (c_1 c_2 ... c_r) in degree n."""
    images = list(range(1, n + 1))
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        images[a - 1] = b
    return tuple(images)


def compose_perms(p, q) -> tuple[int, ...]:
    """(p o q)(i) = p(q(i))."""
    return tuple(p[q[i] - 1] for i in range(len(q)))


def invert_perm(p) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p, start=1):
        out[v - 1] = i
    return tuple(out)


def embed_perm(images, m: int) -> tuple[int, ...]:
    """Embed a permutation of degree n into degree m >= n, fixing the rest."""
    return tuple(images) + tuple(range(len(images) + 1, m + 1))


def project_permutation(images) -> IntMatrix:
    """Project a permutation of degree n+1 to an n x n unimodular matrix via
    the identification y_{n+1} = -(y_1 + ... + y_n).

    Column i is e_{sigma(i)} when sigma(i) <= n, and all -1 otherwise; this is
    a group homomorphism extending the permutation-matrix identification.
    """
    n1 = len(images)
    n = n1 - 1
    cols = []
    for i in range(n):
        v = images[i]
        if v <= n:
            cols.append(tuple(1 if k == v else 0 for k in range(1, n + 1)))
        else:
            cols.append(tuple(-1 for _ in range(n)))
    return IntMatrix(tuple(zip(*cols)))


# ---------------------------------------------------------------------------
# named elements


def minus_identity(n: int) -> IntMatrix:
    return IntMatrix(tuple(tuple(-1 if i == j else 0 for j in range(n)) for i in range(n)))


def partial_reversal(n: int, j: int) -> IntMatrix:
    """Permutation fixing 1..j and reversing j+1..n (an involution)."""
    if not 0 <= j <= n - 1:
        raise ValueError("need 0 <= j <= n-1, got j=%d, n=%d" % (j, n))
    images = tuple(range(1, j + 1)) + tuple(range(n, j, -1))
    return perm_matrix(images)


def reversal(n: int) -> IntMatrix:
    """The full reversal (anti-diagonal permutation matrix)."""
    return partial_reversal(n, 0)


def difference_matrix(n: int) -> IntMatrix:
    """1 on the diagonal, -1 directly below; row action takes consecutive
    differences x_j - x_{j+1}."""
    return IntMatrix(
        tuple(
            tuple(1 if i == j else (-1 if i == j + 1 else 0) for j in range(n))
            for i in range(n)
        )
    )


def suffix_sum_matrix(n: int) -> IntMatrix:
    """Lower-triangular all-ones matrix, the inverse of the difference matrix;
    row action produces suffix sums x_j + ... + x_n."""
    return IntMatrix(tuple(tuple(1 if i >= j else 0 for j in range(n)) for i in range(n)))


def shuffle_element(n: int, j: int) -> GroupRingElem:
    """Sum of all permutations increasing on positions 1..j and j+1..n."""
    if not 1 <= j <= n - 1:
        raise ValueError("need 1 <= j <= n-1, got j=%d, n=%d" % (j, n))
    terms = {}
    universe = range(1, n + 1)
    for first in itertools.combinations(universe, j):
        rest = tuple(v for v in universe if v not in first)
        terms[perm_matrix(first + rest)] = 1
    return GroupRingElem(n, terms)


def cyclic_matrix(n: int) -> IntMatrix:
    """The n-cycle (1 2 ... n) as a permutation matrix."""
    return perm_matrix(cycle_perm(n, tuple(range(1, n + 1))))


def projected_transposition(n: int) -> IntMatrix:
    """Projection of the transposition (1, n+1): first column all -1, the
    rest of the diagonal 1."""
    return project_permutation(cycle_perm(n + 1, (1, n + 1)))


def projected_cycle(n: int) -> IntMatrix:
    """Projection of the (n+1)-cycle (1 2 ... n+1): 1 below the diagonal and
    -1 down the last column."""
    return project_permutation(cycle_perm(n + 1, tuple(range(1, n + 2))))


def projected_cycle_inverse(n: int) -> IntMatrix:
    return projected_cycle(n).inverse()


def named(n: int, which: str):
    """Spec-facing dispatcher for the named generators.

    Accepts "identity", "epsilon", "tau0", "tau(j)", "P", "Pinv",
    "shuffle(j)", "cyclicProj", "cyclicProjInv", "tauPrimeProj"; matrix-valued
    entries are wrapped as one-term ring elements.
    """
    which = which.strip()
    if which == "identity":
        return GroupRingElem.identity(n)
    if which == "epsilon":
        return GroupRingElem.from_matrix(minus_identity(n))
    if which == "tau0":
        return GroupRingElem.from_matrix(reversal(n))
    if which.startswith("tau(") and which.endswith(")"):
        return GroupRingElem.from_matrix(partial_reversal(n, int(which[4:-1])))
    if which == "P":
        return GroupRingElem.from_matrix(difference_matrix(n))
    if which == "Pinv":
        return GroupRingElem.from_matrix(suffix_sum_matrix(n))
    if which.startswith("shuffle(") and which.endswith(")"):
        return shuffle_element(n, int(which[8:-1]))
    if which == "cyclicProj":
        return GroupRingElem.from_matrix(projected_cycle(n))
    if which == "cyclicProjInv":
        return GroupRingElem.from_matrix(projected_cycle_inverse(n))
    if which == "tauPrimeProj":
        return GroupRingElem.from_matrix(projected_transposition(n))
    raise ValueError("unknown named element %r" % (which,))


# ---------------------------------------------------------------------------
# involutions


def involution_inverse(s: GroupRingElem) -> GroupRingElem:
    """Termwise matrix inverse; a ring anti-automorphism."""
    return GroupRingElem(s.n, {m.inverse(): c for m, c in s.terms.items()})


def involution_transpose(s: GroupRingElem) -> GroupRingElem:
    """Termwise matrix transpose; a ring anti-automorphism."""
    return GroupRingElem(s.n, {m.transpose(): c for m, c in s.terms.items()})


# ---------------------------------------------------------------------------
# the identity catalogue


def _pieces(n: int):
    e = GroupRingElem.identity(n)
    eps = minus_identity(n)
    tau = reversal(n)
    P = difference_matrix(n)
    Pi = suffix_sum_matrix(n)
    return e, eps, tau, P, Pi


def _cat_reversal_shuffle(n):
    # decomposition of the reversal symmetriser through shuffle elements
    e, eps, tau, P, Pi = _pieces(n)
    lhs = e + (-1) ** n * GroupRingElem.from_matrix(tau)
    rhs = GroupRingElem.zero(n)
    for j in range(1, n):
        rhs = rhs + (-1) ** (n - j - 1) * (
            shuffle_element(n, j) * partial_reversal(n, j)
        )
    return [(lhs, rhs)]


def _cat_reversal_harmonic(n):
    # companion decomposition for e - eps tau P tau P^(-1)
    e, eps, tau, P, Pi = _pieces(n)
    sh1 = shuffle_element(n, 1)
    sgn = (-1) ** n
    A = eps * tau * P * tau * Pi                       # eps tau P tau P^-1
    B = eps * P * tau * Pi * tau * P * tau * Pi        # eps P tau P^-1 tau P tau P^-1
    tail = P * tau * Pi * tau * P * tau * Pi           # P tau P^-1 tau P tau P^-1
    lhs = e - GroupRingElem.from_matrix(A)
    rhs = sh1 * (e + sgn * GroupRingElem.from_matrix(B)) - sgn * (
        product(GroupRingElem.from_matrix(eps * P), e + sgn * GroupRingElem.from_matrix(tau))
        * Pi * sh1 * tail
    )
    return [(lhs, rhs)]


def _cat_cyclic_embed(n):
    # cyclic identity in degree n+1 and its n x n projection
    m = n + 1
    e1 = GroupRingElem.identity(m)
    sh1_up = GroupRingElem(
        m, {perm_matrix(embed_perm(p, m)): c for p, c in _sh1_perms(n).items()}
    )
    C = perm_matrix(cycle_perm(m, tuple(range(1, m + 1))))
    Tp = perm_matrix(cycle_perm(m, (1, m)))
    pairs = [(e1 + sh1_up * C, product(C, e1 + sh1_up * Tp))]
    # projected version
    e = GroupRingElem.identity(n)
    sh1 = shuffle_element(n, 1)
    Cp = projected_cycle(n)
    Tpp = projected_transposition(n)
    pairs.append((e + sh1 * Cp, product(Cp, e + sh1 * Tpp)))
    return pairs


def _sh1_perms(n):
    # permutations of sh_1 in degree n, as images -> coefficient
    out = {}
    for v in range(1, n + 1):
        out[cycle_perm(n, tuple(range(v, 0, -1)))] = 1
    return out


def _cat_proj_factor(n):
    # factorisations of the projected matrices through eps, tau, P
    e, eps, tau, P, Pi = _pieces(n)
    pairs = [
        (
            GroupRingElem.from_matrix(projected_transposition(n)),
            GroupRingElem.from_matrix(eps * cyclic_matrix(n) * Pi * tau * P * tau),
        ),
        (
            GroupRingElem.from_matrix(projected_cycle(n)),
            GroupRingElem.from_matrix(eps * tau * Pi * tau * P),
        ),
        # transpose relation used for the index-pair congruence
        (
            GroupRingElem.from_matrix(eps * tau * P * tau * Pi),
            GroupRingElem.from_matrix(projected_cycle(n).transpose()),
        ),
    ]
    return pairs


def _cat_proj_inverse(n):
    # inverse formulas for the projected matrices
    e, eps, tau, P, Pi = _pieces(n)
    Tp = projected_transposition(n)
    Cp = projected_cycle(n)
    first_col = tuple(
        tuple(-1 if j == 0 else (1 if i + 1 == j else 0) for j in range(n)) for i in range(n)
    )
    explicit_inv = IntMatrix(first_col)  # -1 down the first column, 1 above the diagonal
    pairs = [
        (GroupRingElem.from_matrix(Tp.inverse()), GroupRingElem.from_matrix(Tp)),
        (GroupRingElem.from_matrix(Cp.inverse()), GroupRingElem.from_matrix(tau * Cp * tau)),
        (GroupRingElem.from_matrix(Cp.inverse()), GroupRingElem.from_matrix(explicit_inv)),
        # inverse of the transpose, spelled out row-wise: all -1 across the
        # first row, 1 below the diagonal
        (
            GroupRingElem.from_matrix((eps * tau * P * tau * Pi).inverse()),
            GroupRingElem.from_matrix(Cp.inverse().transpose()),
        ),
    ]
    return pairs


def _cat_shuffle_cyclic(n):
    # first/last shuffle elements as sums of cycles; sh_1 C = sh_{n-1}
    descending = GroupRingElem(
        n, {perm_matrix(cycle_perm(n, tuple(range(v, 0, -1)))): 1 for v in range(1, n + 1)}
    )
    ascending = GroupRingElem(
        n, {perm_matrix(cycle_perm(n, tuple(range(v, n + 1)))): 1 for v in range(1, n + 1)}
    )
    sh1 = shuffle_element(n, 1)
    shl = shuffle_element(n, n - 1)
    return [
        (sh1, descending),
        (shl, ascending),
        (sh1 * cyclic_matrix(n), shl),
    ]


def _cat_cyclic_key(n):
    # the cyclic identity rewritten through the factorised projections
    e, eps, tau, P, Pi = _pieces(n)
    sh1 = shuffle_element(n, 1)
    shl = shuffle_element(n, n - 1)
    A = tau * Pi * tau * P      # tau P^-1 tau P
    B = Pi * tau * P * tau      # P^-1 tau P tau
    lhs = e + product(GroupRingElem.from_matrix(eps), sh1, A)
    rhs = product(GroupRingElem.from_matrix(eps * A), e + product(GroupRingElem.from_matrix(eps), shl, B))
    return [(lhs, rhs)]


def _cat_cyclic_key_right(n):
    e, eps, tau, P, Pi = _pieces(n)
    sh1 = shuffle_element(n, 1)
    shl = shuffle_element(n, n - 1)
    A = tau * Pi * tau * P
    B = Pi * tau * P * tau
    lhs = e - GroupRingElem.from_matrix(eps * B)
    rhs = sh1 - product(GroupRingElem.from_matrix(eps * A), shl, GroupRingElem.from_matrix(B * B))
    return [(lhs, rhs)]


def _cat_cyclic_key_flip(n):
    # transpose-inverse image of the right-multiplied restatement
    e, eps, tau, P, Pi = _pieces(n)
    sh1 = shuffle_element(n, 1)
    D = P * tau * Pi            # P tau P^-1
    lhs = e - GroupRingElem.from_matrix(eps * tau * P * tau * Pi)
    rhs = sh1 - product(
        GroupRingElem.from_matrix(eps * D), sh1, GroupRingElem.from_matrix(D * tau * D)
    )
    pairs = [(lhs, rhs)]
    # and it really is the involution image of the previous identity
    prev_l, prev_r = _cat_cyclic_key_right(n)[0]
    ti = lambda s: involution_transpose(involution_inverse(s))
    pairs.append((ti(prev_l), lhs))
    pairs.append((ti(prev_r), rhs))
    return pairs


def _cat_reversal_alt(n):
    # alternate route to the reversal congruence, in two steps
    e, eps, tau, P, Pi = _pieces(n)
    shl = shuffle_element(n, n - 1)
    sgn = (-1) ** n
    lhs1 = GroupRingElem.from_matrix(eps * P * tau) - GroupRingElem.from_matrix(tau * P)
    rhs1 = -product(GroupRingElem.from_matrix(P), shl, GroupRingElem.from_matrix(Pi * tau * P)) + product(
        GroupRingElem.from_matrix(eps * tau * P), shl, GroupRingElem.from_matrix(Pi * tau * P * tau)
    )
    refl_plain = e + sgn * GroupRingElem.from_matrix(tau)
    refl_signed = e + sgn * GroupRingElem.from_matrix(eps * tau)
    lhs2 = refl_signed * P
    rhs2 = (
        sgn * product(GroupRingElem.from_matrix(eps * P), shl, GroupRingElem.from_matrix(Pi * tau * P)) * refl_signed
        - product(refl_plain, GroupRingElem.from_matrix(P), shl, GroupRingElem.from_matrix(Pi * tau * P * tau))
        + GroupRingElem.from_matrix(P) * refl_plain
    )
    return [(lhs1, rhs1), (lhs2, rhs2)]


def _cat_reversal_split(n):
    # the decomposition behind the strengthened reversal congruence
    e, eps, tau, P, Pi = _pieces(n)
    sgn = (-1) ** n
    lhs = e + sgn * GroupRingElem.from_matrix(eps * tau)
    rhs = product(
        GroupRingElem.from_matrix(P), e + sgn * GroupRingElem.from_matrix(tau), GroupRingElem.from_matrix(Pi)
    ) - sgn * (
        (e - GroupRingElem.from_matrix(eps * tau * P * tau * Pi))
        * GroupRingElem.from_matrix(P * tau * Pi)
    )
    return [(lhs, rhs)]


CATALOG = {
    "reversal.shuffle": _cat_reversal_shuffle,
    "reversal.harmonic": _cat_reversal_harmonic,
    "cyclic.embed": _cat_cyclic_embed,
    "proj.factor": _cat_proj_factor,
    "proj.inverse": _cat_proj_inverse,
    "shuffle.cyclic": _cat_shuffle_cyclic,
    "cyclic.key": _cat_cyclic_key,
    "cyclic.key.right": _cat_cyclic_key_right,
    "cyclic.key.flip": _cat_cyclic_key_flip,
    "reversal.alt": _cat_reversal_alt,
    "reversal.split": _cat_reversal_split,
}


def identity_names() -> list[str]:
    return sorted(CATALOG)


def verify_identity(name: str, n: int) -> bool:
    """Expand both sides of a named identity in dimension n and compare."""
    if name not in CATALOG:
        raise ValueError("unknown identity %r (have %s)" % (name, ", ".join(identity_names())))
    if n < 2:
        raise ValueError("identities need n >= 2")
    return all(lhs == rhs for lhs, rhs in CATALOG[name](n))
