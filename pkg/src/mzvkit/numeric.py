"""Floating-point sanity oracle for zeta symbols.

``mzv_numeric`` evaluates the defining nested sum of an admissible index,
truncated at m_1 <= N, by tabulating the inner sums once per level
(O(N * depth) time), in configurable-precision arithmetic (gmpy2, default
96-bit mantissa).  The reported error bound covers the discarded tail:

    tail = sum_{m > N} F(m - 1) / m^{l_1}

where F bounds the inner nested sum.  Relaxing the ordering constraints
gives F(m) <= C * (1 + ln m)^k with k the number of inner parts equal to 1
and C the product of zeta(l_i) <= zeta(2) < 1.65 over the inner parts with
l_i >= 2.  Comparing with the integral of (1 + ln t)^k t^(-l_1) and
integrating by parts k times yields the closed-form bound used below; it is
conservative and decreases when N grows.

This module is a cross-check for exactly derived relations, not a
high-precision engine; no convergence acceleration is attempted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .words import Composition, check_composition, is_admissible_composition

# per-factor bound on sum 1/k^l for l >= 2 (zeta(2) = 1.6449...)
_ZETA_BOUND = 1.65

_precision = 96
_cache: dict[tuple, "NumericValue"] = {}


def set_precision(bits: int) -> None:
    """Mantissa precision of subsequent evaluations (>= 64 recommended)."""
    global _precision
    if bits < 53:
        raise ValueError("precision below double precision is pointless")
    _precision = bits


def get_precision() -> int:
    return _precision


class DivergentIndexError(ValueError):
    """Raised for indices with first part 1 (the nested sum diverges)."""


@dataclass
class NumericValue:
    """A truncated-sum value together with a bound on the truncation error."""

    value: object  # gmpy2.mpfr
    error_bound: float

    def __repr__(self):
        return "%s ± %.3g" % (self.value, self.error_bound)


def _tail_bound(c: Composition, n_trunc: int) -> float:
    s = c[0]
    k = sum(1 for p in c[1:] if p == 1)
    const = 1.0
    for p in c[1:]:
        if p >= 2:
            const *= _ZETA_BOUND
    # integral_N^inf (1 + ln t)^k t^(-s) dt, by parts k times:
    # N^(1-s) * sum_{r=0..k} k!/(k-r)! * (1 + ln N)^(k-r) / (s-1)^(r+1)
    L = 1.0 + math.log(n_trunc)
    total = 0.0
    falling = 1.0
    for r in range(k + 1):
        total += falling * L ** (k - r) / (s - 1) ** (r + 1)
        falling *= k - r
    return const * n_trunc ** (1 - s) * total


def mzv_numeric(c: Composition, n_trunc: int = 100_000) -> NumericValue:
    """Truncated nested sum of an admissible index with a rigorous-ish tail
    bound.  Results are cached per (index, N, precision)."""
    c = tuple(c)
    check_composition(c)
    if not is_admissible_composition(c):
        raise DivergentIndexError("index %r has first part 1" % (c,))
    if n_trunc < len(c):
        raise ValueError("truncation bound %d below depth %d" % (n_trunc, len(c)))
    key = (c, n_trunc, _precision)
    hit = _cache.get(key)
    if hit is not None:
        return hit
    depth = len(c)
    with gmpy2.context(precision=_precision):
        zero = gmpy2.mpfr(0)
        sums = [zero] * depth  # sums[i] = S_i(m) after processing m
        for m in range(1, n_trunc + 1):
            mf = gmpy2.mpfr(m)
            # ascending order: sums[i+1] still holds its value at m - 1
            for i in range(depth):
                inner = sums[i + 1] if i + 1 < depth else 1
                sums[i] += inner / mf ** c[i]
        value = sums[0]
    out = NumericValue(value, _tail_bound(c, n_trunc))
    _cache[key] = out
    return out


def check_relation_numeric(v, tol: float = 1e-3, n_trunc: int = 100_000) -> bool:
    """True when |sum coeff * value| <= tol + propagated truncation bounds."""
    residual = gmpy2.mpfr(0)
    bound = 0.0
    with gmpy2.context(precision=_precision):
        for comp, coeff in v.terms.items():
            if comp == ():
                residual += gmpy2.mpfr(coeff.numerator) / coeff.denominator
                continue
            nv = mzv_numeric(comp, n_trunc)
            q = Fraction(coeff)
            residual += nv.value * q.numerator / q.denominator
            bound += abs(float(q)) * nv.error_bound
    return abs(float(residual)) <= tol + bound
