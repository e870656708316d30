"""Interpolation polynomials that pick out diagonal entries.

For pairwise distinct a1..an, idempotent_poly(a, t) is the degree-< n
polynomial in x1 with value E_tt at diag(a): the Lagrange basis polynomial
through (a_s, delta_st).  entry_probe_poly(a, i, j) = H_i x2 H_j then isolates
the (i, j) entry of the second matrix: it evaluates to (A2)_ij E_ij on
(diag(a), A2).
"""

from __future__ import annotations

from functools import lru_cache

from .ncpoly import NcPoly


def _check_distinct(a):
    if len(set(a)) != len(a):
        raise ValueError("eigenvalues must be pairwise distinct")


@lru_cache(maxsize=8192)
def _idempotent_cached(a: tuple, t: int) -> NcPoly:
    field = a[0].field
    n = len(a)
    # numerator prod_{s != t} (x - a_s) as ascending coefficient list
    coeffs = [field.one]
    for s in range(n):
        if s == t - 1:
            continue
        root = a[s]
        nxt = [field.zero] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] = nxt[k + 1] + c
            nxt[k] = nxt[k] - c * root
        coeffs = nxt
    denom = field.one
    for s in range(n):
        if s != t - 1:
            denom = denom * (a[t - 1] - a[s])
    scale = denom.inverse()
    terms = {(1,) * k: c * scale for k, c in enumerate(coeffs)}
    return NcPoly(field, 1, terms)


def idempotent_poly(a, t: int) -> NcPoly:
    """Polynomial H in x1 with formal degree < n and H(diag(a)) = E_tt."""
    a = tuple(a)
    _check_distinct(a)
    if not 1 <= t <= len(a):
        raise ValueError("t out of range")
    poly = _idempotent_cached(a, t)
    assert poly.formal_degree < len(a)
    return poly


@lru_cache(maxsize=8192)
def _entry_probe_cached(a: tuple, i: int, j: int) -> NcPoly:
    field = a[0].field
    x2 = NcPoly.letter(field, 2, m=2)
    hi = _idempotent_cached(a, i)
    hj = _idempotent_cached(a, j)
    out = hi * x2 * hj
    return NcPoly(field, 2, dict(out.terms()))


def entry_probe_poly(a, i: int, j: int) -> NcPoly:
    """H_i x2 H_j; evaluates to (A2)_ij E_ij on (diag(a), A2)."""
    a = tuple(a)
    _check_distinct(a)
    n = len(a)
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("entry position out of range")
    poly = _entry_probe_cached(a, i, j)
    assert poly.formal_degree <= 2 * n - 1
    return poly
