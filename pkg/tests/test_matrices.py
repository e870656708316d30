import itertools
from fractions import Fraction

import pytest

from simspec.errors import NotSimpleSpectrumError, ResourceGuardError, SingularMatrixError
from simspec.fields import QQ, PrimeField, field_cmp
from simspec.matrices import (
    Mat,
    charpoly,
    conjugate,
    det,
    diagonalizer,
    eigs_in_field,
    enumerate_GL,
    inverse,
    nullspace_basis,
    order_gl,
    rank,
    sigma,
)
from simspec.sampling import random_invertible, random_matrix


# -- independent oracle: characteristic polynomial by Leibniz expansion ------

def _charpoly_leibniz(M):
    """Coefficients of det(xI - M) via the permutation sum, with polynomial
    coefficient arithmetic.  Exponential; for cross-checking n <= 4 only."""
    field = M.field
    n = M.n
    zero, one = field.zero, field.one

    def poly_mul(a, b):
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return out

    total = [zero] * (n + 1)
    for perm in itertools.permutations(range(n)):
        sign = one
        seen = [False] * n
        for start in range(n):
            if seen[start]:
                continue
            length = 0
            v = start
            while not seen[v]:
                seen[v] = True
                v = perm[v]
                length += 1
            if length % 2 == 0:
                sign = -sign
        term = [one]
        for i in range(n):
            if perm[i] == i:
                term = poly_mul(term, [-M[i, i], one])  # (x - M_ii), ascending
            else:
                term = poly_mul(term, [-M[i, perm[i]]])
        term = [sign * c for c in term]
        for k, c in enumerate(term):
            total[k] = total[k] + c
    # ascending -> descending, i.e. [1, c1, ..., cn]
    return tuple(reversed(total))


def test_rank_examples():
    assert rank(Mat.zeros(QQ, 4)) == 0
    stair = Mat(QQ, [[0, 1, 0, -1], [0, 0, 0, 0], [0, -1, 0, 1], [0, 0, 0, 0]])
    assert rank(stair) == 1
    stair0 = Mat(QQ, [[0, 1, 0, 0], [0, 0, 0, 0], [0, -1, 0, 1], [0, 0, 0, 0]])
    assert rank(stair0) == 2


def test_rank_invariance_under_gl(rng, field):
    for _ in range(25):
        n = rng.choice([2, 3, 4])
        M = random_matrix(field, n, rng)
        g = random_invertible(field, n, rng)
        h = random_invertible(field, n, rng)
        assert rank(g @ M @ h) == rank(M)


def test_sigma_examples():
    D = Mat.diag(QQ, [1, 2, 3])
    assert sigma(D, 1) == QQ.elem(6)
    assert sigma(D, 2) == QQ.elem(11)
    assert sigma(D, 3) == QQ.elem(6)
    assert sigma(Mat.identity(QQ, 5), 5) == QQ.one


def test_sigma_trace_det_and_leibniz(rng, field):
    for _ in range(15):
        n = rng.choice([2, 3, 4])
        M = random_matrix(field, n, rng, height=5)
        got = charpoly(M)
        assert got == _charpoly_leibniz(M)
        tr = M[0, 0]
        for i in range(1, n):
            tr = tr + M[i, i]
        assert sigma(M, 1) == tr
        assert sigma(M, n) == det(M)


def test_sigma_conjugation_invariant(rng, field):
    for _ in range(20):
        n = rng.choice([2, 3, 4])
        M = random_matrix(field, n, rng)
        g = random_invertible(field, n, rng)
        gM = conjugate(g, M)
        for t in range(1, n + 1):
            assert sigma(gM, t) == sigma(M, t)


def test_sigma_elementary_symmetric_exhaustive():
    F3 = PrimeField(3)
    for n in (2, 3, 4):
        for vals in itertools.product(range(3), repeat=n):
            D = Mat.diag(F3, vals)
            elems = [F3.elem(v) for v in vals]
            for t in range(1, n + 1):
                want = F3.zero
                for comb in itertools.combinations(elems, t):
                    term = F3.one
                    for e in comb:
                        term = term * e
                    want = want + term
                assert sigma(D, t) == want


def test_eigs_examples():
    assert eigs_in_field(Mat.diag(QQ, [0, 1])) == [(QQ.zero, 1), (QQ.one, 1)]
    assert eigs_in_field(Mat.unit(QQ, 2, 1, 2)) == [(QQ.zero, 2)]
    comp = Mat(QQ, [[0, 2], [1, 0]])  # roots sqrt(2), irrational
    # rational-root candidates all fail, so no eigenvalues in Q
    coeffs = charpoly(comp)
    for cand in (2, 1, -1, -2):
        x = QQ.elem(cand)
        val = coeffs[0]
        for c in coeffs[1:]:
            val = val * x + c
        assert not val.is_zero()
    assert eigs_in_field(comp) == []


def test_eigs_match_det_roots_fp(rng):
    F7 = PrimeField(7)
    ident = Mat.identity(F7, 3)
    for _ in range(20):
        M = random_matrix(F7, 3, rng)
        got = dict(eigs_in_field(M))
        for a in F7.elements():
            is_root = det(M - ident * a).is_zero()
            assert (a in got) == is_root
        assert sum(got.values()) <= 3


def test_eigs_multiplicity():
    M = Mat.diag(QQ, [2, 2, 5])
    assert eigs_in_field(M) == [(QQ.elem(2), 2), (QQ.elem(5), 1)]
    F5 = PrimeField(5)
    M = Mat.diag(F5, [1, 1, 1])
    assert eigs_in_field(M) == [(F5.one, 3)]


def test_eigs_rational_fractions():
    M = Mat.diag(QQ, [Fraction(1, 2), Fraction(-3, 4)])
    assert eigs_in_field(M) == [(QQ.elem(Fraction(-3, 4)), 1), (QQ.elem(Fraction(1, 2)), 1)]


def test_diagonalizer_examples():
    A = Mat.diag(QQ, [0, 1, 2])
    g, eigs = diagonalizer(A)
    assert g == Mat.identity(QQ, 3)
    assert eigs == [QQ.zero, QQ.one, QQ.elem(2)]

    A = Mat.diag(QQ, [2, 0, 1])
    g, eigs = diagonalizer(A)
    assert eigs == [QQ.zero, QQ.one, QQ.elem(2)]
    assert conjugate(g, A) == Mat.diag(QQ, [0, 1, 2])
    # permutation matrix: one 1 per row/column
    ones = sum(1 for row in g.rows for e in row if e == QQ.one)
    zeros = sum(1 for row in g.rows for e in row if e.is_zero())
    assert ones == 3 and zeros == 6

    F5 = PrimeField(5)
    A = Mat(F5, [[0, 1], [1, 0]])
    g, eigs = diagonalizer(A)
    assert [e.value for e in eigs] == [1, 4]
    assert conjugate(g, A) == Mat.diag(F5, [1, 4])


def test_diagonalizer_property(rng, field):
    for _ in range(20):
        n = rng.choice([2, 3, 4])
        pool = list(range(-6, 7)) if field.is_rationals else list(range(field.p))
        vals = rng.sample(pool, n)
        g0 = random_invertible(field, n, rng)
        A = conjugate(g0, Mat.diag(field, vals))
        g, eigs = diagonalizer(A)
        assert conjugate(g, A) == Mat.diag(field, eigs)
        assert all(field_cmp(a, b) < 0 for a, b in zip(eigs, eigs[1:]))


def test_diagonalizer_rejects_non_simple():
    with pytest.raises(NotSimpleSpectrumError):
        diagonalizer(Mat.unit(QQ, 2, 1, 2))
    with pytest.raises(NotSimpleSpectrumError):
        diagonalizer(Mat(QQ, [[0, 2], [1, 0]]))


def test_conjugate_examples(rng):
    A1, A2 = Mat.diag(QQ, [0, 1]), Mat.unit(QQ, 2, 1, 2)
    assert conjugate(Mat.identity(QQ, 2), (A1, A2)) == (A1, A2)
    g = Mat.diag(QQ, [2, 1])
    got = conjugate(g, (A1, A2))
    assert got == (A1, A2 * QQ.elem(2))
    with pytest.raises(SingularMatrixError):
        conjugate(Mat.zeros(QQ, 2), A1)


def test_conjugate_action_property(rng, field):
    for _ in range(15):
        n = rng.choice([2, 3])
        g = random_invertible(field, n, rng)
        h = random_invertible(field, n, rng)
        P = (random_matrix(field, n, rng), random_matrix(field, n, rng))
        assert conjugate(g @ h, P) == conjugate(g, conjugate(h, P))


def test_nullspace_basis(rng, field):
    for _ in range(10):
        n = rng.choice([2, 3, 4])
        M = random_matrix(field, n, rng)
        basis = nullspace_basis(M)
        assert len(basis) == n - rank(M)
        for v in basis:
            col = Mat(field, [[x] for x in v])
            assert (M @ col).is_zero()


def test_enumerate_gl_counts():
    assert sum(1 for _ in enumerate_GL(1, 2)) == 1
    assert sum(1 for _ in enumerate_GL(2, 2)) == 6
    assert sum(1 for _ in enumerate_GL(2, 3)) == 48
    assert sum(1 for _ in enumerate_GL(2, 5)) == order_gl(2, 5) == 480
    assert sum(1 for _ in enumerate_GL(3, 2)) == order_gl(3, 2) == 168
    assert sum(1 for _ in enumerate_GL(3, 3)) == order_gl(3, 3) == 11232


def test_enumerate_gl_unique_and_invertible():
    seen = set()
    for g in enumerate_GL(2, 3):
        assert not det(g).is_zero()
        assert g not in seen
        seen.add(g)
    assert len(seen) == 48


def test_enumerate_gl_guard():
    with pytest.raises(ResourceGuardError):
        list(enumerate_GL(4, 2))
    with pytest.raises(ResourceGuardError):
        list(enumerate_GL(3, 5, max_order=1000))


def test_inverse_roundtrip(rng, field):
    for _ in range(10):
        n = rng.choice([2, 3, 4])
        g = random_invertible(field, n, rng)
        assert g @ inverse(g) == Mat.identity(field, n)
    with pytest.raises(SingularMatrixError):
        inverse(Mat.zeros(QQ, 3))
