import itertools

import pytest
from hypothesis import given, settings, strategies as st

from pmodcalc.linalg import (FieldSpec, Matrix, NoFactorization,
                             cokernel_projection, factor_through, hstack,
                             image_basis, kernel_basis, rank, rref,
                             solve, solve_left, vstack)
from pmodcalc import linalg


def gf(p):
    return FieldSpec(p)


def enumerate_span_gf2(vectors, length):
    """All GF(2) combinations of the given vectors, as a set of tuples."""
    span = {tuple([0] * length)}
    for v in vectors:
        v = tuple(v)
        span |= {tuple(a ^ b for a, b in zip(s, v)) for s in span}
    return span


class TestFieldSpec:
    def test_accepts_primes(self):
        for p in (2, 3, 5, 31, 2**31 - 1):
            assert FieldSpec(p).p == p

    def test_rejects_composites_and_range(self):
        for bad in (0, 1, 4, 9, 2**31):
            with pytest.raises(ValueError):
                FieldSpec(bad)

    def test_inverse(self):
        f = gf(7)
        for a in range(1, 7):
            assert (a * f.inv(a)) % 7 == 1


class TestRank:
    def test_identity(self):
        assert rank(Matrix.identity(gf(2), 3)) == 3

    def test_zero(self):
        assert rank(Matrix.zeros(gf(2), 2, 5)) == 0

    def test_all_ones_gf2(self):
        # Oracle: the row space of [[1,1],[1,1]] over GF(2) has 2^1 vectors.
        m = Matrix(gf(2), 2, 2, [[1, 1], [1, 1]])
        span = enumerate_span_gf2(m.rows(), 2)
        assert len(span) == 2
        assert rank(m) == 1

    def test_zero_shapes(self):
        assert rank(Matrix.zeros(gf(3), 0, 4)) == 0
        assert rank(Matrix.zeros(gf(3), 4, 0)) == 0


class TestKernel:
    def test_identity_has_no_kernel(self):
        k = kernel_basis(Matrix.identity(gf(2), 2))
        assert k.shape == (2, 0)

    def test_zero_map_kernel_is_everything(self):
        k = kernel_basis(Matrix.zeros(gf(5), 1, 3))
        assert k.shape == (3, 3)
        assert rank(k) == 3

    def test_sum_map_gf2(self):
        # Oracle: of the 4 vectors in GF(2)^2, exactly (0,0) and (1,1)
        # are killed by [1 1].
        m = Matrix(gf(2), 1, 2, [[1, 1]])
        killed = [v for v in itertools.product((0, 1), repeat=2)
                  if (v[0] + v[1]) % 2 == 0]
        assert sorted(killed) == [(0, 0), (1, 1)]
        k = kernel_basis(m)
        assert k.shape == (2, 1)
        assert (k[0, 0], k[1, 0]) == (1, 1)


class TestImage:
    def test_identity(self):
        b = image_basis(Matrix.identity(gf(2), 3))
        assert b == Matrix.identity(gf(2), 3)

    def test_zero(self):
        assert image_basis(Matrix.zeros(gf(2), 3, 2)).shape == (3, 0)

    def test_repeated_column_gf3(self):
        # Oracle: the column span of [[1,0],[1,0]] over GF(3) is
        # {(0,0), (1,1), (2,2)}, one dimensional.
        m = Matrix(gf(3), 2, 2, [[1, 0], [1, 0]])
        span = {((a * 1) % 3, (a * 1) % 3) for a in range(3)}
        assert len(span) == 3
        b = image_basis(m)
        assert b.shape == (2, 1)
        assert (b[0, 0], b[1, 0]) == (1, 1)


class TestCokernelProjection:
    def test_identity_vanishes(self):
        q = cokernel_projection(Matrix.identity(gf(2), 3))
        assert q.shape == (0, 3)

    def test_zero_is_identity(self):
        q = cokernel_projection(Matrix.zeros(gf(3), 2, 4))
        assert q == Matrix.identity(gf(3), 2)

    def test_diagonal_vector(self):
        m = Matrix(gf(2), 2, 1, [[1], [1]])
        q = cokernel_projection(m)
        assert q.shape == (1, 2)
        assert (q @ m).is_zero()
        assert rank(q) == 1


class TestFactorThrough:
    def test_f_equals_g(self):
        g = Matrix(gf(5), 2, 2, [[1, 2], [3, 4]])
        h = factor_through(g, g)
        assert g @ h == g

    def test_zero_factors_as_zero(self):
        g = Matrix(gf(2), 2, 1, [[1], [0]])
        f = Matrix.zeros(gf(2), 2, 3)
        assert factor_through(f, g).is_zero()

    def test_matrix_through_its_image_basis(self):
        m = Matrix(gf(3), 3, 4, [[1, 2, 0, 1], [0, 1, 1, 1], [1, 0, 1, 2]])
        b = image_basis(m)
        h = factor_through(m, b)
        assert b @ h == m

    def test_no_factorization(self):
        g = Matrix(gf(2), 2, 1, [[1], [0]])
        f = Matrix(gf(2), 2, 1, [[0], [1]])
        with pytest.raises(NoFactorization):
            factor_through(f, g)


class TestSolveLeft:
    def test_unique_against_surjection(self):
        q = Matrix(gf(2), 2, 3, [[1, 0, 1], [0, 1, 1]])
        r = Matrix(gf(2), 1, 3, [[1, 1, 0]])
        h = solve_left(q, r)
        assert h @ q == r

    def test_inconsistent(self):
        q = Matrix.zeros(gf(2), 1, 2)
        r = Matrix(gf(2), 1, 2, [[1, 0]])
        with pytest.raises(NoFactorization):
            solve_left(q, r)


class TestStacksAndSums:
    def test_hstack_vstack_shapes(self):
        a = Matrix(gf(2), 2, 1, [[1], [0]])
        b = Matrix(gf(2), 2, 2, [[0, 1], [1, 1]])
        assert hstack([a, b]).shape == (2, 3)
        assert vstack([a.transpose(), b]).shape == (3, 2)

    def test_direct_sum_block_structure(self):
        a = Matrix(gf(3), 1, 2, [[1, 2]])
        b = Matrix(gf(3), 2, 1, [[1], [2]])
        d = linalg.direct_sum([a, b])
        assert d.shape == (3, 3)
        assert d.to_lists() == [[1, 2, 0], [0, 0, 1], [0, 0, 2]]

    def test_multiply_zero_dims(self):
        a = Matrix.zeros(gf(2), 0, 3)
        b = Matrix.zeros(gf(2), 3, 2)
        assert (a @ b).shape == (0, 2)


# -- randomized properties -----------------------------------------------------

primes = st.sampled_from([2, 3, 5])


@st.composite
def matrices(draw, max_dim=4, p=None):
    if p is None:
        p = draw(primes)
    rows = draw(st.integers(0, max_dim))
    cols = draw(st.integers(0, max_dim))
    entries = [[draw(st.integers(0, p - 1)) for _ in range(cols)]
               for _ in range(rows)]
    return Matrix(FieldSpec(p), rows, cols, entries)


@settings(max_examples=120, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).ncols == m.ncols


@settings(max_examples=120, deadline=None)
@given(matrices())
def test_kernel_columns_are_killed_and_independent(m):
    k = kernel_basis(m)
    assert (m @ k).is_zero()
    assert rank(k) == k.ncols


@settings(max_examples=120, deadline=None)
@given(matrices())
def test_cokernel_projection_contract(m):
    q = cokernel_projection(m)
    assert q.nrows == m.nrows - rank(m)
    assert (q @ m).is_zero()
    assert rank(q) == q.nrows


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_image_basis_spans_columns(m):
    b = image_basis(m)
    assert b.ncols == rank(m)
    # every column of m factors through the basis
    h = factor_through(m, b)
    assert b @ h == m


@settings(max_examples=100, deadline=None)
@given(matrices(), st.integers(0, 3))
def test_solve_recovers_products(a, k):
    x = Matrix(a.field, a.ncols, k,
               [[(i * 7 + j * 3) % a.field.p for j in range(k)]
                for i in range(a.ncols)])
    b = a @ x
    y = solve(a, b)
    assert a @ y == b


@settings(max_examples=60, deadline=None)
@given(matrices(max_dim=3))
def test_rref_is_idempotent(m):
    red, pivots = rref(m)
    red2, pivots2 = rref(red)
    assert red2 == red
    assert pivots2 == pivots


def test_results_deterministic():
    m = Matrix(gf(5), 3, 4, [[1, 2, 3, 4], [2, 4, 1, 3], [0, 0, 4, 1]])
    assert kernel_basis(m) == kernel_basis(Matrix(gf(5), 3, 4, m.to_lists()))
    assert image_basis(m) == image_basis(Matrix(gf(5), 3, 4, m.to_lists()))
    assert cokernel_projection(m) == cokernel_projection(
        Matrix(gf(5), 3, 4, m.to_lists()))


def test_gf2_fast_path_matches_generic():
    # The GF(2) bitmask path and the generic modular path must agree on
    # the canonical reduced echelon form (it is unique).
    rows = [[1, 0, 1, 1], [0, 1, 1, 0], [1, 1, 0, 1]]
    m2 = Matrix(gf(2), 3, 4, rows)
    red, piv = rref(m2)
    red_generic, piv_generic = linalg._rref_modp([r[:] for r in rows], 4, 2)
    assert red.to_lists() == red_generic
    assert list(piv) == piv_generic


def test_matrix_immutable():
    m = Matrix.identity(gf(2), 2)
    with pytest.raises(AttributeError):
        m.nrows = 3
