"""Oracle tests for the exact integer linear algebra core.

Every nontrivial algorithm is checked against either a slower
independent implementation (cofactor determinants, box enumeration)
or against defining properties that determine the result uniquely
(HNF/SNF canonical forms, unimodular transforms).
"""

import random
from fractions import Fraction

import pytest

from conics800 import exact


def _random_matrix(rng, rows, cols, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def _det_cofactor(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * _det_cofactor(minor)
    return total


def _unimodular(rng, n, steps=12):
    u = exact.identity(n)
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            exact._row_sub(u, i, j, rng.randint(-3, 3))
    if rng.random() < 0.5:
        i, j = rng.randrange(n), rng.randrange(n)
        u[i], u[j] = u[j], u[i]
    return u


def test_det_bareiss_against_cofactor_oracle():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 5)
        m = _random_matrix(rng, n, n)
        assert exact.det_bareiss(m) == _det_cofactor(m)


def test_hnf_canonical_under_unimodular_row_transforms():
    rng = random.Random(23)
    for _ in range(150):
        n = rng.randint(1, 5)
        c = rng.randint(1, 5)
        m = _random_matrix(rng, n, c)
        h1 = exact.hnf(m)
        u = _unimodular(rng, n)
        h2 = exact.hnf(exact.mat_mul(u, m))
        assert exact.nonzero_rows(h1) == exact.nonzero_rows(h2)


def test_hnf_transform_reproduces_hnf():
    rng = random.Random(5)
    for _ in range(100):
        m = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        h, u = exact.hnf(m, transform=True)
        assert exact.mat_mul(u, m) == h
        assert abs(exact.det_bareiss(u)) == 1


def test_hnf_preserves_row_span():
    rng = random.Random(37)
    for _ in range(100):
        m = _random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        h = exact.nonzero_rows(exact.hnf(m))
        for row in m:
            assert exact.solve_left(h, row) is not None
        for row in h:
            assert exact.solve_left(m, row) is not None


def test_hnf_insert_matches_batch_hnf():
    rng = random.Random(41)
    for _ in range(100):
        c = rng.randint(1, 5)
        rows = _random_matrix(rng, rng.randint(1, 4), c)
        extra = [rng.randint(-9, 9) for _ in range(c)]
        incremental = exact.hnf_insert(exact.nonzero_rows(exact.hnf(rows)), extra)
        batch = exact.nonzero_rows(exact.hnf(rows + [extra]))
        assert incremental == batch


def test_snf_defining_properties():
    rng = random.Random(59)
    for _ in range(200):
        n = rng.randint(1, 5)
        c = rng.randint(1, 5)
        m = _random_matrix(rng, n, c)
        d, left, right = exact.snf(m)
        prod = exact.mat_mul(exact.mat_mul(left, m), right)
        for i in range(n):
            for j in range(c):
                want = d[i] if i == j and i < len(d) else 0
                assert prod[i][j] == want
        assert abs(exact.det_bareiss(left)) == 1
        assert abs(exact.det_bareiss(right)) == 1
        for i in range(len(d) - 1):
            if d[i]:
                assert d[i] >= 0 and d[i + 1] % d[i] == 0
            else:
                assert d[i + 1] == 0


def test_snf_invariant_under_unimodular_transforms():
    rng = random.Random(61)
    for _ in range(100):
        n = rng.randint(2, 4)
        m = _random_matrix(rng, n, n)
        d1, _, _ = exact.snf(m)
        u = _unimodular(rng, n)
        v = _unimodular(rng, n)
        d2, _, _ = exact.snf(exact.mat_mul(exact.mat_mul(u, m), v))
        assert d1 == d2


def test_kernel_left_is_saturated_annihilator():
    rng = random.Random(67)
    for _ in range(100):
        n = rng.randint(2, 5)
        c = rng.randint(1, 4)
        m = _random_matrix(rng, n, c, lo=-4, hi=4)
        k = exact.kernel_left(m)
        for row in k:
            assert all(x == 0 for x in exact.vec_mat_mul(row, m))
        assert len(k) == n - exact.rank(m)
        if k:
            d, _, _ = exact.snf(k)
            assert all(x == 1 for x in d[: len(k)])


def test_solve_left_roundtrip_and_unsolvable():
    rng = random.Random(71)
    for _ in range(100):
        n = rng.randint(1, 4)
        c = rng.randint(1, 4)
        m = _random_matrix(rng, n, c)
        x = [rng.randint(-5, 5) for _ in range(n)]
        v = exact.vec_mat_mul(x, m)
        got = exact.solve_left(m, v)
        assert got is not None
        assert exact.vec_mat_mul(got, m) == v
    assert exact.solve_left([[2, 0], [0, 2]], [1, 0]) is None


def test_left_solver_matches_solve_left():
    rng = random.Random(73)
    m = _random_matrix(rng, 4, 5)
    solver = exact.LeftSolver(m)
    for _ in range(50):
        x = [rng.randint(-5, 5) for _ in range(4)]
        v = exact.vec_mat_mul(x, m)
        a = solver.solve(v)
        b = exact.solve_left(m, v)
        assert exact.vec_mat_mul(a, m) == v
        assert (a is None) == (b is None)


def test_solve_left_rational():
    m = [[2, 0], [0, 4]]
    got = exact.solve_left_rational(m, [1, 1])
    assert got == [Fraction(1, 2), Fraction(1, 4)]
    assert exact.solve_left_rational([[1, 2], [2, 4]], [0, 1]) is None


def test_signature_against_constructed_inertia():
    rng = random.Random(79)
    for _ in range(80):
        n = rng.randint(1, 5)
        signs = [rng.choice((1, -1, 0)) for _ in range(n)]
        diag = [[signs[i] * rng.randint(1, 6) if i == j else 0 for j in range(n)]
                for i in range(n)]
        u = _unimodular(rng, n)
        m = exact.mat_mul(exact.mat_mul(u, diag), exact.transpose(u))
        pos, neg, zero = exact.signature(m)
        assert pos == sum(1 for s in signs if s > 0)
        assert neg == sum(1 for s in signs if s < 0)
        assert zero == sum(1 for s in signs if s == 0)


def test_invariant_factors_drop_units():
    assert exact.invariant_factors([[2, 0], [0, 3]]) == (6,)
    assert exact.invariant_factors([[1, 0], [0, 1]]) == ()


def test_matrix_text_roundtrip(tmp_path):
    m = [[1, -2, 3], [0, 5, -8]]
    p = tmp_path / "m.txt"
    exact.write_matrix_text(p, m)
    assert exact.read_matrix_text(p) == m
    q = [[Fraction(1, 2), Fraction(-3, 4)]]
    exact.write_matrix_text(p, q)
    assert exact.read_matrix_text(p) == q


def test_hnf_contract_example():
    h = exact.nonzero_rows(exact.hnf([[2, 4], [4, 2]]))
    assert h == [[2, 4], [0, 6]]


def test_snf_contract_example():
    seed = [[4, 2, 0, 0, 0], [2, 4, 2, 0, 1], [0, 2, 4, 2, -1],
            [0, 0, 2, 4, 0], [0, 1, -1, 0, 4]]
    d, _, _ = exact.snf(seed)
    assert d == [1, 1, 2, 2, 40]
    assert exact.invariant_factors(seed) == (2, 2, 40)
    assert exact.det_bareiss(seed) == 160
