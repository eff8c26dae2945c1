import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from graphcurves import linalg


def frac(n, d=1):
    return Fraction(n, d)


def random_matrix(rng, rows, cols, rank):
    """Random integer matrix of prescribed rank."""
    while True:
        a = [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(min(rank, rows))]
        if linalg.rank(a) == rank:
            break
    out = list(a)
    while len(out) < rows:
        coeffs = [rng.randint(-3, 3) for _ in range(len(a))]
        out.append([sum(c * a[i][j] for i, c in enumerate(coeffs)) for j in range(cols)])
    rng.shuffle(out)
    return out


def test_kernel_identity_empty():
    ident = [[1, 0], [0, 1]]
    assert linalg.kernel(ident) == []


def test_kernel_single_relation():
    basis = linalg.kernel([[1, 1]])
    assert len(basis) == 1
    v = basis[0]
    assert v[0] + v[1] == 0 and v != [0, 0]


def test_kernel_random_rank5():
    rng = random.Random(42)
    m = random_matrix(rng, 5, 8, 5)
    basis = linalg.kernel(m)
    assert len(basis) == 3
    for v in basis:
        assert all(x == 0 for x in linalg.mat_vec(m, v))
    assert linalg.rank([list(v) for v in basis]) == 3


def test_rank_plus_nullity():
    rng = random.Random(3)
    for _ in range(20):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)]
             for _ in range(rows)]
        assert linalg.rank(m) + len(linalg.kernel(m)) == cols


def test_solve_identity():
    assert linalg.solve([[1, 0], [0, 1]], [frac(3), frac(5)]) == [3, 5]


def test_solve_inconsistent():
    assert linalg.solve([[1, 2], [2, 4]], [1, 3]) is None


def test_solve_underdetermined_verified_by_substitution():
    m = [[1, 2], [2, 4]]
    x = linalg.solve(m, [1, 2])
    assert x is not None
    assert linalg.mat_vec(m, x) == [1, 2]


def test_solve_random_consistent():
    rng = random.Random(11)
    for _ in range(25):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)]
        x0 = [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(cols)]
        b = linalg.mat_vec(m, x0)
        x = linalg.solve(m, b)
        assert x is not None and linalg.mat_vec(m, x) == b


def test_det_matches_cofactor_small():
    rng = random.Random(5)

    def cofactor_det(m):
        n = len(m)
        if n == 1:
            return Fraction(m[0][0])
        total = Fraction(0)
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * cofactor_det(minor)
        return total

    for _ in range(25):
        n = rng.randint(1, 4)
        m = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
             for _ in range(n)]
        assert linalg.det(m) == cofactor_det(m)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4),
                min_size=2, max_size=6))
def test_kernel_vectors_annihilate(rows):
    for v in linalg.kernel(rows):
        assert all(x == 0 for x in linalg.mat_vec(rows, v))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3),
                min_size=3, max_size=5))
def test_rank_agrees_with_rref(rows):
    _, pivots = linalg.rref(rows)
    assert linalg.rank(rows) == len(pivots)
