from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobkit import linalg
from frobkit.algebra import Element, function_algebra, truncated_polynomial_algebra

from conftest import rationals


def leibniz(m):
    """Determinant by the permutation expansion."""
    n = len(m)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1) ** inversions
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total


def square(n):
    return st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n)


matrices = st.integers(1, 5).flatmap(square)


@given(matrices)
def test_det_matches_leibniz(m):
    assert linalg.det(m) == leibniz(m)


@given(matrices)
def test_int_det_matches_leibniz_on_integer_matrices(m):
    ints = [[int(x * 12) for x in row] for row in m]
    assert linalg.int_det(ints) == leibniz(ints)


def test_det_singular_and_pivoting():
    assert linalg.det([[0, 1], [1, 0]]) == -1
    assert linalg.det([[1, 2], [2, 4]]) == 0
    assert linalg.det([[0, 0], [0, 1]]) == 0
    assert linalg.det([]) == 1


@given(matrices, st.data())
def test_solve_returns_a_solution(m, data):
    n = len(m)
    x = [data.draw(rationals) for _ in range(n)]
    b = linalg.matvec(m, x)
    y = linalg.solve(m, b)
    assert y is not None and linalg.matvec(m, y) == b


def test_solve_inconsistent():
    assert linalg.solve([[1, 1], [2, 2]], [1, 3]) is None


@given(matrices)
def test_rank_nullity(m):
    n = len(m)
    kernel = linalg.nullspace(m)
    assert linalg.rank(m) + len(kernel) == n
    for v in kernel:
        assert not any(linalg.matvec(m, v))


@given(matrices)
def test_inverse(m):
    n = len(m)
    if leibniz(m) == 0:
        with pytest.raises(ZeroDivisionError):
            linalg.inverse(m)
        return
    inv = linalg.inverse(m)
    identity = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    assert linalg.matmul(m, inv) == identity


def test_left_inverse_of_tall_matrix():
    m = [[1, 0], [1, 1], [0, 2]]
    left = linalg.left_inverse(m)
    assert linalg.matmul(left, m) == [[1, 0], [0, 1]]


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), square(n))))
def test_ring_det_over_function_algebra_is_componentwise(pair):
    m0, m1 = pair
    A = function_algebra(["x", "y"])
    n = len(m0)
    mat = [[Element(A, [m0[i][j], m1[i][j]]) for j in range(n)] for i in range(n)]
    d = linalg.ring_det(mat, A.one(), A.zero())
    assert list(d.coords) == [leibniz(m0), leibniz(m1)]


def test_ring_det_over_dual_numbers():
    # det [[1+e, 1], [e, 1]] = 1 + e - e = 1
    D = truncated_polynomial_algebra(2, "e")
    mat = [[D.element([1, 1]), D.one()], [D.element([0, 1]), D.one()]]
    assert linalg.ring_det(mat, D.one(), D.zero()) == D.one()
