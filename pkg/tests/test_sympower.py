from fractions import Fraction
from itertools import permutations, product
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobkit.algebra import (LinearMap, evaluation_hom, function_algebra, ground_field,
                             integer_combination, pullback_hom, tensor_elements)
from frobkit.charfn import psi, psi_sequence
from frobkit.sympower import (NotAlgebraHomomorphism, NotInImage, NotNHomomorphism,
                              br_F_from_f, br_f_from_F, correspondence, expected_dim,
                              is_algebra_hom, lambda_char_poly, spanning_powers,
                              sym_power_algebra, verify_key_formula)

from conftest import elements

Q = ground_field()


@st.composite
def n_hom_family(draw, max_dim=3, max_n=3):
    """A sum of n evaluation maps Q^X -> Q^Y (pullbacks) with |X|, |Y| <= 3."""
    d = draw(st.integers(1, max_dim))
    X = ["x", "y", "w"][:d]
    A = function_algebra(X)
    B = draw(st.sampled_from([Q, function_algebra(["u", "v"])]))
    n = draw(st.integers(1, max_n))
    f = LinearMap.zero(A, B)
    for _ in range(n):
        if B is Q:
            f = f + evaluation_hom(A, draw(st.sampled_from(X)))
        else:
            f = f + pullback_hom(A, B, {y: draw(st.sampled_from(X)) for y in B.labels})
    return f, n


def swap_tensor(t, d, perm):
    """Permute the tensor factors of a coordinate vector in A^{⊗n}."""
    n = len(perm)
    out = [None] * len(t)
    for idx in product(range(d), repeat=n):
        src = sum(i * d ** (n - 1 - k) for k, i in enumerate(idx))
        moved = [idx[perm[k]] for k in range(n)]
        dst = sum(i * d ** (n - 1 - k) for k, i in enumerate(moved))
        out[dst] = t[src]
    return out


def test_n_one_is_the_algebra_itself(Qxyw):
    S = sym_power_algebra(Qxyw, 1)
    assert S.dim == 3
    assert S.algebra.structure_constants == Qxyw.structure_constants
    assert S.algebra.unit == Qxyw.unit


def test_symmetric_square_of_two_points(Qxy):
    S = sym_power_algebra(Qxy, 2)
    assert S.dim == 3
    assert [sorted(ms) for ms in S.multisets] == [[0, 0], [0, 1], [1, 1]]
    # primitive idempotents of Q^3: s_xx, 2 s_xy, s_yy
    idem = [S.algebra.basis(0), 2 * S.algebra.basis(1), S.algebra.basis(2)]
    for i, u in enumerate(idem):
        assert u * u == u
        for v in idem[i + 1:]:
            assert (u * v).is_zero()
    assert idem[0] + idem[1] + idem[2] == S.algebra.one()


def test_dimension_formula(Qxyw):
    assert sym_power_algebra(Qxyw, 2).dim == 6 == expected_dim(Qxyw, 2)
    assert sym_power_algebra(Qxyw, 3).dim == comb(5, 3)
    with pytest.raises(ValueError):
        sym_power_algebra(Qxyw, 0)


def test_F_on_the_mixed_basis_vector(Qxy):
    f = evaluation_hom(Qxy, "x") + evaluation_hom(Qxy, "y")
    F = br_F_from_f(f, 2)
    # Phi_2(e_x, e_y) / 2 = (1 * 1 - 0) / 2, and Phi_2(e_x, e_x) = 1 * 1 - 1
    assert [F(e).scalar_value() for e in F.domain.basis_elements()] == [0, Fraction(1, 2), 0]
    assert F(F.domain.one()) == Q.one()


def test_n_one_correspondence_is_identity(Qxy):
    f = evaluation_hom(Qxy, "y")
    S = sym_power_algebra(Qxy, 1)
    assert br_F_from_f(f, 1).matrix == f.matrix
    assert br_f_from_F(br_F_from_f(f, 1, S), S) == f


def test_errors(Qxy):
    f = evaluation_hom(Qxy, "x") + evaluation_hom(Qxy, "y")
    with pytest.raises(NotNHomomorphism):
        br_F_from_f(f, 1)
    S = sym_power_algebra(Qxy, 2)
    not_hom = LinearMap(S.algebra, Q, [[1, 1, 1]])
    with pytest.raises(NotAlgebraHomomorphism):
        br_f_from_F(not_hom, S)
    with pytest.raises(NotInImage):
        S.preimage(S.slot(Qxy.element([2, 3]), 0))


def test_lambda_char_poly_small_n(Qxy):
    a = Qxy.element([2, 3])
    assert lambda_char_poly(a, 1) == [Qxy.one(), a]
    one = Qxy.one()
    c = lambda_char_poly(a, 2)
    assert c[0] == tensor_elements(one, one)
    assert c[1] == tensor_elements(a, one) + tensor_elements(one, a)
    assert c[2] == tensor_elements(a, a)


def test_key_formula_examples(Qxy):
    assert verify_key_formula(evaluation_hom(Qxy, "x"), Qxy.element([2, 3]), 1)
    f = evaluation_hom(Qxy, "x") + evaluation_hom(Qxy, "y")
    a = Qxy.element([2, 3])
    F = br_F_from_f(f, 2)
    S = sym_power_algebra(Qxy, 2)
    values = [F(S.preimage(c)).scalar_value() for c in lambda_char_poly(a, 2, S)]
    assert values == [1, 5, 6]
    assert verify_key_formula(f, a, 2, F, S)


@given(st.data())
def test_lambda_coefficients_are_symmetric(data):
    A = data.draw(st.sampled_from([function_algebra(["x", "y"]), function_algebra(["x", "y", "w"])]))
    n = data.draw(st.integers(2, 3))
    a = data.draw(elements(A))
    for c in lambda_char_poly(a, n):
        for perm in permutations(range(n)):
            assert swap_tensor(list(c.coords), A.dim, perm) == list(c.coords)


@given(n_hom_family())
def test_F_is_a_homomorphism_and_round_trips(fn):
    f, n = fn
    corr = correspondence(f, n)
    assert is_algebra_hom(corr.F)
    assert br_f_from_F(corr.F, corr.sym) == f
    assert br_F_from_f(br_f_from_F(corr.F, corr.sym), n, corr.sym) == corr.F


@given(n_hom_family(), st.data())
def test_key_formula_and_polarization_cross_check(fn, data):
    f, n = fn
    a = data.draw(elements(f.domain))
    S = sym_power_algebra(f.domain, n)
    F = br_F_from_f(f, n, S)
    assert verify_key_formula(f, a, n, F, S)
    assert F(S.sym(*([a] * n))) == psi(f, a, n)
    assert psi_sequence(f, a, n)[n] == list(psi(f, a, n).coords)


@given(st.data())
def test_sym_of_equal_factors_is_the_tensor_power(data):
    A = data.draw(st.sampled_from([function_algebra(["x", "y"]), function_algebra(["x", "y", "w"])]))
    n = data.draw(st.integers(1, 3))
    a = data.draw(elements(A))
    S = sym_power_algebra(A, n)
    t = a
    for _ in range(n - 1):
        t = tensor_elements(t, a)
    assert S.embed(S.sym(*([a] * n))).coords == t.coords


@pytest.mark.parametrize("d,n", [(1, 1), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_powers_span(d, n):
    A = function_algebra(["x", "y", "w"][:d])
    _, rank = spanning_powers(A, n)
    assert rank == expected_dim(A, n)


def test_integer_combination_family_round_trip(Qxyw):
    f = integer_combination([evaluation_hom(Qxyw, x) for x in "xyw"], [2, 0, 1])
    corr = correspondence(f, 3)
    assert br_f_from_F(corr.F, corr.sym) == f
