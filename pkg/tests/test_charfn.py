from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from frobkit.algebra import (Element, LinearMap, evaluation_hom, function_algebra,
                             ground_field, integer_combination, pullback_hom,
                             tensor_maps, tensor_product, truncated_polynomial_algebra)
from frobkit.charfn import (BerezinianUndefined, berezinian, char_function, character,
                            infinity_expansion, monic_polynomial_form, psi, psi_newton,
                            psi_sequence)
from frobkit.series import TruncatedSeries, series_invert

from conftest import elements, eval_combinations, linear_maps, nonzero_rationals, rationals

Q = ground_field()


def scalars(s):
    return [c.scalar_value() for c in s.coeffs]


def product_oracle(a_values, m, order):
    """prod_x (1 + a_x z)^{m_x} as a scalar series."""
    out = TruncatedSeries.one(Q, order)
    for ax, mx in zip(a_values, m):
        factor = TruncatedSeries.polynomial([Q.one(), Q.scalar(ax)], order)
        if mx < 0:
            factor = series_invert(factor)
        for _ in range(abs(mx)):
            out = out * factor
    return out


@pytest.fixture
def sum_xy(Qxy):
    return evaluation_hom(Qxy, "x") + evaluation_hom(Qxy, "y")


@pytest.fixture
def diff_xy(Qxy):
    return evaluation_hom(Qxy, "x") - evaluation_hom(Qxy, "y")


# worked values

def test_homomorphism_is_linear_in_z(Qxy):
    f = evaluation_hom(Qxy, "y")
    a = Qxy.element([2, 3])
    assert scalars(char_function(f, a, 6).series) == [1, 3, 0, 0, 0, 0, 0]


def test_unit_argument_gives_binomial(Qxy, sum_xy):
    assert scalars(char_function(sum_xy, Qxy.one(), 3).series) == [1, 2, 1, 0]


def test_sum_of_two_evaluations(Qxy, sum_xy):
    r = char_function(sum_xy, Qxy.element([2, 3]), 4)
    assert scalars(r.series) == [1, 5, 6, 0, 0]
    assert [c.scalar_value() for c in r.psis] == [1, 5, 6, 0, 0]


def test_difference_of_evaluations(Qxy, diff_xy):
    r = char_function(diff_xy, Qxy.element([2, 3]), 6)
    assert scalars(r.series) == [1, -1, 3, -9, 27, -81, 243]


def test_psi_examples(Qxy, sum_xy):
    a = Qxy.element([2, 3])
    assert psi(sum_xy, a, 0) == Q.one()
    assert psi(sum_xy, a, 1) == sum_xy(a)
    assert psi(sum_xy, a, 2).scalar_value() == 6
    assert psi_newton(sum_xy, a, 1) == sum_xy(a)
    fa, fa2 = sum_xy(a), sum_xy(a * a)
    assert psi_newton(sum_xy, a, 2) == (fa * fa - fa2) / 2
    assert psi_newton(sum_xy, a, 3).is_zero()


def test_character_examples(Qxy, sum_xy, diff_xy):
    assert character(sum_xy).integer == 2
    assert character(diff_xy).integer == 0
    half = Fraction(1, 2) * evaluation_hom(Qxy, "x")
    chi = character(half)
    assert chi.value.scalar_value() == Fraction(1, 2) and not chi.integral


def test_berezinian_examples(Qxy, sum_xy, diff_xy):
    a = Qxy.element([2, 3])
    assert berezinian(sum_xy, Qxy.one()) == Q.one()
    assert berezinian(sum_xy, a, "reconstruction").scalar_value() == 6
    assert berezinian(diff_xy, a, "reconstruction").scalar_value() == Fraction(2, 3)


def test_berezinian_nilpotent_regime():
    # f = ev_x ⊗ id on Q^{x} ⊗ Q[e]/e^3, a = 1 + e: Ber = a itself
    X, D = function_algebra(["x"]), truncated_polynomial_algebra(3, "e")
    A = tensor_product(X, D)
    f = LinearMap(A, D, tensor_maps(evaluation_hom(X, "x"), LinearMap.identity(D)).matrix)
    a = A.element([1, 1, 0])
    assert berezinian(f, a, "nilpotent") == D.element([1, 1, 0])
    assert berezinian(2 * f, a, "nilpotent") == D.element([1, 2, 1])


def test_berezinian_undefined(Qxy, sum_xy):
    with pytest.raises(BerezinianUndefined, match="undefined by available methods"):
        berezinian(sum_xy, Qxy.element([0, 3]))
    with pytest.raises(BerezinianUndefined):
        berezinian(sum_xy, Qxy.element([2, 3]), "nilpotent")


def test_infinity_expansion_examples(Qxy, sum_xy):
    hom = LinearMap.identity(Q)
    inf = infinity_expansion(hom, Q.element([2]), 3)
    assert inf.character == 1 and inf.berezinian.scalar_value() == 2
    assert scalars(inf.tail) == [1, Fraction(1, 2), 0, 0]

    inf = infinity_expansion(sum_xy, Qxy.element([2, 3]), 4)
    assert inf.character == 2 and inf.berezinian.scalar_value() == 6
    assert scalars(inf.tail)[:2] == [1, Fraction(5, 6)]

    inf = infinity_expansion(sum_xy, Qxy.one(), 4)
    assert inf.berezinian == Q.one()
    assert inf.tail == TruncatedSeries.polynomial([Q.one(), Q.scalar(2), Q.one()], 4)


def test_infinity_expansion_rejects_non_integral_character(Qxy):
    with pytest.raises(ValueError):
        infinity_expansion(Fraction(1, 2) * evaluation_hom(Qxy, "x"), Qxy.one(), 4)


def test_monic_polynomial_form(Qxy, sum_xy):
    ev = evaluation_hom(Qxy, "x")
    a = Qxy.element([2, 3])
    assert [c.scalar_value() for c in monic_polynomial_form(char_function(ev, a, 4), 1)] == [-2, 1]
    assert [c.scalar_value() for c in monic_polynomial_form(char_function(sum_xy, a, 6), 2)] \
        == [6, -5, 1]
    zero = LinearMap.zero(Qxy, Q)
    assert monic_polynomial_form(char_function(zero, a, 3), 0) == [Q.one()]
    with pytest.raises(ValueError, match="not polynomial"):
        monic_polynomial_form(char_function(sum_xy, a, 6), 1)


# properties

@given(st.data())
def test_exponential_property_general_maps(data):
    f = data.draw(linear_maps())
    g = data.draw(linear_maps(f.domain, f.codomain))
    a = data.draw(elements(f.domain))
    order = data.draw(st.integers(0, 8))
    assert (char_function(f + g, a, order).series
            == char_function(f, a, order).series * char_function(g, a, order).series)


@given(eval_combinations(), st.data())
def test_eval_combination_matches_product_formula(fm, data):
    f, m = fm
    a = Element(f.domain, [data.draw(rationals) for _ in m])
    assert char_function(f, a, 8).series == product_oracle(a.coords, m, 8)


@given(st.data())
def test_psi_newton_agrees_with_series(data):
    f = data.draw(linear_maps())
    a = data.draw(elements(f.domain))
    k = data.draw(st.integers(1, 6))
    assert psi_newton(f, a, k) == psi(f, a, k)


@given(st.data())
def test_psi_sequence_matches_series_and_starts_at_unit(data):
    f = data.draw(linear_maps())
    a = data.draw(elements(f.domain))
    s = char_function(f, a, 7).series
    assert psi_sequence(f, a, 7) == [list(c.coords) for c in s.coeffs]
    assert s[0] == f.codomain.one()


@given(st.data())
def test_character_additive_and_compositional(data):
    f = data.draw(linear_maps())
    g = data.draw(linear_maps(f.domain, f.codomain))
    h = data.draw(linear_maps(f.codomain))
    assert character(f + g).value == character(f).value + character(g).value
    assert character(h @ f).value == h(character(f).value)


@given(eval_combinations(lo=-2, hi=2), st.data())
def test_berezinian_multiplicative_with_product_oracle(fm, data):
    f, m = fm
    assume(sum(abs(x) for x in m) <= 5)
    n = len(m)
    a = Element(f.domain, [data.draw(nonzero_rationals) for _ in range(n)])
    b = Element(f.domain, [data.draw(nonzero_rationals) for _ in range(n)])
    bers = [berezinian(f, x, "reconstruction") for x in (a, b, a * b)]
    assert bers[2] == bers[0] * bers[1]
    oracle = Fraction(1)
    for ax, mx in zip(a.coords, m):
        oracle *= ax ** mx
    assert bers[0].scalar_value() == oracle


def test_berezinian_split_codomain_componentwise(Qxy, Qxyw):
    f = pullback_hom(Qxyw, Qxy, {"x": "x", "y": "w"}) + pullback_hom(Qxyw, Qxy, {"x": "y", "y": "y"})
    a = Qxyw.element([2, 3, 5])
    assert berezinian(f, a, "reconstruction") == Qxy.element([6, 15])


def test_infinity_expansion_identity_pointwise(Qxyw):
    f = integer_combination([evaluation_hom(Qxyw, x) for x in "xyw"], [2, 1, -1])
    a = Qxyw.element([2, -3, 5])
    inf = infinity_expansion(f, a, 10)
    for z in (Fraction(1, 7), Fraction(-2, 3), Fraction(4)):
        lhs = Fraction(1)
        rhs = Fraction(1)
        for ax, mx in zip(a.coords, [2, 1, -1]):
            lhs *= (1 + ax * z) ** mx
            rhs *= (1 + 1 / (ax * z)) ** mx
        assert lhs == z ** inf.character * inf.berezinian.scalar_value() * rhs
    assert inf.tail == product_oracle([1 / x for x in a.coords], [2, 1, -1], 10)
