from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from frobkit.algebra import (Element, LinearMap, evaluation_hom, function_algebra,
                             tensor_product, truncated_polynomial_algebra)

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
nonzero_rationals = rationals.filter(bool)


def small_algebras():
    return [function_algebra(["x"]), function_algebra(["x", "y"]),
            function_algebra(["x", "y", "w"]), truncated_polynomial_algebra(2),
            truncated_polynomial_algebra(3),
            tensor_product(function_algebra(["x", "y"]), truncated_polynomial_algebra(2, "e"))]


algebras = st.sampled_from(small_algebras())


@st.composite
def elements(draw, algebra):
    return Element(algebra, [draw(rationals) for _ in range(algebra.dim)])


@st.composite
def algebra_and_elements(draw, count=1):
    A = draw(algebras)
    return (A, *[draw(elements(A)) for _ in range(count)])


@st.composite
def linear_maps(draw, domain=None, codomain=None):
    A = domain if domain is not None else draw(algebras)
    B = codomain if codomain is not None else draw(algebras)
    return LinearMap(A, B, [[draw(rationals) for _ in range(A.dim)] for _ in range(B.dim)])


@st.composite
def eval_combinations(draw, max_points=3, lo=-3, hi=3):
    """f = sum m_x ev_x on Q^X with the coefficient vector m."""
    n = draw(st.integers(1, max_points))
    A = function_algebra(["x", "y", "w", "v"][:n])
    m = [draw(st.integers(lo, hi)) for _ in range(n)]
    maps = [evaluation_hom(A, x) for x in A.labels]
    f = LinearMap.zero(A, maps[0].codomain)
    for g, c in zip(maps, m):
        f = f + c * g
    return f, m


@pytest.fixture
def Qxy():
    return function_algebra(["x", "y"])


@pytest.fixture
def Qxyw():
    return function_algebra(["x", "y", "w"])
