from fractions import Fraction
from itertools import permutations, product
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobkit.algebra import LinearMap, evaluation_hom, ground_field
from frobkit.charfn import psi
from frobkit.finitespace import (BudgetExceeded, FiniteSpace, SignedConfiguration,
                                 configuration_map, enumerate_n_homs, enumerate_sym_pq,
                                 ev_map, open_question_probe, verify_ev_well_defined,
                                 verify_variety_equations)
from frobkit.homclass import is_n_hom, is_pq_hom

Q = ground_field()
POINTS = ["x", "y", "w", "v"]


def brute_classes(npts, p, q):
    """Closure by breadth-first search with full S_p x S_q orbits and
    cancellation at any positive/negative slot pair."""
    seen, classes = set(), []
    for start in product(range(npts), repeat=p + q):
        if start in seen:
            continue
        cls, todo = {start}, [start]
        while todo:
            t = todo.pop()
            nbrs = {pp + qq for pp in permutations(t[:p]) for qq in permutations(t[p:])}
            for i in range(p):
                for j in range(p, p + q):
                    if t[i] == t[j]:
                        for z in range(npts):
                            s = list(t)
                            s[i] = s[j] = z
                            nbrs.add(tuple(s))
            for s in nbrs - cls:
                cls.add(s)
                todo.append(s)
        seen |= cls
        classes.append(cls)
    return classes


def space(n):
    return FiniteSpace(POINTS[:n])


def test_class_examples():
    X = space(2)
    s = enumerate_sym_pq(X, 1, 1)
    assert len(s) == 3
    reps = sorted(str(c.representative) for c in s.classes)
    assert reps == ["(x|x)", "(x|y)", "(y|x)"]
    assert {c.class_members for c in s.classes} == {1, 2}
    assert len(enumerate_sym_pq(X, 0, 0)) == 1
    points = enumerate_sym_pq(space(3), 1, 0)
    assert [c.representative.positive for c in points.classes] == [("x",), ("y",), ("w",)]


def test_finite_space_validation():
    with pytest.raises(ValueError):
        FiniteSpace([])
    with pytest.raises(ValueError):
        FiniteSpace(["x", "x"])


def test_ev_examples():
    X = space(2)
    A = X.algebra()
    a = A.element([2, 3])
    s = enumerate_sym_pq(X, 1, 1)
    by_rep = {str(c.representative): c for c in s.classes}
    assert ev_map(by_rep["(x|y)"], X)(a).scalar_value() == -1
    diag = by_rep["(x|x)"]
    assert {m for m in diag.members} == {SignedConfiguration(("x",), ("x",)),
                                         SignedConfiguration(("y",), ("y",))}
    for m in diag.members:
        assert configuration_map(m, X) == LinearMap.zero(A, Q)
    two = enumerate_sym_pq(X, 2, 0)
    mixed = [c for c in two.classes if c.representative.positive == ("x", "y")][0]
    assert ev_map(mixed, X)(a).scalar_value() == 5


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("p", [0, 1, 2, 3, 4])
def test_symmetric_power_counts(n, p):
    assert len(enumerate_sym_pq(space(n), p, 0)) == comb(n + p - 1, p)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sym_one_one_count(n):
    assert len(enumerate_sym_pq(space(n), 1, 1)) == n * n - n + 1


@pytest.mark.parametrize("n,p,q", [(2, 2, 1), (3, 2, 1), (2, 2, 2), (3, 1, 2), (3, 2, 2),
                                   (2, 3, 2), (4, 1, 1)])
def test_classes_match_brute_force_closure(n, p, q):
    X = space(n)
    s = enumerate_sym_pq(X, p, q)
    got = sorted(sorted(tuple(X.points.index(x) for x in m.positive + m.negative)
                        for m in c.members) for c in s.classes)
    want = sorted(sorted(c) for c in brute_classes(n, p, q))
    assert got == want
    assert sum(c.class_members for c in s.classes) == n ** (p + q)
    for c in s.classes:
        assert c.representative == min(c.members, key=lambda m: tuple(
            X.points.index(x) for x in m.positive + m.negative))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ev_well_defined(n):
    for p in range(5):
        for q in range(5 - p):
            assert verify_ev_well_defined(enumerate_sym_pq(space(n), p, q))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_variety_equations_on_every_class(n):
    X = space(n)
    for p in range(6):
        for q in range(6 - p):
            bound = max(10, p + q + 2)
            for c in enumerate_sym_pq(X, p, q).classes:
                assert verify_variety_equations(c, X, p, q, bound).verdict == "pass", (p, q, c)


def test_corrupted_functional_fails():
    X = space(2)
    c = enumerate_sym_pq(X, 1, 1).classes[0]
    bad = ev_map(c, X) + Fraction(1, 2) * evaluation_hom(X.algebra(), "x")
    assert is_pq_hom(bad, 1, 1).verdict == "fail"


def test_enumerate_n_homs_examples():
    X = space(2)
    assert [f.matrix for f in enumerate_n_homs(X, 1)] == [((1, 0),), ((0, 1),)]
    homs = enumerate_n_homs(X, 2)
    assert sorted(f.matrix for f in homs) == sorted([((2, 0),), ((1, 1),), ((0, 2),)])


def test_negative_control_half_integers():
    X = space(2)
    A = X.algebra()
    f = LinearMap(A, Q, [[Fraction(3, 2), Fraction(1, 2)]])
    # (1 + z)^{3/2} at a = e_x: psi_3 = binom(3/2, 3)
    assert psi(f, A.element([1, 0]), 3).scalar_value() == Fraction(-1, 16)
    assert is_n_hom(f, 2).verdict == "fail"


@pytest.mark.parametrize("n,k", [(1, 3), (2, 2), (3, 2), (3, 3)])
def test_n_homs_are_the_evaluation_maps(n, k):
    X = space(n)
    homs = {f.matrix for f in enumerate_n_homs(X, k)}
    assert homs == {ev_map(c, X).matrix for c in enumerate_sym_pq(X, k, 0).classes}


@given(st.permutations(range(3)), st.integers(0, 3), st.integers(0, 2))
def test_relabelling_is_equivariant(perm, p, q):
    X = space(3)
    Y = FiniteSpace([X.points[i] for i in perm])
    sx, sy = enumerate_sym_pq(X, p, q), enumerate_sym_pq(Y, p, q)
    assert len(sx) == len(sy)

    def functionals(s, Z):
        # rows re-indexed by label so both sides are comparable
        out = set()
        for c in s.classes:
            row = ev_map(c, Z).matrix[0]
            out.add(tuple(sorted(zip(Z.points, row))))
        return out

    assert functionals(sx, X) == functionals(sy, Y)


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_sym_pq(space(4), 4, 4, budget=100)


def test_probe_consistency():
    X = space(2)
    report = open_question_probe(X, 1, 1, trials=60, seed=3)
    assert report.trials == 60
    accounted = (report.filtered_character + report.failed_equations
                 + report.inside_image + len(report.candidates))
    assert accounted == 60
    image = {ev_map(c, X).matrix for c in enumerate_sym_pq(X, 1, 1).classes}
    for cand in report.candidates:
        row = tuple(Fraction(v) for v in cand["values"])
        assert (row,) not in image
    again = open_question_probe(X, 1, 1, trials=60, seed=3)
    assert again.to_json() == report.to_json()


def test_probe_sees_the_image():
    X = space(2)
    report = open_question_probe(X, 1, 0, trials=40, seed=0, grid=[0, 1])
    assert report.inside_image > 0 and not report.candidates
    assert "no counterexample" in report.summary
