"""The acceptance suite: eleven exact checks, each a finite computation.

Every criterion is a function ``(suite, rng, char_series) -> (ok, detail, checks)``
where ``char_series(f, a, order)`` is the characteristic-series routine under
test.  Criteria 1 and 2 call it through that hook so a deliberately broken
routine can be injected; everything else uses the library directly.
"""

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import comb

from . import __version__
from .algebra import (Algebra, Element, LinearMap, NotInvertible, check_algebra_axioms,
                      evaluation_hom, function_algebra, ground_field, integer_combination,
                      pullback_hom, tensor_maps, tensor_product, truncated_polynomial_algebra)
from .charfn import (berezinian, char_function, character, infinity_expansion, psi,
                     psi_newton)
from .finitespace import (FiniteSpace, enumerate_n_homs, enumerate_sym_pq, ev_map,
                          verify_ev_well_defined)
from .frobenius import check_polarization, check_symmetry
from .homclass import (ReconstructionError, detect_degrees, is_n_hom, is_pq_hom,
                       reconstruct_rational)
from .series import map_coefficients, series_exp, series_log
from .sympower import (br_F_from_f, br_f_from_F, expected_dim, is_algebra_hom,
                       spanning_powers, sym_power_algebra, verify_key_formula)

SUITES = {
    "desk": {"c1": 50, "c2": 50, "c3": 200, "c4": 30, "c5": (20, 20, 10), "c6": 8,
             "c7_points": 3, "c8_dim": 3, "c8_n": 3, "c8_samples": 20,
             "c9_points": 3, "c9_total": 5, "c9_bound": 12,
             "c10_points": 3, "c10_total": 4, "order": 12},
    "extended": {"c1": 200, "c2": 200, "c3": 600, "c4": 100, "c5": (60, 60, 30), "c6": 20,
                 "c7_points": 4, "c8_dim": 3, "c8_n": 3, "c8_samples": 40,
                 "c9_points": 3, "c9_total": 5, "c9_bound": 14,
                 "c10_points": 3, "c10_total": 5, "order": 16},
}

MUTANTS = ("psi-sign",)


def default_char_series(f, a, order):
    return char_function(f, a, order).series


def psi_sign_mutant(f, a, order):
    """Characteristic series with the sign of psi_2 flipped."""
    s = char_function(f, a, order).series
    if order < 2:
        return s
    coords = s.coords()
    coords[2] = [-x for x in coords[2]]
    return type(s)._from_coords(s.algebra, coords)


# random inputs

def rand_q(rng, lo=-4, hi=4, dens=(1, 1, 2, 3)):
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def rand_nonzero_q(rng, lo=-4, hi=4, dens=(1, 1, 2, 3)):
    while True:
        v = rand_q(rng, lo, hi, dens)
        if v:
            return v


def rand_element(A, rng):
    return Element._make(A, [rand_q(rng) for _ in range(A.dim)])


def rand_invertible_split(A, rng):
    return Element._make(A, [rand_nonzero_q(rng) for _ in range(A.dim)])


def points(n):
    return [chr(ord("x") + i) if i < 3 else f"p{i}" for i in range(n)]


def rand_pullback(A, B, rng):
    return pullback_hom(A, B, {y: rng.choice(A.labels) for y in B.labels})


def dual_numbers(m=3):
    return truncated_polynomial_algebra(m, "e")


def mixed_algebras():
    D2 = dual_numbers(2)
    return [function_algebra(points(1)), function_algebra(points(2)),
            function_algebra(points(3)), truncated_polynomial_algebra(2),
            truncated_polynomial_algebra(3), D2,
            tensor_product(function_algebra(points(2)), D2)]


def rand_linear_map(A, B, rng):
    return LinearMap(A, B, [[rand_q(rng, -2, 2) for _ in range(A.dim)] for _ in range(B.dim)])


def signed_vectors(n, total):
    """All m in Z^n with sum |m_i| <= total."""
    for m in product(range(-total, total + 1), repeat=n):
        if sum(abs(x) for x in m) <= total:
            yield m


def signed_degrees(m):
    return sum(x for x in m if x > 0), -sum(x for x in m if x < 0)


def eval_combination(A, m):
    return integer_combination([evaluation_hom(A, x) for x in A.labels], list(m))


@lru_cache(maxsize=None)
def _pq_verdict(f, p, q, bound):
    return is_pq_hom(f, p, q, bound).verdict


@lru_cache(maxsize=None)
def _n_verdict(f, n, bound):
    return is_n_hom(f, n, bound).verdict


class _Fail(Exception):
    pass


def _need(cond, msg):
    if not cond:
        raise _Fail(msg)


# the criteria

def c1_homomorphism_linearity(suite, rng, char_series):
    order = suite["order"]
    count = 0
    for _ in range(suite["c1"]):
        A = function_algebra(points(rng.randint(1, 4)))
        if rng.random() < 0.5:
            f = evaluation_hom(A, rng.choice(A.labels))
        else:
            f = rand_pullback(A, function_algebra(["u", "v"][: rng.randint(1, 2)]), rng)
        a = rand_element(A, rng)
        s = char_series(f, a, order)
        _need(s[0] == f.codomain.one() and s[1] == f(a),
              f"R(f, a) does not start 1 + f(a) z for f={f}, a={a}")
        for k in range(2, order + 1):
            _need(s[k].is_zero(), f"coefficient {k} nonzero for f={f}, a={a}")
        count += 1
    return f"{count} homomorphisms, coefficients 2..{order} all zero", count


def c2_exponential_property(suite, rng, char_series):
    order = suite["order"]
    count = 0
    for _ in range(suite["c2"]):
        A = function_algebra(points(rng.randint(1, 4)))
        f = eval_combination(A, [rng.randint(-3, 3) for _ in A.labels])
        g = eval_combination(A, [rng.randint(-3, 3) for _ in A.labels])
        a = rand_element(A, rng)
        lhs = char_series(f + g, a, order)
        rhs = char_series(f, a, order) * char_series(g, a, order)
        _need(lhs == rhs, f"R(f+g) != R(f) R(g) for f={f}, g={g}, a={a}")
        count += 1
    return f"{count} pairs at order {order}", count


def c3_newton_determinant(suite, rng, char_series):
    algebras = mixed_algebras()
    count = 0
    for _ in range(suite["c3"]):
        A, B = rng.choice(algebras), rng.choice(algebras[:6])
        f = rand_linear_map(A, B, rng)
        a = rand_element(A, rng)
        k = rng.randint(1, 8)
        _need(psi_newton(f, a, k) == psi(f, a, k), f"Newton determinant differs at k={k}, f={f}, a={a}")
        count += 1
    return f"{count} random maps, k <= 8", count


def c4_integrality_infinity(suite, rng, char_series):
    order = suite["order"]
    count = 0
    for _ in range(suite["c4"]):
        A = function_algebra(points(rng.randint(1, 3)))
        while True:
            m = [rng.randint(-3, 3) for _ in A.labels]
            p, q = signed_degrees(m)
            if 0 < p + q <= 5:
                break
        f = eval_combination(A, m)
        chi = character(f)
        _need(chi.integral and chi.integer == p - q, f"character {chi.value} != {p - q}")
        a = rand_invertible_split(A, rng)
        inf = infinity_expansion(f, a, order)
        oracle_ber = 1
        for ax, mx in zip(a.coords, m):
            oracle_ber *= ax ** mx
        _need(inf.berezinian.scalar_value() == oracle_ber, f"Berezinian {inf.berezinian} != {oracle_ber}")
        form = reconstruct_rational(char_function(f, a, order).series, p, q)
        tail = reconstruct_rational(inf.tail, p, q)
        _need(form.certified_through == order and tail.certified_through == order,
              "reconstruction not certified through the order")
        checked = 0
        while checked < 10:
            z = rand_nonzero_q(rng, -9, 9, (1, 2, 3, 5, 7))
            direct = Fraction(1)
            try:
                for ax, mx in zip(a.coords, m):
                    direct *= (1 + ax * z) ** mx
            except ZeroDivisionError:
                continue
            if any(1 + ax * z == 0 for ax in a.coords):
                continue
            try:
                lhs = form.evaluate(z).scalar_value()
                rhs = (z ** inf.character * inf.berezinian.scalar_value()
                       * tail.evaluate(1 / z).scalar_value())
            except NotInvertible:
                # a common root of P and Q in an unreduced form
                continue
            _need(lhs == direct, f"reconstructed R({z}) = {lhs}, product gives {direct}")
            _need(lhs == rhs, f"infinity expansion fails at z={z}: {lhs} vs {rhs}")
            checked += 1
        count += 1
    return f"{count} instances, 10 points each", count


def _split_ber_oracle(a, sigmas, coeffs, B):
    out = []
    for y in B.labels:
        v = Fraction(1)
        for sigma, c in zip(sigmas, coeffs):
            v *= a.coords[a.algebra.labels.index(sigma[y])] ** c
        out.append(v)
    return Element._make(B, out)


def c5_berezinian(suite, rng, char_series):
    n_split, n_nil, n_cross = suite["c5"]
    count = 0
    # split codomain, reconstruction method, against prod_j a(sigma_j(y))^{m_j}
    for _ in range(n_split):
        A = function_algebra(points(rng.randint(1, 3)))
        B = function_algebra(["u", "v"][: rng.randint(1, 2)])
        nmaps = rng.randint(1, 3)
        sigmas = [{y: rng.choice(A.labels) for y in B.labels} for _ in range(nmaps)]
        while True:
            coeffs = [rng.randint(-2, 2) for _ in range(nmaps)]
            if sum(abs(c) for c in coeffs) <= 5:
                break
        f = integer_combination([pullback_hom(A, B, s) for s in sigmas], coeffs)
        a, b = rand_invertible_split(A, rng), rand_invertible_split(A, rng)
        bers = [berezinian(f, x, "reconstruction") for x in (a, b, a * b)]
        for x, got in zip((a, b, a * b), bers):
            _need(got == _split_ber_oracle(x, sigmas, coeffs, B),
                  f"Ber({x}) = {got} disagrees with the product formula")
        _need(bers[2] == bers[0] * bers[1], "Ber(ab) != Ber(a) Ber(b) (reconstruction)")
        count += 1
    # unipotent arguments in (Q^X) ⊗ D, D = Q[e]/e^3, map sum m_x (ev_x ⊗ id) into D
    D = dual_numbers(3)
    for _ in range(n_nil):
        X = function_algebra(points(rng.randint(1, 3)))
        A = tensor_product(X, D)
        m = [rng.randint(-3, 3) for _ in X.labels]
        parts = [tensor_maps(evaluation_hom(X, x), LinearMap.identity(D)) for x in X.labels]
        f = LinearMap(A, D, integer_combination(parts, m).matrix)

        def unipotent():
            coords = []
            for _x in X.labels:
                coords += [Fraction(1), rand_q(rng), rand_q(rng)]
            return Element._make(A, coords)
        a, b = unipotent(), unipotent()
        bers = []
        for x in (a, b, a * b):
            oracle = D.one()
            for i, mx in enumerate(m):
                oracle = oracle * Element._make(D, x.coords[3 * i:3 * i + 3]) ** mx
            got = berezinian(f, x, "nilpotent")
            _need(got == oracle, f"nilpotent Ber({x}) = {got}, expected {oracle}")
            _need(berezinian(f, x) == got, "auto method disagrees with nilpotent method")
            bers.append(got)
        _need(bers[2] == bers[0] * bers[1], "Ber(ab) != Ber(a) Ber(b) (nilpotent)")
        count += 1
    # both methods apply: unipotent a, split codomain
    aug = LinearMap(D, ground_field(), [[1, 0, 0]])
    for _ in range(n_cross):
        X = function_algebra(points(rng.randint(1, 3)))
        A = tensor_product(X, D)
        while True:
            m = [rng.randint(-2, 2) for _ in X.labels]
            if sum(abs(v) for v in m) <= 5:
                break
        parts = [tensor_maps(evaluation_hom(X, x), aug) for x in X.labels]
        f = LinearMap(A, ground_field(), integer_combination(parts, m).matrix)
        a = Element._make(A, [Fraction(1) if j == 0 else rand_q(rng)
                              for _ in X.labels for j in range(3)])
        nil = berezinian(f, a, "nilpotent")
        rec = berezinian(f, a, "reconstruction")
        _need(nil == rec, f"methods disagree: nilpotent {nil}, reconstruction {rec}")
        count += 1
    return (f"{n_split} reconstruction, {n_nil} nilpotent, {n_cross} cross-method instances",
            count)


def c6_symmetry_polarization(suite, rng, char_series):
    algebras = mixed_algebras()
    count = 0
    for _ in range(suite["c6"]):
        A, B = rng.choice(algebras[:6]), rng.choice(algebras[:6])
        f = rand_linear_map(A, B, rng)
        for k in range(2, 6):
            args = [rand_element(A, rng) for _ in range(k)]
            _need(check_symmetry(f, args), f"Phi_{k} not symmetric for f={f}")
            count += 1
        a = rand_element(A, rng)
        for k in range(1, 9):
            _need(check_polarization(f, a, k), f"polarization fails at k={k} for f={f}, a={a}")
            count += 1
    return f"{suite['c6']} maps: symmetry k=2..5, polarization k=1..8", count


def _sum_of_pullbacks(A, B, n, rng):
    return integer_combination([rand_pullback(A, B, rng) for _ in range(n)], [1] * n)


def c7_sum_composition(suite, rng, char_series):
    order = suite["order"]
    X = function_algebra(points(suite["c7_points"]))
    Y = function_algebra(["u", "v"])
    count = 0
    for n in range(1, 6):
        for m in range(1, 7 - n):
            B = function_algebra(["u", "v"][: rng.randint(1, 2)])
            f, g = _sum_of_pullbacks(X, B, n, rng), _sum_of_pullbacks(X, B, m, rng)
            _need(_n_verdict(f, n, 12) == "pass" and _n_verdict(g, m, 12) == "pass",
                  "summand is not an n-homomorphism")
            _need(_n_verdict(f + g, n + m, 12) == "pass", f"sum of {n}- and {m}-hom fails")
            count += 1
    for n in range(1, 7):
        for m in range(1, 6 // n + 1):
            W = function_algebra(["s", "t"][: rng.randint(1, 2)])
            f = _sum_of_pullbacks(X, Y, n, rng)
            g = _sum_of_pullbacks(Y, W, m, rng)
            h = g @ f
            _need(_n_verdict(h, n * m, 12) == "pass", f"composition of {n}- and {m}-hom fails")
            for _ in range(3):
                a = rand_element(X, rng)
                via_log = series_exp(map_coefficients(g, series_log(char_function(f, a, order).series)))
                _need(via_log == char_function(h, a, order).series,
                      f"exp g(log R(f)) != R(g f) for n={n}, m={m}")
            count += 1
    return f"{count} sums and compositions pass is_n_hom at bound 12", count


def c8_symmetric_power(suite, rng, char_series):
    count = 0
    for d in range(1, suite["c8_dim"] + 1):
        A = function_algebra(points(d))
        for n in range(1, suite["c8_n"] + 1):
            sym = sym_power_algebra(A, n)
            _need(sym.dim == expected_dim(A, n), f"dim S^{n} != binomial for d={d}")
            _need(spanning_powers(A, n, sym)[1] == sym.dim, "powers a⊗...⊗a do not span S^n(A)")
            for ms in combinations_with_replacement(A.labels, n):
                f = integer_combination([evaluation_hom(A, x) for x in ms], [1] * n)
                F = br_F_from_f(f, n, sym)
                _need(is_algebra_hom(F), f"F not multiplicative for {ms}")
                back = br_f_from_F(F, sym)
                _need(back == f, f"f -> F -> f is not the identity for {ms}")
                _need(br_F_from_f(back, n, sym, check=False) == F, f"F -> f -> F fails for {ms}")
                for _ in range(suite["c8_samples"]):
                    a = rand_element(A, rng)
                    _need(verify_key_formula(f, a, n, F, sym), f"key formula fails for {ms}, a={a}")
                count += 1
    return f"{count} instances (d <= {suite['c8_dim']}, n <= {suite['c8_n']})", count


def c9_pq_classification(suite, rng, char_series):
    bound = suite["c9_bound"]
    total = suite["c9_total"]
    count = 0
    for npts in range(1, suite["c9_points"] + 1):
        A = function_algebra(points(npts))
        for m in signed_vectors(npts, total):
            p, q = signed_degrees(m)
            f = eval_combination(A, m)
            _need(character(f).integer == p - q, f"character wrong for m={m}")
            _need(_pq_verdict(f, p, q, bound) == "pass", f"is_pq_hom fails for m={m}")
            a = rand_invertible_split(A, rng)
            s = char_function(f, a, bound).series
            found = detect_degrees(s, total, total)
            _need(found is not None and found[0] <= p and found[1] <= q,
                  f"detected degrees {found} not dominated by ({p}, {q}) for m={m}")
            _need(reconstruct_rational(s, p, q).certified_through == bound,
                  f"reconstruction not certified through {bound} for m={m}")
            count += 1
    return f"{count} signed vectors, p+q <= {total}, bound {bound}", count


def c10_sym_pq_geometry(suite, rng, char_series):
    count = 0
    for npts in range(1, suite["c10_points"] + 1):
        X = FiniteSpace(points(npts))
        for total in range(suite["c10_total"] + 1):
            for q in range(total + 1):
                p = total - q
                space = enumerate_sym_pq(X, p, q)
                _need(sum(c.class_members for c in space.classes) == npts ** total,
                      f"classes do not partition X^{total} for p={p}, q={q}")
                if q == 0:
                    _need(len(space) == comb(npts + p - 1, p),
                          f"|Sym^({p}|0)| = {len(space)} != binomial")
                _need(verify_ev_well_defined(space), f"ev not constant on a class, p={p}, q={q}")
                for c in space.classes:
                    _need(_pq_verdict(ev_map(c, X), p, q, 12) == "pass",
                          f"ev of {c.representative} fails the p|q equations")
                if q == 0 and p >= 1:
                    homs = {h.matrix for h in enumerate_n_homs(X, p, check=False)}
                    evs = {ev_map(c, X).matrix for c in space.classes}
                    _need(homs == evs, f"n-hom enumeration differs from ev image for n={p}")
                count += 1
    return f"{count} (X, p, q) instances", count


def c11_negative_controls(suite, rng, char_series):
    A = function_algebra(points(2))
    half = Fraction(1, 2) * evaluation_hom(A, "x")
    _need(not character(half).integral, "(1/2) ev_x reported an integral character")
    for p, q in ((1, 0), (0, 0), (2, 1)):
        _need(is_pq_hom(half, p, q).verdict == "fail", f"(1/2) ev_x passed as a {p}|{q}-hom")
    c = [list(map(list, row)) for row in A.structure_constants]
    c[0][1][0] = Fraction(1)
    bad = Algebra.from_structure_constants(c, A.unit)
    report = check_algebra_axioms(bad)
    _need(any(ax == "commutativity" for ax, _ in report.violations),
          "corrupted constants passed the axiom check")
    s = char_function(half, A.one(), suite["order"]).series
    try:
        reconstruct_rational(s, 3, 3)
        raise _Fail("(1+z)^(1/2) reconstructed as a rational function")
    except ReconstructionError as exc:
        _need("inconsistent with tail" in str(exc), f"wrong reconstruction failure: {exc}")
    ok, _detail, _n = _run_one(CRITERIA[1], suite, 0, psi_sign_mutant)
    _need(not ok, "psi sign mutant survived the exponential-property check")
    return "integrality, axiom check, tail inconsistency and mutant all rejected", 4


CRITERIA = [
    (1, "homomorphism linearity", c1_homomorphism_linearity),
    (2, "exponential property", c2_exponential_property),
    (3, "Newton determinant consistency", c3_newton_determinant),
    (4, "integrality and infinity expansion", c4_integrality_infinity),
    (5, "Berezinian multiplicativity", c5_berezinian),
    (6, "Frobenius symmetry and polarization", c6_symmetry_polarization),
    (7, "sum and composition", c7_sum_composition),
    (8, "symmetric power correspondence", c8_symmetric_power),
    (9, "p|q classification", c9_pq_classification),
    (10, "Sym^{p|q} geometry", c10_sym_pq_geometry),
    (11, "negative controls", c11_negative_controls),
]


@dataclass
class CriterionResult:
    id: int
    name: str
    passed: bool
    detail: str
    checks: int
    seconds: float = field(default=0.0, compare=False)

    def line(self):
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.id:>2} {self.name}: {self.detail}"

    def to_json(self):
        return {"id": self.id, "name": self.name, "passed": self.passed,
                "detail": self.detail, "checks": self.checks}


def _run_one(entry, suite, seed, char_series):
    cid, _name, fn = entry
    rng = random.Random(seed * 1000 + cid)
    try:
        detail, checks = fn(suite, rng, char_series)
        return True, detail, checks
    except _Fail as exc:
        return False, str(exc), 0


def run_criterion(cid, suite="desk", seed=0, mutant=None):
    entry = next(e for e in CRITERIA if e[0] == cid)
    sizes = SUITES[suite]
    char_series = default_char_series
    if mutant is not None:
        if mutant not in MUTANTS:
            raise ValueError(f"unknown mutant {mutant!r}")
        if cid in (1, 2):
            char_series = psi_sign_mutant
    t = time.perf_counter()
    ok, detail, checks = _run_one(entry, sizes, seed, char_series)
    return CriterionResult(cid, entry[1], ok, detail, checks, time.perf_counter() - t)


def verify_all(suite="desk", seed=0, mutant=None, only=None, progress=None):
    """Run the criteria in id order; returns (results, report dict)."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    results = []
    for cid, _name, _fn in CRITERIA:
        if only is not None and cid not in only:
            continue
        r = run_criterion(cid, suite, seed, mutant)
        results.append(r)
        if progress is not None:
            progress(r)
    failed = [{"id": r.id, "name": r.name} for r in results if not r.passed]
    report = {
        "artifact": {"name": "frobkit", "version": __version__},
        "command": "verify-all",
        "config": {"suite": suite, "seed": seed, "mutant": mutant, "sizes": _jsonable(SUITES[suite])},
        "verdict": "fail" if failed else "pass",
        "failed": failed,
        "criteria": [r.to_json() for r in results],
        "timing": {"ms": {str(r.id): int(r.seconds * 1000) for r in results}},
    }
    return results, report


def _jsonable(d):
    return {k: list(v) if isinstance(v, tuple) else v for k, v in d.items()}
