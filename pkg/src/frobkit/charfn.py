"""Characteristic function R(f, a, z) = exp f(log(1 + a z)) of a linear map.

Its coefficients psi_k(f, a) are computed two ways: by the series route
(log, apply f coefficientwise, exp) and by the determinant of the classical
Newton matrix built from the power traces f(a), f(a^2), ...
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import linalg
from .algebra import (AlgebraMismatch, Element, LinearMap, NotInvertible,
                      invert, is_function_algebra, plain, power)
from .series import (TruncatedSeries, map_coefficients, one_plus_az, series_exp,
                     series_log)


class BerezinianUndefined(ValueError):
    def __init__(self, msg="Berezinian undefined by available methods"):
        super().__init__(msg)


@dataclass(frozen=True)
class CharFnExpansion:
    map: LinearMap
    element: Element
    order: int
    series: TruncatedSeries

    @property
    def psis(self):
        return list(self.series.coeffs)


@dataclass(frozen=True)
class Character:
    value: Element
    integer: int | None

    @property
    def integral(self):
        return self.integer is not None


@dataclass(frozen=True)
class InfinityExpansion:
    character: int
    berezinian: Element
    tail: TruncatedSeries

    def leading_series(self):
        """Ber * tail, i.e. R(f, a, z) / z^chi as a series in w = 1/z."""
        alg = self.tail.algebra
        return TruncatedSeries._from_coords(
            alg, [alg.mul_coords(self.berezinian.coords, c) for c in self.tail.coords()])


def _check_domain(f, a):
    if a.algebra is not f.domain and a.algebra != f.domain:
        raise AlgebraMismatch()


def char_function(f, a, order):
    _check_domain(f, a)
    if order < 0:
        raise ValueError("order must be nonnegative")
    if order == 0:
        series = TruncatedSeries.one(f.codomain, 0)
    else:
        logs = series_log(one_plus_az(a, order))
        series = series_exp(map_coefficients(f, logs))
    return CharFnExpansion(f, a, order, series)


def power_traces(f, a, order):
    """[f(a^0), f(a^1), ..., f(a^order)] as coordinate lists."""
    return [[Fraction(x) for x in t] for t in _plain_traces(f, a, order)]


def _div(x, n):
    if isinstance(x, int) and x % n == 0:
        return x // n
    return Fraction(x) / n


def _plain_traces(f, a, order):
    alg = a.algebra
    rows = [[(i, plain(m)) for i, m in enumerate(row) if m] for row in f.matrix]

    def apply(x):
        return [sum(m * x[i] for i, m in row) for row in rows]
    ac = [plain(x) for x in a.coords]
    if alg.split:
        # a^k is computed pointwise
        cur = [1] * alg.dim
        out = [apply(cur)]
        for _ in range(order):
            cur = [u * v for u, v in zip(cur, ac)]
            out.append(apply(cur))
        return out
    cur = [plain(u) for u in alg.unit]
    out = [apply(cur)]
    for _ in range(order):
        cur = alg.mul_plain(cur, ac)
        out.append(apply(cur))
    return out


def psi_plain(f, a, order):
    """psi_0..psi_order by Newton's recurrence, entries int where integral.

    n psi_n = sum_{k=1}^n (-1)^(k-1) f(a^k) psi_{n-k}.  Integers are kept as
    int for speed; callers that expose the values convert to Fraction.
    """
    B = f.codomain
    d = B.dim
    traces = _plain_traces(f, a, order)
    if B.split:
        cols = [_scalar_psis([t[x] for t in traces], order) for x in range(d)]
        return [[cols[x][n] for x in range(d)] for n in range(order + 1)]
    psis = [[plain(u) for u in B.unit]]
    for n in range(1, order + 1):
        acc = [0] * d
        for k in range(1, n + 1):
            pk = traces[k]
            if not any(pk):
                continue
            prod = B.mul_plain(pk, psis[n - k])
            if k % 2:
                for i in range(d):
                    acc[i] += prod[i]
            else:
                for i in range(d):
                    acc[i] -= prod[i]
        psis.append([_div(x, n) for x in acc])
    return psis


def psi_sequence(f, a, order):
    """psi_0..psi_order as coordinate lists of Fractions.

    The same numbers as char_function, without building series objects.
    """
    _check_domain(f, a)
    return [[Fraction(x) for x in row] for row in psi_plain(f, a, order)]


def _scalar_psis(p, order):
    """Newton's recurrence on plain numbers."""
    signed = [v if k % 2 else -v for k, v in enumerate(p)]
    out = [1]
    for n in range(1, order + 1):
        acc = 0
        for k in range(1, n + 1):
            acc += signed[k] * out[n - k]
        if type(acc) is int and acc % n == 0:
            out.append(acc // n)
        else:
            out.append(Fraction(acc) / n)
    return out


def psi(f, a, k):
    if k < 0:
        raise ValueError("k must be nonnegative")
    return char_function(f, a, k).series[k]


def newton_matrix(f, a, k):
    """The k x k matrix whose determinant is k! psi_k(f, a)."""
    B = f.codomain
    traces = [Element._make(B, t) for t in power_traces(f, a, k)]
    zero = B.zero()
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            if j <= i:
                row.append(traces[i - j + 1])
            elif j == i + 1:
                row.append(B.scalar(i + 1))
            else:
                row.append(zero)
        rows.append(row)
    return rows


def psi_newton(f, a, k):
    _check_domain(f, a)
    if k < 1:
        raise ValueError("psi_newton needs k >= 1")
    B = f.codomain
    det = linalg.ring_det(newton_matrix(f, a, k), B.one(), B.zero())
    return det / factorial(k)


def character(f):
    value = f(f.domain.one())
    c = value.scalar_value()
    integer = int(c) if c is not None and c.denominator == 1 else None
    return Character(value, integer)


def _nilpotent_order(x, bound):
    """Smallest m <= bound with x^m = 0, else None."""
    cur = x
    for m in range(1, bound + 1):
        if cur.is_zero():
            return m
        cur = cur * x
    return None


def _berezinian_nilpotent(f, a):
    A, B = f.domain, f.codomain
    n = a - A.one()
    m = _nilpotent_order(n, A.dim + 1)
    if m is None:
        raise BerezinianUndefined("Berezinian undefined by available methods: "
                                  "argument is not unit plus nilpotent")
    log_a = A.zero()
    for k in range(1, m):
        term = power(n, k) / k
        log_a = log_a + term if k % 2 else log_a - term
    b = f(log_a)
    mb = _nilpotent_order(b, B.dim + 1)
    if mb is None:
        raise BerezinianUndefined("Berezinian undefined by available methods: "
                                  "f(log a) is not nilpotent")
    out = B.one()
    term = B.one()
    for k in range(1, mb):
        term = term * b / k
        out = out + term
    return out


def _berezinian_reconstruction(f, a, order, max_degree):
    from .homclass import ReconstructionError, detect_degrees, reconstruct_rational

    B = f.codomain
    if not is_function_algebra(B):
        raise BerezinianUndefined("Berezinian undefined by available methods: "
                                  "codomain is not split")
    try:
        invert(a)
    except NotInvertible:
        raise BerezinianUndefined("Berezinian undefined by available methods: "
                                  "argument not invertible") from None
    chi = character(f).integer
    if chi is None:
        raise BerezinianUndefined("Berezinian undefined by available methods: "
                                  "character is not an integer")
    s = char_function(f, a, order).series
    degrees = detect_degrees(s, max_degree, max_degree)
    if degrees is None:
        raise BerezinianUndefined("Berezinian undefined by available methods: "
                                  "characteristic function not certified rational")
    try:
        form = reconstruct_rational(s, *degrees)
    except ReconstructionError as exc:
        raise BerezinianUndefined(str(exc)) from None
    coords = []
    for x in range(B.dim):
        num = [c.coords[x] for c in form.numerator]
        den = [c.coords[x] for c in form.denominator]
        dp = max(i for i, v in enumerate(num) if v) if any(num) else -1
        dq = max(i for i, v in enumerate(den) if v)
        if dp < 0 or dp - dq != chi:
            raise BerezinianUndefined("Berezinian undefined by available methods: "
                                      "pole order at infinity differs from the character")
        coords.append(num[dp] / den[dq])
    return Element._make(B, coords)


def berezinian(f, a, method="auto", order=16, max_degree=5):
    """Leading coefficient of R(f, a, z) at infinity, exp f(log a).

    ``nilpotent``: a = 1 + n with n nilpotent and f(log a) nilpotent, so both
    series terminate.  ``reconstruction``: split codomain; R is reconstructed
    as P/Q and the ratio of leading coefficients is taken per component.
    ``auto`` tries them in that order.
    """
    _check_domain(f, a)
    if method == "nilpotent":
        return _berezinian_nilpotent(f, a)
    if method == "reconstruction":
        return _berezinian_reconstruction(f, a, order, max_degree)
    if method != "auto":
        raise ValueError(f"unknown Berezinian method {method!r}")
    try:
        return _berezinian_nilpotent(f, a)
    except BerezinianUndefined:
        pass
    try:
        return _berezinian_reconstruction(f, a, order, max_degree)
    except BerezinianUndefined:
        raise BerezinianUndefined() from None


def infinity_expansion(f, a, order, method="auto"):
    """R(f, a, z) = z^chi Ber_f(a) R(f, a^{-1}, 1/z)."""
    chi = character(f)
    if not chi.integral:
        raise ValueError("character is not an integer; R cannot be rational")
    a_inv = invert(a)
    ber = berezinian(f, a, method)
    tail = char_function(f, a_inv, order).series
    return InfinityExpansion(chi.integer, ber, tail)


def monic_polynomial_form(r, n):
    """Coefficients of p(t) = t^n R(f, a, -1/t), lowest degree first."""
    if r.order < n:
        raise ValueError("series not polynomial of degree n at this order")
    for k in range(n + 1, r.order + 1):
        if not r.series[k].is_zero():
            raise ValueError("series not polynomial of degree n at this order")
    coeffs = [None] * (n + 1)
    for k in range(n + 1):
        c = r.series[k]
        coeffs[n - k] = c if k % 2 == 0 else -c
    return coeffs
