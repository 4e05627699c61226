"""Truncated power series in z with coefficients in a commutative algebra."""

from fractions import Fraction

from .algebra import AlgebraMismatch, Element, NotInvertible, ZERO, format_element, invert


class TruncatedSeries:
    """c_0 + c_1 z + ... + c_N z^N, with everything above z^N unknown.

    Arithmetic between series of different orders truncates to the smaller
    order, since the higher coefficients of the shorter one are not known.
    """

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        coeffs = tuple(c if isinstance(c, Element) else Element(algebra, c) for c in coeffs)
        if not coeffs:
            raise ValueError("a series needs at least its constant term")
        for c in coeffs:
            if c.algebra is not algebra and c.algebra != algebra:
                raise AlgebraMismatch()
        self.algebra = algebra
        self.coeffs = coeffs

    @classmethod
    def _from_coords(cls, algebra, rows):
        obj = object.__new__(cls)
        obj.algebra = algebra
        obj.coeffs = tuple(Element._make(algebra, r) for r in rows)
        return obj

    @classmethod
    def one(cls, algebra, order):
        return cls.constant(algebra.one(), order)

    @classmethod
    def constant(cls, c, order):
        zero = c.algebra.zero()
        return cls(c.algebra, [c] + [zero] * order)

    @classmethod
    def polynomial(cls, coeffs, order):
        """Series of a polynomial given by its coefficients (Elements), padded or cut to order."""
        alg = coeffs[0].algebra
        zero = alg.zero()
        padded = list(coeffs[: order + 1]) + [zero] * (order + 1 - len(coeffs))
        return cls(alg, padded)

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def coords(self):
        return [c.coords for c in self.coeffs]

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries._from_coords(self.algebra, self.coords()[: order + 1])

    def _check(self, other):
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise AlgebraMismatch()

    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_add(self, -other)

    def __neg__(self):
        return TruncatedSeries._from_coords(self.algebra, [[-x for x in c] for c in self.coords()])

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries._from_coords(
                self.algebra, [[x * other for x in c] for c in self.coords()])
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.algebra == other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def evaluate(self, z):
        """Value of the truncated polynomial at a rational z (Horner)."""
        acc = self.algebra.zero()
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def degree(self):
        """Index of the last nonzero coefficient, or -1 for the zero series."""
        for k in range(self.order, -1, -1):
            if not self.coeffs[k].is_zero():
                return k
        return -1

    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f"TruncatedSeries(order={self.order}: {format_series(self)})"


def format_series(s, var="z"):
    terms = []
    for k, c in enumerate(s.coeffs):
        if c.is_zero():
            continue
        txt = format_element(c)
        if s.algebra.dim > 1 and ("+" in txt or "-" in txt[1:]):
            txt = f"({txt})"
        if k == 0:
            terms.append(txt)
        elif k == 1:
            terms.append(f"{txt} {var}")
        else:
            terms.append(f"{txt} {var}^{k}")
    body = " + ".join(terms) if terms else "0"
    body = body.replace(" + -", " - ")
    return f"{body} + O({var}^{s.order + 1})"


# coordinate kernels: lists of coordinate rows, shared algebra

def _mul_rows(alg, x, y, order):
    d = alg.dim
    out = [[ZERO] * d for _ in range(order + 1)]
    for i in range(order + 1):
        xi = x[i]
        if not any(xi):
            continue
        for j in range(order + 1 - i):
            yj = y[j]
            if not any(yj):
                continue
            prod = alg.mul_coords(xi, yj)
            row = out[i + j]
            for k in range(d):
                row[k] += prod[k]
    return out


def exp_rows(alg, s, order):
    """exp of a series with zero constant term, via n e_n = sum_k k s_k e_{n-k}."""
    if any(s[0]):
        raise ValueError("exp requires zero constant term")
    d = alg.dim
    e = [list(alg.unit)]
    for n in range(1, order + 1):
        acc = [ZERO] * d
        for k in range(1, n + 1):
            sk = s[k]
            if not any(sk):
                continue
            prod = alg.mul_coords(sk, e[n - k])
            for i in range(d):
                acc[i] += k * prod[i]
        e.append([x / n for x in acc])
    return e


def log_rows(alg, s, order):
    """log of a series with unit constant term, via n l_n = n s_n - sum_k k l_k s_{n-k}."""
    if tuple(s[0]) != alg.unit:
        raise ValueError("log requires the unit as constant term")
    d = alg.dim
    logs = [[ZERO] * d]
    for n in range(1, order + 1):
        acc = [n * x for x in s[n]]
        for k in range(1, n):
            lk = logs[k]
            if not any(lk):
                continue
            prod = alg.mul_coords(lk, s[n - k])
            for i in range(d):
                acc[i] -= k * prod[i]
        logs.append([x / n for x in acc])
    return logs


def series_add(s, t):
    s._check(t)
    order = min(s.order, t.order)
    rows = [[x + y for x, y in zip(a.coords, b.coords)]
            for a, b in zip(s.coeffs[: order + 1], t.coeffs[: order + 1])]
    return TruncatedSeries._from_coords(s.algebra, rows)


def series_mul(s, t):
    s._check(t)
    order = min(s.order, t.order)
    return TruncatedSeries._from_coords(
        s.algebra, _mul_rows(s.algebra, s.coords(), t.coords(), order))


def series_exp(s):
    if not s.coeffs[0].is_zero():
        raise ValueError("exp requires zero constant term")
    return TruncatedSeries._from_coords(s.algebra, exp_rows(s.algebra, s.coords(), s.order))


def series_log(s):
    if s.coeffs[0] != s.algebra.one():
        raise ValueError("log requires the unit as constant term")
    return TruncatedSeries._from_coords(s.algebra, log_rows(s.algebra, s.coords(), s.order))


def series_invert(s):
    alg = s.algebra
    try:
        c0inv = invert(s.coeffs[0]).coords
    except NotInvertible:
        raise NotInvertible("constant term not invertible") from None
    x = s.coords()
    d = alg.dim
    out = [list(c0inv)]
    for n in range(1, s.order + 1):
        acc = [ZERO] * d
        for k in range(1, n + 1):
            if not any(x[k]):
                continue
            prod = alg.mul_coords(x[k], out[n - k])
            for i in range(d):
                acc[i] += prod[i]
        out.append([-v for v in alg.mul_coords(c0inv, acc)])
    return TruncatedSeries._from_coords(alg, out)


def map_coefficients(f, s):
    if s.algebra is not f.domain and s.algebra != f.domain:
        raise AlgebraMismatch()
    return TruncatedSeries._from_coords(f.codomain, [f.apply_coords(c) for c in s.coords()])


def one_plus_az(a, order):
    """The series 1 + a z."""
    alg = a.algebra
    zero = alg.zero()
    coeffs = [alg.one(), a] + [zero] * (order - 1)
    return TruncatedSeries(alg, coeffs[: order + 1])
