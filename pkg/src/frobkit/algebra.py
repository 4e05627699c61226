"""Finite-dimensional commutative unital algebras over Q.

An algebra is stored through its multiplication table: ``table[i][j]`` lists
the nonzero ``(k, c)`` with ``e_i e_j = sum_k c e_k``.  The dense structure
constants ``c[i][j][k]`` are available as a property and are what the JSON
format carries.  Basis labels are cosmetic; equality ignores them.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from itertools import product

from . import linalg


class AlgebraMismatch(ValueError):
    def __init__(self, msg="algebra mismatch"):
        super().__init__(msg)


class NotInvertible(ArithmeticError):
    def __init__(self, msg="element not invertible"):
        super().__init__(msg)


def to_q(x):
    """Parse an int, Fraction or "p/q" string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if "." in s or "e" in s.lower():
            raise ValueError(f"rationals must be written as p or p/q, got {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot read {x!r} as an exact rational")


def plain(x):
    """int when x is integral, else x unchanged."""
    return int(x) if x.denominator == 1 else x


ZERO = Fraction(0)
ONE = Fraction(1)


class Algebra:
    __slots__ = ("dim", "labels", "unit", "table", "_hash", "_dense", "_plain", "_split")

    def __init__(self, table, unit, labels=None):
        dim = len(unit)
        if dim < 1:
            raise ValueError("algebra dimension must be positive")
        if len(table) != dim or any(len(row) != dim for row in table):
            raise ValueError("multiplication table has wrong shape")
        canon = []
        for row in table:
            crow = []
            for entry in row:
                acc = {}
                for k, c in entry:
                    if not 0 <= k < dim:
                        raise ValueError(f"basis index {k} out of range")
                    acc[k] = acc.get(k, ZERO) + to_q(c)
                crow.append(tuple(sorted((k, c) for k, c in acc.items() if c)))
            canon.append(tuple(crow))
        self.table = tuple(canon)
        self.unit = tuple(to_q(u) for u in unit)
        self.dim = dim
        if labels is None:
            labels = [f"e{i}" for i in range(dim)]
        labels = tuple(str(s) for s in labels)
        if len(labels) != dim:
            raise ValueError("need one label per basis element")
        self.labels = labels
        self._hash = hash((self.table, self.unit))
        self._dense = None
        self._plain = None
        self._split = None

    @classmethod
    def from_structure_constants(cls, c, unit, labels=None):
        dim = len(unit)
        if len(c) != dim or any(len(row) != dim or any(len(v) != dim for v in row)
                                for row in c):
            raise ValueError("structure constants must have shape dim x dim x dim")
        table = [[[(k, c[i][j][k]) for k in range(dim)] for j in range(dim)]
                 for i in range(dim)]
        return cls(table, unit, labels)

    @property
    def structure_constants(self):
        if self._dense is None:
            d = self.dim
            dense = []
            for i in range(d):
                rows = []
                for j in range(d):
                    v = [ZERO] * d
                    for k, c in self.table[i][j]:
                        v[k] = c
                    rows.append(tuple(v))
                dense.append(tuple(rows))
            self._dense = tuple(dense)
        return self._dense

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Algebra):
            return NotImplemented
        return (self._hash == other._hash and self.unit == other.unit
                and self.table == other.table)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Algebra(dim={self.dim}, basis={list(self.labels)})"

    # coordinate-level kernels, used by the hot loops elsewhere

    @property
    def split(self):
        """Cached is_function_algebra(self)."""
        if self._split is None:
            self._split = is_function_algebra(self)
        return self._split

    @property
    def plain_table(self):
        """The table with integral constants stored as int (faster arithmetic)."""
        if self._plain is None:
            self._plain = tuple(tuple(tuple((k, plain(c)) for k, c in entry) for entry in row)
                                for row in self.table)
        return self._plain

    def mul_plain(self, x, y):
        """mul_coords on plain int/Fraction lists, without forcing Fractions."""
        out = [0] * self.dim
        table = self.plain_table
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = table[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                w = xi * yj
                for k, c in row[j]:
                    out[k] += w * c
        return out

    def mul_coords(self, x, y):
        out = [ZERO] * self.dim
        table = self.table
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = table[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                w = xi * yj
                for k, c in row[j]:
                    out[k] += w * c
        return out

    def element(self, coords):
        return Element(self, coords)

    def zero(self):
        return Element._make(self, (ZERO,) * self.dim)

    def one(self):
        return Element._make(self, self.unit)

    def basis(self, i):
        return Element._make(self, tuple(ONE if k == i else ZERO for k in range(self.dim)))

    def basis_elements(self):
        return [self.basis(i) for i in range(self.dim)]

    def scalar(self, c):
        c = to_q(c)
        return Element._make(self, tuple(c * u for u in self.unit))

    def multiplication_operator(self, a):
        """Matrix of b -> a*b in the basis (rows are output coordinates)."""
        cols = [self.mul_coords(a.coords, self.basis(j).coords) for j in range(self.dim)]
        return [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]


class Element:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        coords = tuple(to_q(x) for x in coords)
        if len(coords) != algebra.dim:
            raise ValueError(f"expected {algebra.dim} coordinates, got {len(coords)}")
        self.algebra = algebra
        self.coords = coords

    @classmethod
    def _make(cls, algebra, coords):
        obj = object.__new__(cls)
        obj.algebra = algebra
        obj.coords = tuple(coords)
        return obj

    def _check(self, other):
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise AlgebraMismatch()

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        return Element._make(self.algebra, (x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        return Element._make(self.algebra, (x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self):
        return Element._make(self.algebra, (-x for x in self.coords))

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return Element._make(self.algebra, (x * other for x in self.coords))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Element._make(self.algebra, (other * x for x in self.coords))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Element._make(self.algebra, (x / other for x in self.coords))
        if isinstance(other, Element):
            return mul(self, invert(other))
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            return power(invert(self), -k)
        return power(self, k)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.coords == other.coords and (
            self.algebra is other.algebra or self.algebra == other.algebra)

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self):
        return not any(self.coords)

    def scalar_value(self):
        """The rational c with self == c * unit, or None."""
        unit = self.algebra.unit
        c = None
        for x, u in zip(self.coords, unit):
            if u:
                c = x / u
                break
        if c is None:
            return ZERO if self.is_zero() else None
        if all(x == c * u for x, u in zip(self.coords, unit)):
            return c
        return None

    def __repr__(self):
        return f"Element({format_element(self)})"

    def __str__(self):
        return format_element(self)


def format_element(a):
    if a.algebra.dim == 1:
        return str(a.coords[0])
    terms = [f"{c}*{lab}" for c, lab in zip(a.coords, a.algebra.labels) if c]
    return " + ".join(terms) if terms else "0"


def mul(a, b):
    a._check(b)
    alg = a.algebra
    return Element._make(alg, alg.mul_coords(a.coords, b.coords))


def power(a, k):
    if k < 0:
        raise ValueError("use invert() for negative powers")
    result = a.algebra.one()
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def invert(a):
    alg = a.algebra
    op = alg.multiplication_operator(a)
    x = linalg.solve(op, list(alg.unit))
    if x is None:
        raise NotInvertible()
    inv = Element._make(alg, x)
    # a singular operator can still have the unit in its image only if it is
    # invertible, but guard against non-unital input structure anyway
    if mul(a, inv) != alg.one():
        raise NotInvertible()
    return inv


@dataclass
class AxiomReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {"ok": self.ok,
                "violations": [{"axiom": ax, "indices": list(ix)} for ax, ix in self.violations]}


def check_algebra_axioms(A):
    """Commutativity, associativity and unit law, on basis elements."""
    report = AxiomReport()
    d = A.dim
    for i in range(d):
        for j in range(i + 1, d):
            if A.table[i][j] != A.table[j][i]:
                dij = dict(A.table[i][j])
                dji = dict(A.table[j][i])
                for k in range(d):
                    if dij.get(k, ZERO) != dji.get(k, ZERO):
                        report.violations.append(("commutativity", (i, j, k)))
    basis = [A.basis(i).coords for i in range(d)]
    prods = [[A.mul_coords(basis[i], basis[j]) for j in range(d)] for i in range(d)]
    for i in range(d):
        for j in range(d):
            for k in range(d):
                left = A.mul_coords(prods[i][j], basis[k])
                right = A.mul_coords(basis[i], prods[j][k])
                for l in range(d):
                    if left[l] != right[l]:
                        report.violations.append(("associativity", (i, j, k, l)))
    for j in range(d):
        for side, got in (("left", A.mul_coords(A.unit, basis[j])),
                          ("right", A.mul_coords(basis[j], A.unit))):
            for k in range(d):
                if got[k] != basis[j][k]:
                    report.violations.append((f"unit ({side})", (j, k)))
    return report


# constructors

def function_algebra(labels):
    """Q^X: functions on a finite set with pointwise operations."""
    labels = list(labels)
    if not labels:
        raise ValueError("function algebra needs at least one point")
    if len(set(labels)) != len(labels):
        raise ValueError("point labels must be distinct")
    d = len(labels)
    table = [[((i, ONE),) if i == j else () for j in range(d)] for i in range(d)]
    return Algebra(table, [ONE] * d, labels)


def ground_field():
    return function_algebra(["1"])


def truncated_polynomial_algebra(m, var="x"):
    """Q[x]/(x^m), basis 1, x, ..., x^{m-1}."""
    if m < 1:
        raise ValueError("m must be positive")
    table = [[((i + j, ONE),) if i + j < m else () for j in range(m)] for i in range(m)]
    labels = ["1"] + [var if k == 1 else f"{var}^{k}" for k in range(1, m)]
    return Algebra(table, [ONE] + [ZERO] * (m - 1), labels)


def is_function_algebra(A):
    """True when A is presented in an idempotent basis (Q^X, split)."""
    if any(u != 1 for u in A.unit):
        return False
    for i in range(A.dim):
        for j in range(A.dim):
            want = ((i, ONE),) if i == j else ()
            if A.table[i][j] != want:
                return False
    return True


def tensor_product(A, B):
    da, db = A.dim, B.dim
    table = []
    for i, j in product(range(da), range(db)):
        row = []
        for i2, j2 in product(range(da), range(db)):
            row.append([(k * db + l, c * e) for k, c in A.table[i][i2] for l, e in B.table[j][j2]])
        table.append(row)
    unit = [u * v for u, v in product(A.unit, B.unit)]
    labels = [f"{a}⊗{b}" for a, b in product(A.labels, B.labels)]
    return Algebra(table, unit, labels)


@lru_cache(maxsize=64)
def tensor_power(A, n):
    """A^{⊗n}; basis index of (i_1, ..., i_n) is its position in product order."""
    if n < 1:
        raise ValueError("tensor power needs n >= 1")
    out = A
    for _ in range(n - 1):
        out = tensor_product(out, A)
    return out


def tensor_elements(*elements):
    alg = elements[0].algebra
    coords = elements[0].coords
    for e in elements[1:]:
        alg = tensor_product(alg, e.algebra)
        coords = [x * y for x, y in product(coords, e.coords)]
    return Element._make(alg, coords)


class LinearMap:
    __slots__ = ("domain", "codomain", "matrix")

    def __init__(self, domain, codomain, matrix):
        matrix = tuple(tuple(to_q(x) for x in row) for row in matrix)
        if len(matrix) != codomain.dim or any(len(row) != domain.dim for row in matrix):
            raise ValueError(
                f"matrix must be {codomain.dim} x {domain.dim} (codomain x domain)")
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix

    @classmethod
    def identity(cls, A):
        return cls(A, A, [[int(i == j) for j in range(A.dim)] for i in range(A.dim)])

    @classmethod
    def zero(cls, A, B):
        return cls(A, B, [[0] * A.dim for _ in range(B.dim)])

    def apply_coords(self, x):
        return [sum((m * v for m, v in zip(row, x) if v), ZERO) for row in self.matrix]

    def __call__(self, a):
        if a.algebra is not self.domain and a.algebra != self.domain:
            raise AlgebraMismatch()
        return Element._make(self.codomain, self.apply_coords(a.coords))

    def _check(self, other):
        if self.domain != other.domain or self.codomain != other.codomain:
            raise AlgebraMismatch("maps have different domain or codomain")

    def __add__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        self._check(other)
        return LinearMap(self.domain, self.codomain,
                         [[x + y for x, y in zip(r, s)] for r, s in zip(self.matrix, other.matrix)])

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return LinearMap(self.domain, self.codomain, [[c * x for x in r] for r in self.matrix])

    def __matmul__(self, other):
        """self @ other is the composition self ∘ other."""
        if not isinstance(other, LinearMap):
            return NotImplemented
        if other.codomain != self.domain:
            raise AlgebraMismatch("maps are not composable")
        return LinearMap(other.domain, self.codomain, linalg.matmul(self.matrix, other.matrix))

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.matrix == other.matrix and self.domain == other.domain
                and self.codomain == other.codomain)

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        rows = "; ".join(" ".join(str(x) for x in r) for r in self.matrix)
        return f"LinearMap({self.domain.dim}->{self.codomain.dim}: [{rows}])"


def compose(g, f):
    return g @ f


def evaluation_hom(A, x):
    """The point evaluation a -> a(x) on a function algebra, into Q."""
    if x not in A.labels:
        raise ValueError(f"unknown point {x!r}")
    i = A.labels.index(x)
    return LinearMap(A, ground_field(), [[int(k == i) for k in range(A.dim)]])


def pullback_hom(A, B, assignment):
    """Algebra map Q^X -> Q^Y, a -> a∘σ, for σ: Y -> X given as a dict of labels."""
    rows = []
    for y in B.labels:
        x = assignment[y]
        i = A.labels.index(x)
        rows.append([int(k == i) for k in range(A.dim)])
    return LinearMap(A, B, rows)


def integer_combination(maps, coeffs):
    if len(maps) != len(coeffs):
        raise ValueError("need one coefficient per map")
    if not maps:
        raise ValueError("empty combination has no domain")
    out = LinearMap.zero(maps[0].domain, maps[0].codomain)
    for f, n in zip(maps, coeffs):
        out = out + n * f
    return out


def tensor_maps(f, g):
    """f ⊗ g : A ⊗ A' -> B ⊗ B' (Kronecker product of matrices)."""
    rows = [[x * y for x, y in product(rf, rg)] for rf, rg in product(f.matrix, g.matrix)]
    return LinearMap(tensor_product(f.domain, g.domain),
                     tensor_product(f.codomain, g.codomain), rows)
