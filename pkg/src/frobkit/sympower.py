"""S^n(A), the symmetric tensors inside A^{⊗n}, and the correspondence
between n-homomorphisms A -> B and algebra homomorphisms S^n(A) -> B.

Normalisation: the basis vector of S^n(A) for a multiset M = {i_1, ..., i_n}
is the orbit average (1/|orbit|) sum of e_w over the distinct orderings w of
M.  This equals the full symmetrisation sym(e_{i_1}, ..., e_{i_n}) =
(1/n!) sum_sigma e_{i_sigma(1)} ⊗ ... ⊗ e_{i_sigma(n)}, and sym(a, ..., a) is
a ⊗ ... ⊗ a.  The homomorphism attached to f is then fixed by

    F(sym(a_1, ..., a_n)) = Phi_n(f; a_1, ..., a_n) / n!

so on the multiset basis F(s_M) = Phi_n(f; e_{i_1}, ..., e_{i_n}) / n!.
"""

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from math import comb, factorial

from . import linalg
from .algebra import (Algebra, AlgebraMismatch, Element, LinearMap, ZERO,
                      check_algebra_axioms, tensor_power)
from .frobenius import _Recursion
from .homclass import BASIS, is_n_hom
from .charfn import psi_sequence


class NotInImage(ValueError):
    pass


def _tensor_index(idx, d):
    out = 0
    for i in idx:
        out = out * d + i
    return out


class SymPowerAlgebra:
    def __init__(self, base, n):
        if n < 1:
            raise ValueError("n must be at least 1")
        self.base = base
        self.n = n
        d = base.dim
        self.tensor = tensor_power(base, n)
        self.multisets = list(combinations_with_replacement(range(d), n))
        dim = len(self.multisets)
        cols = []
        for ms in self.multisets:
            orbit = set(permutations(ms))
            w = Fraction(1, len(orbit))
            col = [ZERO] * self.tensor.dim
            for word in orbit:
                col[_tensor_index(word, d)] = w
            cols.append(col)
        self._emb = [[cols[j][r] for j in range(dim)] for r in range(self.tensor.dim)]
        self._left = linalg.left_inverse(self._emb)
        table = []
        for i in range(dim):
            row = []
            for j in range(dim):
                prod = self.tensor.mul_coords(cols[i], cols[j])
                row.append([(k, c) for k, c in enumerate(self._preimage_coords(prod)) if c])
            table.append(row)
        unit = self._preimage_coords(list(self.tensor.unit))
        labels = ["{" + ",".join(base.labels[i] for i in ms) + "}" for ms in self.multisets]
        self.algebra = Algebra(table, unit, labels)
        self.embedding = LinearMap(self.algebra, self.tensor, self._emb)
        self._validate()

    @property
    def dim(self):
        return self.algebra.dim

    def _preimage_coords(self, t):
        x = linalg.matvec(self._left, t)
        if linalg.matvec(self._emb, x) != list(t):
            raise NotInImage("tensor is not symmetric (outside the embedding image)")
        return x

    def _validate(self):
        report = check_algebra_axioms(self.algebra)
        if not report.ok:
            raise RuntimeError(f"S^{self.n} structure constants fail the axioms: "
                               f"{report.violations[:3]}")
        for u in self.algebra.basis_elements():
            for v in self.algebra.basis_elements():
                if self.embedding(u * v) != self.embedding(u) * self.embedding(v):
                    raise RuntimeError("embedding is not multiplicative")
        if self.embedding(self.algebra.one()) != self.tensor.one():
            raise RuntimeError("embedding is not unital")

    def embed(self, u):
        return self.embedding(u)

    def preimage(self, t):
        if t.algebra != self.tensor:
            raise AlgebraMismatch()
        return Element._make(self.algebra, self._preimage_coords(t.coords))

    def slot(self, a, position):
        """1 ⊗ ... ⊗ a ⊗ ... ⊗ 1 with a in the given slot, in A^{⊗n}."""
        factors = [self.base.unit] * self.n
        factors[position] = a.coords
        coords = [ZERO] * self.tensor.dim
        d = self.base.dim
        for idx in product(range(d), repeat=self.n):
            c = Fraction(1)
            for t, i in enumerate(idx):
                c *= factors[t][i]
                if not c:
                    break
            if c:
                coords[_tensor_index(idx, d)] = c
        return Element._make(self.tensor, coords)

    def sym(self, *elements):
        """Symmetrised tensor sym(a_1, ..., a_n) as an element of S^n(A)."""
        if len(elements) != self.n:
            raise ValueError(f"need {self.n} factors")
        d = self.base.dim
        coords = [ZERO] * self.tensor.dim
        weight = Fraction(1, factorial(self.n))
        for order in permutations(range(self.n)):
            fs = [elements[t].coords for t in order]
            for idx in product(range(d), repeat=self.n):
                c = weight
                for t, i in enumerate(idx):
                    c *= fs[t][i]
                    if not c:
                        break
                if c:
                    coords[_tensor_index(idx, d)] += c
        return Element._make(self.algebra, self._preimage_coords(coords))

    def __repr__(self):
        return f"SymPowerAlgebra(n={self.n}, base_dim={self.base.dim}, dim={self.dim})"


@lru_cache(maxsize=32)
def sym_power_algebra(A, n):
    return SymPowerAlgebra(A, n)


@dataclass(frozen=True)
class Correspondence:
    f: LinearMap
    F: LinearMap
    n: int
    sym: SymPowerAlgebra


class NotNHomomorphism(ValueError):
    pass


class NotAlgebraHomomorphism(ValueError):
    pass


def is_algebra_hom(F):
    """F(1) = 1 and F(e_i e_j) = F(e_i) F(e_j) on all basis pairs."""
    A = F.domain
    if F(A.one()) != F.codomain.one():
        return False
    basis = A.basis_elements()
    images = [F(e) for e in basis]
    for i, u in enumerate(basis):
        for j in range(i, len(basis)):
            if F(u * basis[j]) != images[i] * images[j]:
                return False
    return True


def br_F_from_f(f, n, sym=None, bound=12, strategy=BASIS, check=True):
    """The homomorphism S^n(A) -> B attached to an n-homomorphism f."""
    if check:
        report = is_n_hom(f, n, bound, strategy)
        if not report.passed:
            raise NotNHomomorphism(f"map is not a {n}-homomorphism: {report.witnesses[:1]}")
    if sym is None:
        sym = sym_power_algebra(f.domain, n)
    rec = _Recursion(f, "ordered")
    basis = [e.coords for e in f.domain.basis_elements()]
    nf = factorial(n)
    cols = [[x / nf for x in rec(tuple(basis[i] for i in ms))] for ms in sym.multisets]
    matrix = [[cols[j][r] for j in range(len(cols))] for r in range(f.codomain.dim)]
    return LinearMap(sym.algebra, f.codomain, matrix)


def br_f_from_F(F, sym):
    """The n-homomorphism a -> F(a⊗1⊗...⊗1 + ... + 1⊗...⊗1⊗a)."""
    if F.domain != sym.algebra:
        raise AlgebraMismatch()
    if not is_algebra_hom(F):
        raise NotAlgebraHomomorphism("F is not an algebra homomorphism on S^n(A)")
    A = sym.base
    cols = []
    for e in A.basis_elements():
        total = sym.slot(e, 0)
        for t in range(1, sym.n):
            total = total + sym.slot(e, t)
        cols.append(F(sym.preimage(total)).coords)
    matrix = [[cols[j][r] for j in range(A.dim)] for r in range(F.codomain.dim)]
    return LinearMap(A, F.codomain, matrix)


def correspondence(f, n, **kwargs):
    sym = sym_power_algebra(f.domain, n)
    return Correspondence(f, br_F_from_f(f, n, sym, **kwargs), n, sym)


def lambda_char_poly(a, n, sym=None):
    """Coefficients of det(1 + Λ(a) z) = prod_t (1 + a_(t) z) in A^{⊗n}."""
    if sym is None:
        sym = sym_power_algebra(a.algebra, n)
    T = sym.tensor
    coeffs = [T.one()]
    for t in range(n):
        at = sym.slot(a, t)
        nxt = coeffs + [T.zero()]
        for k in range(len(coeffs)):
            nxt[k + 1] = nxt[k + 1] + at * coeffs[k]
        coeffs = nxt
    return coeffs


def verify_key_formula(f, a, n, F=None, sym=None):
    """F applied to the coefficients of det(1 + Λ(a) z) gives psi_0..psi_n of f at a."""
    if sym is None:
        sym = sym_power_algebra(f.domain, n)
    if F is None:
        F = br_F_from_f(f, n, sym)
    coeffs = lambda_char_poly(a, n, sym)
    psis = psi_sequence(f, a, n)
    for k, c in enumerate(coeffs):
        try:
            u = sym.preimage(c)
        except NotInImage:
            raise NotInImage(f"coefficient of z^{k} is not a symmetric tensor") from None
        if list(F(u).coords) != list(psis[k]):
            return False
    return True


def spanning_powers(A, n, sym=None):
    """Elements a with a⊗...⊗a forming a basis of S^n(A); returns (elements, rank)."""
    if sym is None:
        sym = sym_power_algebra(A, n)
    elements = []
    for ms in combinations_with_replacement(range(A.dim), n):
        coords = [0] * A.dim
        for i in ms:
            coords[i] += 1
        elements.append(A.element(coords))
    rows = [sym.sym(*([a] * n)).coords for a in elements]
    return elements, linalg.rank(rows)


def expected_dim(A, n):
    return comb(A.dim + n - 1, n)
