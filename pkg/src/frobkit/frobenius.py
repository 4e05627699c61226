"""The Frobenius recursion Phi_k(f; a_1, ..., a_k).

    Phi_1(a) = f(a)
    Phi_{k+1}(a_1, ..., a_{k+1}) = f(a_1) Phi_k(a_2, ..., a_{k+1})
                                   - sum_j Phi_k(a_2, ..., a_1 a_j, ..., a_{k+1})
"""

from dataclasses import dataclass
from itertools import permutations, product
from math import factorial

from .algebra import AlgebraMismatch, Element, LinearMap
from .charfn import psi

MEMO_MODES = ("ordered", "sorted", None)
SYMMETRY_GUARD = 7


@dataclass(frozen=True)
class FrobeniusValue:
    map: LinearMap
    args: tuple
    value: Element


class _Recursion:
    """One evaluation context; the memo lives exactly as long as this object.

    ``ordered`` keys on the argument tuple as given, which is always sound.
    ``sorted`` keys on the sorted tuple and so presumes the symmetry of Phi.
    """

    def __init__(self, f, memo="ordered"):
        if memo not in MEMO_MODES:
            raise ValueError(f"memo must be one of {MEMO_MODES}")
        self.f = f
        self.A = f.domain
        self.B = f.codomain
        self.memo = memo
        self.cache = {}

    def __call__(self, args):
        if len(args) == 1:
            return tuple(self.f.apply_coords(args[0]))
        if self.memo is not None:
            key = args if self.memo == "ordered" else tuple(sorted(args))
            hit = self.cache.get(key)
            if hit is not None:
                return hit
        a1, rest = args[0], args[1:]
        B = self.B
        out = B.mul_coords(self.f.apply_coords(a1), self(rest))
        for j in range(len(rest)):
            merged = rest[:j] + (tuple(self.A.mul_coords(a1, rest[j])),) + rest[j + 1:]
            sub = self(merged)
            for i in range(B.dim):
                out[i] -= sub[i]
        out = tuple(out)
        if self.memo is not None:
            self.cache[key] = out
        return out


def _coords(f, args):
    if not args:
        raise ValueError("Frobenius map needs at least one argument")
    for a in args:
        if a.algebra is not f.domain and a.algebra != f.domain:
            raise AlgebraMismatch()
    return tuple(a.coords for a in args)


def frobenius_map(f, args, memo="ordered"):
    rec = _Recursion(f, memo)
    return Element._make(f.codomain, rec(_coords(f, args)))


def frobenius_value(f, args, memo="ordered"):
    return FrobeniusValue(f, tuple(args), frobenius_map(f, args, memo))


def check_symmetry(f, args, guard=SYMMETRY_GUARD, override=False):
    """Phi_k takes one value on every permutation of args.

    Uses the ordered memo only, so nothing here presumes the symmetry.
    """
    k = len(args)
    if k > guard and not override:
        raise ValueError(f"symmetry check over {k}! permutations exceeds the guard k <= {guard}; "
                         "pass override=True to run it anyway")
    coords = _coords(f, args)
    rec = _Recursion(f, "ordered")
    values = {rec(perm) for perm in set(permutations(coords))}
    return len(values) == 1


def check_polarization(f, a, k, memo="ordered"):
    """Phi_k(a, ..., a) == k! psi_k(f, a)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    lhs = frobenius_map(f, [a] * k, memo)
    return lhs == psi(f, a, k) * factorial(k)


def vanishes_on_basis(f, k, memo="ordered"):
    """Phi_k(e_{i_1}, ..., e_{i_k}) = 0 for every tuple of basis indices."""
    basis = [e.coords for e in f.domain.basis_elements()]
    rec = _Recursion(f, memo)
    for idx in product(range(len(basis)), repeat=k):
        if any(rec(tuple(basis[i] for i in idx))):
            return False
    return True
