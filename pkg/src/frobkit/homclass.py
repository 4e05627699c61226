"""Deciding n-homomorphisms and p|q-homomorphisms; rational reconstruction.

Both tests quantify over every element a of the domain.  psi_k(f, a) is a
homogeneous polynomial of degree k in the coordinates of a, and a Hankel
determinant of psi's is homogeneous of known degree D as well.  A homogeneous
polynomial vanishes identically iff its dehomogenisation at the first
coordinate does, and a polynomial of total degree <= D in m variables vanishes
iff it vanishes on the simplex grid {alpha in N^m : |alpha| <= D}.  So the
"basis-exhaustive" strategy probes a = e_0 + sum alpha_i e_i over that grid,
which decides the universally quantified condition exactly.  A condition of
lower degree d only needs the points with |alpha| <= d, a sub-grid that is
itself unisolvent for degree d, so each grid point is tested only against the
conditions whose degree reaches it.
"""

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import linalg
from .algebra import Element, ZERO, is_function_algebra, invert
from .charfn import character, psi_plain, psi_sequence
from .series import TruncatedSeries

DEFAULT_GRID_BUDGET = 200_000


def grid_budget():
    return int(os.environ.get("FROBKIT_BUDGET", DEFAULT_GRID_BUDGET))


class ReconstructionError(ValueError):
    def __init__(self, msg, certified_through=None):
        super().__init__(msg)
        self.certified_through = certified_through


@dataclass
class Strategy:
    name: str = "basis"
    samples: int = 200
    seed: int = 0
    require_certainty: bool = False

    def to_json(self):
        if self.name == "basis":
            return {"name": "basis-exhaustive"}
        return {"name": "randomized", "samples": self.samples, "seed": self.seed}


BASIS = Strategy("basis")


@dataclass
class HomTestReport:
    verdict: str
    checked_bound: int
    witnesses: list = field(default_factory=list)
    strategy: dict = field(default_factory=dict)
    test: str = ""

    @property
    def passed(self):
        return self.verdict == "pass"

    @property
    def exact(self):
        return self.strategy.get("name") == "basis-exhaustive"

    @property
    def label(self):
        """The verdict, with sampled passes marked as such."""
        if self.verdict == "pass" and not self.exact:
            return "inconclusive-pass"
        return self.verdict

    def to_json(self):
        return {"test": self.test, "verdict": self.verdict, "label": self.label,
                "exact": self.exact, "checked_bound": self.checked_bound,
                "strategy": self.strategy, "witnesses": self.witnesses}


@dataclass(frozen=True)
class HankelWitness:
    base_index: int
    size: int
    matrix: tuple
    determinant: Element


def _qs(coords):
    return [str(x) for x in coords]


def grid_points(dim, degree):
    """Exponent vectors alpha in N^(dim-1) with |alpha| <= degree."""
    m = dim - 1
    if m == 0:
        yield ()
        return
    # stars and bars over degree + m slots
    for bars in combinations(range(degree + m), m):
        alpha = []
        prev = -1
        for b in bars:
            alpha.append(b - prev - 1)
            prev = b
        yield tuple(alpha)


def _grid_size(dim, degree):
    from math import comb
    return comb(degree + dim - 1, dim - 1)


def probe_elements(A, degree, strategy):
    """Elements of A to test on, with a JSON description of the strategy."""
    if strategy.name == "basis":
        size = _grid_size(A.dim, degree)
        if size > grid_budget():
            raise ValueError(
                f"exhaustive grid needs {size} points (budget {grid_budget()}); "
                "raise FROBKIT_BUDGET or use the randomized strategy")
        desc = {"name": "basis-exhaustive", "grid_degree": degree, "points": size}

        def gen():
            for alpha in grid_points(A.dim, degree):
                yield Element._make(A, (Fraction(1),) + tuple(Fraction(x) for x in alpha))
        return gen(), desc
    if strategy.name == "random":
        rng = random.Random(strategy.seed)
        desc = strategy.to_json()

        def gen():
            for _ in range(strategy.samples):
                yield Element._make(A, [Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                                        for _ in range(A.dim)])
        return gen(), desc
    raise ValueError(f"unknown strategy {strategy.name!r}")


def _height(a, strategy):
    """|alpha| of a grid point (0 for random samples, which face every test)."""
    if strategy.name != "basis":
        return 0
    return int(sum(a.coords[1:]))


def _final_verdict(witnesses, strategy):
    if witnesses:
        return "fail"
    if strategy.name != "basis" and strategy.require_certainty:
        return "inconclusive"
    return "pass"


def _character_witness(f, expected):
    chi = character(f)
    want = f.codomain.scalar(expected)
    if chi.value != want:
        return {"kind": "character", "value": _qs(chi.value.coords), "expected": expected}
    return None


def is_n_hom(f, n, bound=12, strategy=BASIS, max_witnesses=3):
    """f(1) = n and psi_k(f, a) = 0 for n < k <= bound, for all a."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if bound < n + 1:
        raise ValueError("bound must be at least n+1")
    test = f"n-hom n={n}"
    w = _character_witness(f, n)
    if w is not None:
        return HomTestReport("fail", bound, [w], strategy.to_json(), test)
    points, desc = probe_elements(f.domain, bound, strategy)
    witnesses = []
    for a in points:
        psis = psi_plain(f, a, bound)
        for k in range(max(n + 1, _height(a, strategy)), bound + 1):
            if any(psis[k]):
                witnesses.append({"kind": "psi", "a": _qs(a.coords), "k": k,
                                  "value": _qs(psis[k])})
                break
        if len(witnesses) >= max_witnesses:
            break
    return HomTestReport(_final_verdict(witnesses, strategy), bound, witnesses, desc, test)


def _hankel_windows(p, q, bound):
    return range(p - q + 1, bound - 2 * q + 1)


def _psi_at(psis, k, zero):
    return psis[k] if k >= 0 else zero


def _hankel_dets(B, split, psis, ks, size, offset):
    """Yields (k, determinant coords) for each window k; psis padded by offset zeros."""
    if split:
        seqs = [[row[x] for row in psis] for x in range(B.dim)]
        exact_int = all(type(v) is int for seq in seqs for v in seq)
        det = linalg.int_det if exact_int else linalg.det
        for k in ks:
            s = k + offset
            yield k, [det([seq[s + i:s + i + size] for i in range(size)]) for seq in seqs]
        return
    one, zero = B.one(), B.zero()
    elems = [Element._make(B, [Fraction(x) for x in row]) for row in psis]
    for k in ks:
        s = k + offset
        mat = [elems[s + i:s + i + size] for i in range(size)]
        yield k, list(linalg.ring_det(mat, one, zero).coords)


def hankel_witness(f, a, k, q, order=None):
    """The (q+1) x (q+1) matrix (psi_{k+i+j}) and its determinant at a."""
    size = q + 1
    top = k + 2 * q
    psis = psi_sequence(f, a, max(top, 0) if order is None else order)
    B = f.codomain
    zero = [ZERO] * B.dim
    matrix = tuple(tuple(Element._make(B, _psi_at(psis, k + i + j, zero)) for j in range(size))
                   for i in range(size))
    det = linalg.ring_det([list(r) for r in matrix], B.one(), B.zero())
    return HankelWitness(k, size, matrix, det)


def is_pq_hom(f, p, q, bound=12, strategy=BASIS, max_witnesses=3):
    """f(1) = p - q and det(psi_{k+i+j})_{i,j<=q} = 0 for p-q+1 <= k <= bound-2q."""
    if p < 0 or q < 0:
        raise ValueError("p and q must be nonnegative")
    windows = _hankel_windows(p, q, bound)
    if len(windows) == 0 or bound < p + q + 2:
        raise ValueError(f"bound too small for any Hankel window (need bound >= {p + q + 2})")
    test = f"p|q-hom p={p} q={q}"
    w = _character_witness(f, p - q)
    if w is not None:
        return HomTestReport("fail", bound, [w], strategy.to_json(), test)
    B = f.codomain
    split = B.split
    size = q + 1
    degree = size * (windows[-1] + q)
    points, desc = probe_elements(f.domain, degree, strategy)
    witnesses = []
    offset = max(0, -windows[0])
    pad = [[0] * B.dim for _ in range(offset)]
    for a in points:
        psis = pad + psi_plain(f, a, bound)
        h = _height(a, strategy)
        ks = [k for k in windows if size * (k + q) >= h]
        for k, det in _hankel_dets(B, split, psis, ks, size, offset):
            if any(det):
                witnesses.append({"kind": "hankel", "a": _qs(a.coords), "k": k,
                                  "size": size, "determinant": _qs(det)})
                break
        if len(witnesses) >= max_witnesses:
            break
    return HomTestReport(_final_verdict(witnesses, strategy), bound, witnesses, desc, test)


def replay_witness(f, witness):
    """Recompute a recorded witness; True iff it still shows a failure."""
    kind = witness["kind"]
    if kind == "character":
        return character(f).value != f.codomain.scalar(witness["expected"])
    a = Element(f.domain, witness["a"])
    k = witness["k"]
    if kind == "psi":
        psis = psi_sequence(f, a, k)
        return any(psis[k]) and _qs(psis[k]) == witness["value"]
    if kind == "hankel":
        hw = hankel_witness(f, a, k, witness["size"] - 1)
        return (not hw.determinant.is_zero()) and _qs(hw.determinant.coords) == witness["determinant"]
    raise ValueError(f"unknown witness kind {kind!r}")


# rational reconstruction

@dataclass(frozen=True)
class RationalForm:
    """P/Q with Q(0) = 1; coefficients are elements of a split algebra."""
    numerator: tuple
    denominator: tuple
    p: int
    q: int
    certified_through: int

    @property
    def algebra(self):
        return self.numerator[0].algebra

    def series(self, order):
        num = TruncatedSeries.polynomial(list(self.numerator), order)
        den = TruncatedSeries.polynomial(list(self.denominator), order)
        from .series import series_invert
        return num * series_invert(den)

    def evaluate(self, z):
        """P(z)/Q(z) at a rational z; raises NotInvertible at a pole."""
        num = TruncatedSeries.polynomial(list(self.numerator), self.p).evaluate(z)
        den = TruncatedSeries.polynomial(list(self.denominator), self.q).evaluate(z)
        return num * invert(den)

    def to_json(self):
        return {"p": self.p, "q": self.q, "certified_through": self.certified_through,
                "numerator": [_qs(c.coords) for c in self.numerator],
                "denominator": [_qs(c.coords) for c in self.denominator]}


def _pade_scalar(c, p, q):
    """Scalar Pade step: (P, Q) with Q(0)=1 and c*Q - P = O(z^{p+q+1}), or None."""
    def coef(k):
        return c[k] if k >= 0 else ZERO
    qs = []
    if q:
        rows = [[coef(m - j) for j in range(1, q + 1)] for m in range(p + 1, p + q + 1)]
        rhs = [-coef(m) for m in range(p + 1, p + q + 1)]
        qs = linalg.solve(rows, rhs)
        if qs is None:
            return None
    Q = [Fraction(1)] + list(qs)
    P = [sum((Q[j] * coef(k - j) for j in range(min(k, q) + 1)), ZERO) for k in range(p + 1)]
    return P, Q


def _first_mismatch(c, P, Q):
    """Smallest m with (c*Q)_m != P_m, or None."""
    q = len(Q) - 1
    for m in range(len(c)):
        v = sum((Q[j] * c[m - j] for j in range(min(m, q) + 1)), ZERO)
        want = P[m] if m < len(P) else ZERO
        if v != want:
            return m
    return None


def reconstruct_rational(s, p, q):
    B = s.algebra
    if not is_function_algebra(B):
        raise ReconstructionError("reconstruction requires a split codomain "
                                  "(ground field or function algebra)")
    if s.order < p + q + 1:
        raise ValueError(f"series order {s.order} too small for degrees ({p}, {q})")
    coords = s.coords()
    nums, dens = [], []
    for x in range(B.dim):
        c = [row[x] for row in coords]
        pq = _pade_scalar(c, p, q)
        if pq is None:
            raise ReconstructionError("not a p|q rational series")
        P, Q = pq
        bad = _first_mismatch(c, P, Q)
        if bad is not None:
            raise ReconstructionError("rational form inconsistent with tail",
                                      certified_through=bad - 1)
        nums.append(P)
        dens.append(Q)
    numerator = tuple(Element._make(B, [nums[x][k] for x in range(B.dim)]) for k in range(p + 1))
    denominator = tuple(Element._make(B, [dens[x][k] for x in range(B.dim)]) for k in range(q + 1))
    return RationalForm(numerator, denominator, p, q, s.order)


def detect_degrees(s, max_p, max_q):
    """Minimal (p, q) by p+q, then smaller q, whose reconstruction certifies."""
    if s.order < max_p + max_q + 1:
        raise ValueError("series order too small for the requested degree range")
    for total in range(max_p + max_q + 1):
        for q in range(min(total, max_q) + 1):
            p = total - q
            if p > max_p:
                continue
            try:
                form = reconstruct_rational(s, p, q)
            except ReconstructionError:
                continue
            if form.certified_through == s.order:
                return (p, q)
    return None
