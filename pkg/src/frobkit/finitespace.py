"""Generalised symmetric powers Sym^{p|q}(X) of a finite set X.

Sym^{p|q}(X) is X^{p+q} modulo permutations of the first p slots, of the
last q slots, and the cancellation move: when slot p and slot p+q hold the
same point y, that pair may be replaced by any common point z.  The quotient
is computed as the equivalence closure of exactly these generators with a
union-find over all of X^{p+q}; no normal form is assumed.
"""

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import comb

from .algebra import LinearMap, evaluation_hom, function_algebra, ground_field, integer_combination
from .charfn import character
from .homclass import BASIS, Strategy, is_n_hom, is_pq_hom

DEFAULT_BUDGET = 10 ** 6


def enumeration_budget():
    return int(os.environ.get("FROBKIT_BUDGET", DEFAULT_BUDGET))


class BudgetExceeded(ValueError):
    def __init__(self, needed, budget):
        super().__init__(f"enumeration needs {needed} configurations, budget is {budget} "
                         "(set FROBKIT_BUDGET to raise it)")
        self.needed = needed


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.rank = dict.fromkeys(self.parent, 0)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        self.parent[y] = x
        if self.rank[x] == self.rank[y]:
            self.rank[x] += 1

    def groups(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


@dataclass(frozen=True)
class FiniteSpace:
    points: tuple

    def __init__(self, points):
        points = tuple(str(p) for p in points)
        if not points:
            raise ValueError("a finite space needs at least one point")
        if len(set(points)) != len(points):
            raise ValueError("points must be distinct")
        object.__setattr__(self, "points", points)

    def __len__(self):
        return len(self.points)

    def algebra(self):
        return function_algebra(self.points)


@dataclass(frozen=True)
class SignedConfiguration:
    positive: tuple
    negative: tuple

    def __str__(self):
        return f"({','.join(self.positive)}|{','.join(self.negative)})"


@dataclass(frozen=True)
class SymPQClass:
    representative: SignedConfiguration
    members: tuple = field(repr=False)

    @property
    def class_members(self):
        return len(self.members)


@dataclass(frozen=True)
class SymPQSpace:
    space: FiniteSpace
    p: int
    q: int
    classes: tuple

    def __len__(self):
        return len(self.classes)


def _moves(t, p, q, npts):
    """Images of an index tuple under the generating moves."""
    for i in range(p - 1):
        yield t[:i] + (t[i + 1], t[i]) + t[i + 2:]
    for i in range(p, p + q - 1):
        yield t[:i] + (t[i + 1], t[i]) + t[i + 2:]
    if p and q and t[p - 1] == t[p + q - 1]:
        for z in range(npts):
            yield t[:p - 1] + (z,) + t[p:p + q - 1] + (z,)


def enumerate_sym_pq(X, p, q, budget=None):
    if p < 0 or q < 0:
        raise ValueError("p and q must be nonnegative")
    budget = enumeration_budget() if budget is None else budget
    npts = len(X)
    needed = npts ** (p + q)
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    tuples = list(product(range(npts), repeat=p + q))
    uf = UnionFind(tuples)
    for t in tuples:
        for s in _moves(t, p, q, npts):
            uf.union(t, s)
    classes = []
    for group in uf.groups():
        group.sort()
        members = tuple(SignedConfiguration(tuple(X.points[i] for i in g[:p]),
                                            tuple(X.points[i] for i in g[p:]))
                        for g in group)
        classes.append(SymPQClass(members[0], members))
    classes.sort(key=lambda c: _index_key(X, c.representative))
    return SymPQSpace(X, p, q, tuple(classes))


def _index_key(X, conf):
    return tuple(X.points.index(x) for x in conf.positive + conf.negative)


def configuration_map(conf, X):
    """a -> a(x_1) + ... + a(x_p) - a(y_1) - ... - a(y_q) on Q^X."""
    A = X.algebra()
    row = [0] * len(X)
    for x in conf.positive:
        row[X.points.index(x)] += 1
    for y in conf.negative:
        row[X.points.index(y)] -= 1
    return LinearMap(A, ground_field(), [row])


def ev_map(c, X):
    """Evaluation p|q-homomorphism of a class, via its canonical representative."""
    A = X.algebra()
    rep = c.representative
    maps = [evaluation_hom(A, x) for x in rep.positive + rep.negative]
    coeffs = [1] * len(rep.positive) + [-1] * len(rep.negative)
    if not maps:
        return LinearMap.zero(A, ground_field())
    return integer_combination(maps, coeffs)


def verify_ev_well_defined(s):
    for c in s.classes:
        ref = ev_map(c, s.space)
        for m in c.members:
            if configuration_map(m, s.space) != ref:
                return False
    return True


def verify_variety_equations(c, X, p, q, bound=12, strategy=BASIS):
    return is_pq_hom(ev_map(c, X), p, q, bound, strategy)


def enumerate_n_homs(X, n, bound=12, strategy=BASIS, check=True):
    """The functionals e_x -> m_x with m a multiset of size n; each is checked."""
    if comb(len(X) + n - 1, n) > enumeration_budget():
        raise BudgetExceeded(comb(len(X) + n - 1, n), enumeration_budget())
    A = X.algebra()
    out = []
    for ms in combinations_with_replacement(range(len(X)), n):
        row = [0] * len(X)
        for i in ms:
            row[i] += 1
        f = LinearMap(A, ground_field(), [row])
        if check and not is_n_hom(f, n, bound, strategy).passed:
            raise AssertionError(f"multiset functional {row} failed the {n}-hom test")
        out.append(f)
    return out


@dataclass
class ProbeReport:
    space: tuple
    p: int
    q: int
    trials: int
    seed: int
    grid: list
    filtered_character: int = 0
    failed_equations: int = 0
    inside_image: int = 0
    candidates: list = field(default_factory=list)

    @property
    def summary(self):
        if self.candidates:
            return f"{len(self.candidates)} candidate counterexample(s); replay data attached"
        return "no counterexample found (inconclusive by design)"

    def to_json(self):
        return {"space": list(self.space), "p": self.p, "q": self.q, "trials": self.trials,
                "seed": self.seed, "value_grid": [str(v) for v in self.grid],
                "filtered_character": self.filtered_character,
                "failed_equations": self.failed_equations,
                "inside_image": self.inside_image,
                "candidates": self.candidates, "summary": self.summary}


def default_value_grid(p, q):
    r = p + q
    ints = [Fraction(k) for k in range(-r, r + 1)]
    halves = [Fraction(2 * k + 1, 2) for k in range(-r, r)]
    return ints + halves


def open_question_probe(X, p, q, trials=1000, seed=0, bound=12, samples=20, grid=None):
    """Sample functionals on Q^X, keep those satisfying the p|q equations, and
    check whether each survivor is the evaluation map of some class.

    Reports only; a survivor outside the image is a candidate with the data
    needed to replay it, never a verdict.
    """
    grid = default_value_grid(p, q) if grid is None else [Fraction(v) for v in grid]
    space = enumerate_sym_pq(X, p, q)
    image = {ev_map(c, X).matrix for c in space.classes}
    A = X.algebra()
    rng = random.Random(seed)
    report = ProbeReport(X.points, p, q, trials, seed, grid)
    for trial in range(trials):
        values = [rng.choice(grid) for _ in X.points]
        f = LinearMap(A, ground_field(), [values])
        if character(f).integer != p - q:
            report.filtered_character += 1
            continue
        strat = Strategy("random", samples=samples, seed=seed * 1_000_003 + trial)
        if not is_pq_hom(f, p, q, bound, strat).passed:
            report.failed_equations += 1
            continue
        if f.matrix in image:
            report.inside_image += 1
        else:
            report.candidates.append({"trial": trial, "values": [str(v) for v in values],
                                      "strategy": strat.to_json(), "bound": bound})
    return report
