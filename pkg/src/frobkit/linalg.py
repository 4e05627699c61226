"""Exact linear algebra over the rationals.

Matrices are lists of rows of ``Fraction`` (or ``int``).  All elimination is
fraction-free: rows are first cleared of denominators, determinants use
Bareiss' exact-division scheme, and echelon forms use integer
cross-multiplication with content removal.  Fractions only appear when the
final pivots are normalised.
"""

from fractions import Fraction
from math import gcd, lcm


def _integer_rows(rows):
    """Scale each row by the lcm of its denominators; returns int rows."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def det(matrix):
    """Determinant of a square rational matrix."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in matrix):
        raise ValueError("det requires a square matrix")
    scale = 1
    m = []
    for row in matrix:
        if all(type(x) is int for x in row):
            m.append(row)
            continue
        den = 1
        for x in row:
            den = lcm(den, x.denominator)
        scale *= den
        m.append([int(x * den) for x in row])
    return Fraction(int_det(m), scale)


def int_det(m):
    """Bareiss determinant of a square int matrix; m is not modified."""
    n = len(m)
    if n == 0:
        return 1
    m = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        p = m[k][k]
        for i in range(k + 1, n):
            mi = m[i]
            f = mi[k]
            mk = m[k]
            for j in range(k + 1, n):
                mi[j] = (p * mi[j] - f * mk[j]) // prev
            mi[k] = 0
        prev = p
    return sign * m[n - 1][n - 1]


def _echelon(rows, ncols):
    """Reduced row echelon form over Fraction, working from integer rows.

    Forward elimination is done with exact integer cross-multiplication and
    content removal, which keeps entries bounded without Bareiss' divisibility
    requirements across rank drops.
    """
    m = _integer_rows(rows)
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        mr = m[r]
        p = mr[c]
        for i in range(nrows):
            if i == r or m[i][c] == 0:
                continue
            mi = m[i]
            f = mi[c]
            row = [p * x - f * y for x, y in zip(mi, mr)]
            g = 0
            for x in row:
                if x:
                    g = gcd(g, x)
            if g > 1:
                row = [x // g for x in row]
            m[i] = row
        pivots.append(c)
        r += 1
    out = []
    for i, row in enumerate(m):
        if i < len(pivots):
            p = row[pivots[i]]
            out.append([Fraction(x, p) for x in row])
        else:
            out.append([Fraction(x) for x in row])
    return out, pivots


def rank(matrix):
    if not matrix:
        return 0
    _, pivots = _echelon(matrix, len(matrix[0]))
    return len(pivots)


def solve(matrix, rhs):
    """One exact solution x of ``matrix @ x = rhs``, or None if inconsistent.

    Free variables are set to zero, so for a singular but consistent system
    the returned solution is a particular one.
    """
    nrows = len(matrix)
    if len(rhs) != nrows:
        raise ValueError("right-hand side length does not match matrix")
    ncols = len(matrix[0]) if nrows else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = _echelon(aug, ncols)
    for i in range(len(pivots), nrows):
        if red[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    return x


def nullspace(matrix, ncols=None):
    """Basis of the right nullspace, as a list of vectors."""
    if ncols is None:
        ncols = len(matrix[0])
    if not matrix:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = _echelon(matrix, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][fc]
        basis.append(v)
    return basis


def inverse(matrix):
    n = len(matrix)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    red, pivots = _echelon(aug, n)
    if len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def left_inverse(matrix):
    """A matrix L with ``L @ matrix == I`` for a matrix of full column rank.

    Built by picking independent rows and inverting that square block; the
    remaining rows get zero weight.
    """
    ncols = len(matrix[0])
    transposed = [list(col) for col in zip(*matrix)]
    _, rows = _echelon(transposed, len(matrix))
    if len(rows) < ncols:
        raise ValueError("matrix does not have full column rank")
    block_inv = inverse([matrix[r] for r in rows])
    left = [[Fraction(0)] * len(matrix) for _ in range(ncols)]
    for i in range(ncols):
        for j, r in enumerate(rows):
            left[i][r] = block_inv[i][j]
    return left


def matvec(matrix, vec):
    return [sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in matrix]


def matmul(a, b):
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols]
            for row in a]


def ring_det(matrix, one, zero):
    """Division-free determinant over a commutative ring.

    Entries only need ``+``, ``-`` and ``*``.  Expansion along rows with
    memoisation on the set of used columns: O(n 2^n) ring products, fine for
    the n <= 10 matrices met here.
    """
    n = len(matrix)
    if n == 0:
        return one
    # table[mask] = signed sum over injections of the first popcount(mask)
    # rows into the columns of mask
    table = {0: one}
    for r in range(n):
        nxt = {}
        row = matrix[r]
        for mask, val in table.items():
            for c in range(n):
                bit = 1 << c
                if mask & bit:
                    continue
                # sign from the number of used columns to the right of c
                above = bin(mask >> (c + 1)).count("1")
                term = row[c] * val
                if above % 2:
                    term = -term
                key = mask | bit
                nxt[key] = nxt[key] + term if key in nxt else term
        table = nxt
    return table.get((1 << n) - 1, zero)
