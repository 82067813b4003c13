"""Small exact linear algebra over the rationals (Fraction entries)."""

from __future__ import annotations

from fractions import Fraction


def _to_frac_rows(A):
    return [[Fraction(x) for x in row] for row in A]


def rref(A):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    R = _to_frac_rows(A)
    if not R:
        return R, []
    rows, cols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if R[i][c] != 0), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        pv = R[r][c]
        R[r] = [x / pv for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(A):
    return len(rref(A)[1])


def nullspace(A, cols=None):
    """Basis of {x : A x = 0} as Fraction vectors."""
    if cols is None:
        cols = len(A[0]) if A else 0
    if not A:
        return [[Fraction(int(i == j)) for j in range(cols)] for i in range(cols)]
    R, pivots = rref(A)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][fc]
        basis.append(v)
    return basis


def solve_affine(A, b):
    """All solutions of A x = b: (particular, nullspace_basis) or (None, basis)
    when inconsistent."""
    if not A:
        return [], []
    cols = len(A[0])
    aug = [list(row) + [bv] for row, bv in zip(A, b)]
    R, pivots = rref(aug)
    if cols in pivots:
        return None, nullspace(A, cols)
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        x[pc] = R[r][cols]
    return x, nullspace(A, cols)


def integer_rows(rows):
    """Scale Fraction rows to primitive integer rows."""
    from math import gcd, lcm
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        ints = [int(Fraction(x) * den) for x in row]
        g = 0
        for x in ints:
            g = gcd(g, abs(x))
        if g > 1:
            ints = [x // g for x in ints]
        out.append(ints)
    return out


def echelon_integer_basis(vectors, ncols):
    """Integer vectors spanning the same Q-space, in reduced echelon shape:
    each has a pivot column where all the others vanish."""
    R, pivots = rref(vectors)
    R = [row for row in R if any(x != 0 for x in row)]
    return integer_rows(R), pivots


def is_integral(vec):
    return all(Fraction(x).denominator == 1 for x in vec)
