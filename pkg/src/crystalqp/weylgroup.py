"""Root-system utilities: an independent oracle for highest-weight
dimensions via the Weyl dimension formula.

Deliberately self-contained: nothing here touches seeds, mutation, or the
crystal operators, so component-size checks against it are a genuinely
independent cross-validation.
"""

from __future__ import annotations

from fractions import Fraction


def positive_roots(C):
    """All positive roots of a finite-type symmetric Cartan matrix, in the
    simple-root basis, by reflection closure."""
    n = len(C)
    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots = set(simples)
    frontier = set(simples)
    guard = 0
    while frontier:
        guard += 1
        if guard > 10_000:
            raise ValueError("Cartan matrix is not of finite type")
        new = set()
        for beta in frontier:
            for i in range(n):
                pairing = sum(C[i][j] * beta[j] for j in range(n))
                img = list(beta)
                img[i] -= pairing
                img = tuple(img)
                if all(x >= 0 for x in img) and any(x > 0 for x in img) \
                        and img not in roots:
                    new.add(img)
        roots |= new
        frontier = new
        if len(roots) > 10_000:
            raise ValueError("root count exploded; Cartan not finite type")
    return sorted(roots)


def weyl_dimension(C, lam):
    """dim of the irreducible highest-weight module, weight in the
    fundamental-weight basis (symmetric Cartan, finite type)."""
    lam = list(lam)
    dim = Fraction(1)
    for beta in positive_roots(C):
        height = sum(beta)
        shifted = sum(m * (l + 1) for m, l in zip(beta, lam))
        dim *= Fraction(shifted, height)
    assert dim.denominator == 1 and dim > 0
    return int(dim)


def affine_a_cartan(m):
    """The cycle Cartan matrix on m >= 2 nodes (affine A of rank m - 1);
    for m = 2 the double bond gives off-diagonal -2."""
    if m < 2:
        raise ValueError("need at least 2 nodes")
    C = [[2 if i == j else 0 for j in range(m)] for i in range(m)]
    for i in range(m):
        j = (i + 1) % m
        C[i][j] -= 1
        C[j][i] -= 1
    return [tuple(r) for r in C]


def dominant_weights_up_to(rank, bound):
    """All dominant integral weights with coordinates in [0, bound]."""
    out = [()]
    for _ in range(rank):
        out = [w + (c,) for w in out for c in range(bound + 1)]
    return out
