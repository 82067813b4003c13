"""Boundary invariants of frozen vertices: weights, Cartan data, gradings.

Everything here reduces to generic e/hom pairings over the mutable
restriction of the seed, stitched into full-length vectors by the block
formulas, plus exact rational linear algebra for the gradings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import integer_rows, is_integral, nullspace, rank, solve_affine
from .tropical import (DEFAULT_BUDGET, ReachabilityError, complete_triple,
                       complete_triple_from_dcheck, e_pair, find_negative_seq,
                       find_nonneg_dcheck_seq, hom_pair, pair_ledger,
                       tau_triple, transport_dcheck, transport_delta,
                       vec_times_matrix)


class NonRigidFrozenError(RuntimeError):
    """The crystal data is undefined at a non-rigid frozen vertex."""


class SpanConditionError(RuntimeError):
    """span(eps_check) meets the row space of the B-matrix; no adapted
    compatible grading exists."""


@dataclass
class BoundaryData:
    i: int
    seq_to_simple: tuple
    dual_seq_to_simple: tuple
    eps: tuple
    eps_check: tuple
    eps_star: tuple
    eps_star_check: tuple
    dim_E: tuple
    dim_Estar: tuple
    reachable: bool
    rigid: bool


@dataclass
class CartanData:
    I: tuple
    C: tuple
    Cstar: tuple


@dataclass
class WeightGrading:
    I: tuple
    rows: dict            # frozen vertex -> full-length rational row
    integral: bool
    solution_dim: int
    extended_rows: tuple  # extra compatible integral rows when C is singular


@dataclass
class TauExactPairs:
    pairs: tuple          # ordered pairs (i, ibar)

    def partner(self, i):
        for a, b in self.pairs:
            if a == i:
                return b
        return None

    def covers(self, I):
        return all(self.partner(i) is not None for i in I)


class BoundarySystem:
    """All per-frozen-vertex data of one seed, computed once and cached.

    The dual-boundary fields are read off the opposite seed, where the dual
    boundary data is the plain boundary data of the reversed quiver."""

    def __init__(self, seed, budget=DEFAULT_BUDGET, with_dual=True):
        self.seed = seed
        self.budget = budget
        self.mut_seed, self.mut_idx = seed.restrict_mutable()
        self.mut_pos = {u: k for k, u in enumerate(self.mut_idx)}
        self.frozen = sorted(seed.frozen)
        self._triples = {}
        self._tau_triples = {}
        self.data = {}
        for i in self.frozen:
            self.data[i] = self._build(i)
        if with_dual:
            self.opposite = BoundarySystem(seed.opposite(), budget, with_dual=False)
            for i in self.frozen:
                d, o = self.data[i], self.opposite.data[i]
                if not (d.rigid and o.rigid):
                    continue
                self.data[i] = BoundaryData(
                    i,
                    seq_to_simple=d.seq_to_simple,
                    dual_seq_to_simple=o.seq_to_simple,
                    eps=d.eps,
                    eps_check=d.eps_check,
                    eps_star=o.eps_check,
                    eps_star_check=o.eps,
                    dim_E=d.dim_E,
                    dim_Estar=o.dim_E,
                    reachable=d.reachable,
                    rigid=d.rigid)
            self._cross_checks()

    def restricted_weight(self, i):
        """delta of the restricted boundary data: minus the i-th B-column
        over the mutable rows."""
        return tuple(self.seed.B[i][u] for u in self.mut_idx)

    def triple(self, i):
        t = self._triples.get(i)
        if t is None:
            t = complete_triple(self.mut_seed, self.restricted_weight(i), self.budget)
            self._triples[i] = t
        return t

    def tau_of(self, i):
        t = self._tau_triples.get(i)
        if t is None:
            t = tau_triple(self.mut_seed, self.triple(i), self.budget)
            self._tau_triples[i] = t
        return t

    def _full(self, mut_part, frozen_part):
        out = [0] * self.seed.n
        for k, u in enumerate(self.mut_idx):
            out[u] = mut_part[k]
        for k, f in enumerate(self.frozen):
            out[f] = frozen_part[k]
        return tuple(out)

    def _build(self, i):
        """Primal block data of one frozen vertex; dual fields are stitched
        in afterwards from the opposite system."""
        n = self.seed.n
        try:
            t = self.triple(i)
            seq = find_negative_seq(self.mut_seed, t.delta, self.budget)
        except ReachabilityError:
            return BoundaryData(i, (), (), (), (), (), (), (), (), False, False)
        rigid = e_pair(self.mut_seed, t, t, self.budget) == 0
        if not rigid:
            return BoundaryData(i, tuple(self.mut_idx[u] for u in seq), (),
                                (), (), (), (), (), (), True, False)

        ledgers = {j: pair_ledger(self.mut_seed, self.triple(j), t, self.budget)
                   for j in self.frozen}
        e_into_i = {j: lg.e_ab for j, lg in ledgers.items()}
        h = {j: lg.hom_ab for j, lg in ledgers.items()}

        eps = self._full((0,) * len(self.mut_idx),
                         [1 if j == i else -e_into_i[j] for j in self.frozen])
        eps_check = self._full(t.dcheck,
                               [(1 if j == i else 0) - h[j] for j in self.frozen])
        dim_E = self._full(t.dim, [1 if j == i else 0 for j in self.frozen])

        assert eps[i] == 1 and all(eps[j] <= 0 for j in self.frozen if j != i)
        chk = tuple(a + b for a, b in zip(eps, vec_times_matrix(dim_E, self.seed.B, n)))
        assert chk == eps_check, "block formula disagrees with eps + dim.B"

        full_seq = tuple(self.mut_idx[u] for u in seq)
        return BoundaryData(i, full_seq, (), eps, eps_check, (), (),
                            dim_E, (), True, True)

    def _cross_checks(self):
        ok = [i for i in self.frozen
              if self.data[i].rigid and self.data[i].eps_star_check]
        for i in ok:
            esc = self.data[i].eps_star_check
            assert esc[i] == 1
            assert all(esc[u] == 0 for u in self.mut_idx)
            assert all(esc[j] <= 0 for j in self.frozen if j != i)
            for j in ok:
                # the boundary weight at j reappears as the injective weight
                # of the dual boundary at i
                assert self.data[i].eps[j] == self.data[j].eps_star_check[i], \
                    "eps_i(j) != eps*_check_j(i)"


def boundary_to_simple(seed, i, budget=DEFAULT_BUDGET):
    """A mutation sequence after which the boundary data of i is simple."""
    if i not in seed.frozen:
        raise ValueError(f"{i} is not frozen")
    mut_seed, mut_idx = seed.restrict_mutable()
    w = tuple(seed.B[i][u] for u in mut_idx)
    seq = find_negative_seq(mut_seed, w, budget)
    return tuple(mut_idx[u] for u in seq)


def boundary_invariants(seed, i, budget=DEFAULT_BUDGET):
    return BoundarySystem(seed, budget).data[i]


def cartan_matrix(seed, I=None, system=None, budget=DEFAULT_BUDGET):
    """Cartan data of a set of frozen vertices, with the starred counterpart
    read off at simple seeds and cross-checked by the transpose identity."""
    sys_ = system or BoundarySystem(seed, budget)
    I = tuple(I) if I is not None else tuple(sys_.frozen)
    for i in I:
        if not sys_.data[i].rigid:
            raise NonRigidFrozenError(f"frozen vertex {i} is not rigid/reachable")
    C = []
    for i in I:
        row = []
        for j in I:
            lg = pair_ledger(sys_.mut_seed, sys_.triple(i), sys_.triple(j), budget)
            row.append((2 if i == j else 0) - lg.e_ab - lg.e_ba)
        C.append(tuple(row))

    cstar = [[0] * len(I) for _ in I]
    cstar_check = [[0] * len(I) for _ in I]
    for a, i in enumerate(I):
        di = sys_.data[i]
        for b, j in enumerate(I):
            dj = sys_.data[j]
            v, _ = transport_delta(seed, dj.eps_star, di.seq_to_simple)
            cstar[a][b] = -max(-v[i], 0)          # -e(E_j*, E_i)
            w, _ = transport_dcheck(seed, dj.eps_check, di.dual_seq_to_simple)
            cstar_check[a][b] = -max(-w[i], 0)    # -e_dual(E_i*, E_j)
    for a in range(len(I)):
        for b in range(len(I)):
            assert cstar[a][b] == cstar_check[b][a], "cstar transpose identity failed"
    return CartanData(I, tuple(map(tuple, C)), tuple(map(tuple, cstar)))


def tau_exact_pairs(seed, I=None, system=None, budget=DEFAULT_BUDGET):
    """All ordered pairs (i, ibar) with the inverse translate of the boundary
    data at i equal to the dual boundary data at ibar.

    Both sides are rigid, hence generic, so equality of decorated
    representations is equality of weight vectors: the translate has
    weight -eps_check_i and the dual boundary has weight eps_star_ibar."""
    sys_ = system or BoundarySystem(seed, budget)
    I = tuple(I) if I is not None else tuple(sys_.frozen)
    pairs = []
    for i in I:
        if not sys_.data[i].rigid:
            continue
        want = tuple(-x for x in sys_.data[i].eps_check)
        for ib in sys_.frozen:
            if sys_.data[ib].rigid and sys_.data[ib].eps_star == want:
                pairs.append((i, ib))
    return TauExactPairs(tuple(pairs))


def compatible_grading(seed, I=None, cartan=None, system=None, pairs=None,
                       budget=DEFAULT_BUDGET):
    """Rational grading rows annihilating the mutable B-rows and adapted to I.

    When tau-exact pairs cover I the closed-form rows (contraction against
    dim E_i - dim of the inverse-translate data) are used and checked to
    solve the same linear system.
    """
    sys_ = system or BoundarySystem(seed, budget)
    I = tuple(I) if I is not None else tuple(sys_.frozen)
    cartan = cartan or cartan_matrix(seed, I, system=sys_, budget=budget)
    n = seed.n
    brows = [[Fraction(seed.B[u][v]) for v in range(n)] for u in sys_.mut_idx]
    echeck = [[Fraction(x) for x in sys_.data[j].eps_check] for j in I]
    sol_dim = n - rank(brows + echeck)

    if pairs is not None and pairs.covers(I):
        # closed form: pair against dim E_i minus dim of the partner's dual
        # boundary (the inverse translate of E_i)
        rows = {}
        for i in I:
            ib = pairs.partner(i)
            di, dib = sys_.data[i], sys_.data[ib]
            rows[i] = tuple(Fraction(a - b) for a, b in zip(di.dim_E, dib.dim_Estar))
        for a, i in enumerate(I):
            w = rows[i]
            assert all(sum(w[v] * br[v] for v in range(n)) == 0 for br in brows), \
                "closed-form grading not compatible"
            for k, j in enumerate(I):
                got = sum(w[v] * echeck[k][v] for v in range(n))
                assert got == cartan.C[a][k], "closed-form grading not adapted"
        if sol_dim == 0:
            A = brows + echeck
            for a, i in enumerate(I):
                b = [Fraction(0)] * len(brows) + [Fraction(cartan.C[a][k])
                                                  for k in range(len(I))]
                x, _ = solve_affine(A, b)
                assert x is not None and tuple(x) == rows[i], \
                    "closed form differs from unique solve"
    else:
        if rank(brows) + rank(echeck) != rank(brows + echeck):
            raise SpanConditionError("eps_check rows meet the B-matrix row space")
        A = brows + echeck
        rows = {}
        for a, i in enumerate(I):
            b = [Fraction(0)] * len(brows) + [Fraction(cartan.C[a][k])
                                              for k in range(len(I))]
            x, null = solve_affine(A, b)
            if x is None:
                raise SpanConditionError("adapted grading system inconsistent")
            sol_dim = len(null)
            rows[i] = tuple(x)

    integral = all(is_integral(rows[i]) for i in I)
    extended = ()
    if rank([[Fraction(x) for x in cartan.C[a]] for a in range(len(I))]) < len(I):
        extended = tuple(tuple(r) for r in _extend_rows(brows, [rows[i] for i in I], n))
    return WeightGrading(I, rows, integral, sol_dim, extended)


def _extend_rows(brows, wt_rows, n):
    """Integral compatible rows extending wt_rows to rank |I|."""
    ann = nullspace(brows, n)
    have = [list(r) for r in wt_rows]
    base_rank = rank(have)
    target = len(wt_rows)
    extra = []
    for cand in integer_rows(ann):
        if base_rank + len(extra) >= target:
            break
        if rank(have + extra + [list(map(Fraction, cand))]) > base_rank + len(extra):
            extra.append(list(map(Fraction, cand)))
    return integer_rows(extra)
