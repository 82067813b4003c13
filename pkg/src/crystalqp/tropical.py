"""Mutation transport of weight data and the generic e/hom pairings.

Vectors live at a seed and are carried to adjacent seeds by piecewise-linear
rules.  Four kinds of data transport differently:

  * delta vectors (weights of general projective presentations),
  * dcheck vectors (weights of general injective presentations),
  * dimension vectors of the generic cokernel,
  * tropical A-points (dimension-vector-like data of boundary modules).

A TropTriple carries (delta, dcheck, dim) jointly; for generic data the
three are linked by dcheck = delta + dim . B, with dim contracted against
the full matrix B.  For mu-supported triples (dim vanishing on frozen
vertices) this convention agrees with contracting against the mutable-row
submatrix, and it is the convention under which the catalog fixtures are
consistent; a startup self-test in the test suite asserts this agreement.

All scalar routines use exact Python integers.  Batched variants operate
on int64 arrays for the large box enumerations; entries there stay tiny.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .quiver import FrozenVertexError, canonical_form, mutate_seed


class ReachabilityError(RuntimeError):
    """Search budget exhausted before an anchor seed was found.

    This is a typed failure, never a proof of unreachability.
    """


class InconsistentTripleError(ValueError):
    """A TropTriple violated dcheck = delta + dim . B at its seed."""


@dataclass(frozen=True)
class Budget:
    max_depth: int = 64
    max_states: int = 2_000_000


DEFAULT_BUDGET = Budget()


def _check_vertex(seed, u):
    if u in seed.frozen:
        raise FrozenVertexError(f"cannot transport across frozen vertex {u}")
    if not (0 <= u < seed.n):
        raise ValueError(f"vertex {u} out of range")


# ---------------------------------------------------------------------------
# scalar transport rules


def mutate_delta(seed, d, u):
    """Tropical transport of a delta vector across the mutation at u."""
    _check_vertex(seed, u)
    B = seed.B
    du = d[u]
    pos, neg = max(du, 0), max(-du, 0)
    out = list(d)
    for v in range(seed.n):
        bvu = B[v][u]
        out[v] = d[v] - max(bvu, 0) * neg + max(-bvu, 0) * pos
    out[u] = -du
    return tuple(out)


def mutate_dcheck(seed, d, u):
    """Transport of a dcheck vector; reads the u-th row of B instead of the column."""
    _check_vertex(seed, u)
    B = seed.B
    du = d[u]
    pos, neg = max(du, 0), max(-du, 0)
    out = list(d)
    for v in range(seed.n):
        buv = B[u][v]
        out[v] = d[v] - max(buv, 0) * neg + max(-buv, 0) * pos
    out[u] = -du
    return tuple(out)


def mutate_apoint(seed, d, u):
    """Transport of a tropical A-point (tropicalized x-variable exchange)."""
    _check_vertex(seed, u)
    B = seed.B
    up = sum(d[v] * max(B[v][u], 0) for v in range(seed.n))
    dn = sum(d[v] * max(-B[v][u], 0) for v in range(seed.n))
    out = list(d)
    out[u] = -d[u] + max(up, dn)
    return tuple(out)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def vec_times_matrix(d, B, n):
    return tuple(sum(d[v] * B[v][w] for v in range(n)) for w in range(n))


@dataclass(frozen=True)
class TropTriple:
    """Weight, injective weight, and generic cokernel dimension, jointly mutated."""

    delta: tuple
    dcheck: tuple
    dim: tuple

    def __post_init__(self):
        if any(x < 0 for x in self.dim):
            raise InconsistentTripleError("dim has a negative coordinate")

    def is_consistent(self, seed):
        rhs = vec_times_matrix(self.dim, seed.B, seed.n)
        return all(self.dcheck[v] == self.delta[v] + rhs[v] for v in range(seed.n))

    def mu_supported(self, seed):
        return all(self.dim[i] == 0 for i in seed.frozen)


def negative_triple(d):
    """The triple of a presentation with no positive part (zero cokernel)."""
    return TropTriple(tuple(d), tuple(d), (0,) * len(d))


def mutate_triple(seed, t, u, check=True):
    """Joint transport of (delta, dcheck, dim) across the mutation at u.

    Consistency of the input is enforced; it is preserved for mu-supported
    triples.  Callers transporting frozen-supported dims must go through the
    individual rules instead, since the normalized seed has dropped the
    frozen-frozen arrows that the consistency relation would read.
    """
    _check_vertex(seed, u)
    if check and not t.is_consistent(seed):
        raise InconsistentTripleError("triple violates dcheck = delta + dim.B")
    B = seed.B
    n = seed.n
    p, m = max(t.delta[u], 0), max(-t.delta[u], 0)
    pc, mc = max(t.dcheck[u], 0), max(-t.dcheck[u], 0)
    delta = list(t.delta)
    dcheck = list(t.dcheck)
    dim = list(t.dim)
    for v in range(n):
        delta[v] = t.delta[v] - max(B[v][u], 0) * m + max(-B[v][u], 0) * p
        dcheck[v] = t.dcheck[v] - max(B[u][v], 0) * mc + max(-B[u][v], 0) * pc
    delta[u] = -t.delta[u]
    dcheck[u] = -t.dcheck[u]
    dim[u] = sum(t.dim[v] * max(B[v][u], 0) for v in range(n)) - t.dim[u] + p + mc
    return TropTriple(tuple(delta), tuple(dcheck), tuple(dim))


# ---------------------------------------------------------------------------
# transports along sequences


def transport_delta(seed, d, seq):
    for u in seq:
        d = mutate_delta(seed, d, u)
        seed = mutate_seed(seed, u)
    return tuple(d), seed


def transport_dcheck(seed, d, seq):
    for u in seq:
        d = mutate_dcheck(seed, d, u)
        seed = mutate_seed(seed, u)
    return tuple(d), seed


def transport_apoint(seed, d, seq):
    for u in seq:
        d = mutate_apoint(seed, d, u)
        seed = mutate_seed(seed, u)
    return tuple(d), seed


def transport_triple(seed, t, seq, check=True):
    for u in seq:
        t = mutate_triple(seed, t, u, check=check)
        seed = mutate_seed(seed, u)
        check = False
    return t, seed


# ---------------------------------------------------------------------------
# batched transports (int64 arrays, one row per vector)


def batch_mutate_delta(B, D, u):
    col = B[:, u]
    du = D[:, u].copy()
    D = D - np.maximum(-du, 0)[:, None] * np.maximum(col, 0)[None, :] \
          + np.maximum(du, 0)[:, None] * np.maximum(-col, 0)[None, :]
    D[:, u] = -du
    return D

def batch_mutate_dcheck(B, D, u):
    return batch_mutate_delta(B.T.copy(), D, u)


def batch_transport_delta(seed, D, seq):
    D = np.asarray(D, dtype=np.int64)
    for u in seq:
        D = batch_mutate_delta(seed.matrix(), D, u)
        seed = mutate_seed(seed, u)
    return D, seed


def batch_transport_dcheck(seed, D, seq):
    D = np.asarray(D, dtype=np.int64)
    for u in seq:
        D = batch_mutate_dcheck(seed.matrix(), D, u)
        seed = mutate_seed(seed, u)
    return D, seed


# ---------------------------------------------------------------------------
# reachability search


def _bfs_to_anchor(seed, starts, step_fn, anchor_fn, budget):
    """Shortest mutation sequence (BFS) from `seed` to a state satisfying
    anchor_fn.  `starts` is the tuple of transported vectors making up the
    search state; step_fn(seed, state, u) advances them."""
    root_key = canonical_form(seed)
    seen = {(root_key, starts)}
    queue = deque([(seed, starts, ())])
    while queue:
        cur_seed, state, path = queue.popleft()
        if anchor_fn(state):
            return list(path), state, cur_seed
        if len(path) >= budget.max_depth:
            continue
        for u in cur_seed.mutable:
            nxt = step_fn(cur_seed, state, u)
            nseed = mutate_seed(cur_seed, u)
            key = (canonical_form(nseed), nxt)
            if key in seen:
                continue
            seen.add(key)
            if len(seen) > budget.max_states:
                raise ReachabilityError(
                    f"state budget {budget.max_states} exhausted (depth {len(path)})")
            queue.append((nseed, nxt, path + (u,)))
    raise ReachabilityError(f"depth budget {budget.max_depth} exhausted")


_NEG_POOL = {}


def _greedy_descent(seed, d, step_rule, cap):
    """Mutate at a positive mutable coordinate until the whole vector is
    nonpositive; the standard descent that reaches the anchor for
    cluster-reachable data.  Returns a path or None (stuck or cycling, then
    the caller falls back to BFS)."""
    path = []
    seen = {(canonical_form(seed), d)}
    for _ in range(cap):
        if all(x <= 0 for x in d):
            return path
        moved = False
        for u in seed.mutable:
            if d[u] <= 0:
                continue
            nd = step_rule(seed, d, u)
            ns = mutate_seed(seed, u)
            key = (canonical_form(ns), nd)
            if key in seen:
                continue
            seen.add(key)
            path.append(u)
            d, seed = nd, ns
            moved = True
            break
        if not moved:
            return None
    return None


def find_negative_seq(seed, d, budget=DEFAULT_BUDGET):
    """A mutation sequence carrying d to a componentwise-nonpositive vector.

    Pool of known paths first (queries overwhelmingly land in cones already
    explored), then greedy sign descent, then exhaustive BFS.  Failure
    (budget exhaustion) raises ReachabilityError and never asserts
    unreachability.
    """
    d = tuple(d)
    pool = _NEG_POOL.setdefault(canonical_form(seed), [])
    for path in pool:
        v, _ = transport_delta(seed, d, path)
        if all(x <= 0 for x in v):
            return list(path)
    path = _greedy_descent(seed, d, mutate_delta, 4 * budget.max_depth)
    if path is None:
        path, state, _ = _bfs_to_anchor(
            seed, (d,),
            lambda s, st, u: (mutate_delta(s, st[0], u),),
            lambda st: all(x <= 0 for x in st[0]),
            budget)
    pool.append(tuple(path))
    return path


def find_nonneg_dcheck_seq(seed, d, budget=DEFAULT_BUDGET):
    """A sequence carrying a dcheck vector to a componentwise-nonnegative one.

    Equivalent to find_negative_seq for -d on the opposite seed."""
    d = tuple(d)
    path, state, _ = _bfs_to_anchor(
        seed, (d,),
        lambda s, st, u: (mutate_dcheck(s, st[0], u),),
        lambda st: all(x >= 0 for x in st[0]),
        budget)
    return path


def complete_triple_along(seed, d, path):
    """Complete a delta vector to its generic triple using a known
    negativizing path."""
    d = tuple(d)
    anchor_d, _ = transport_delta(seed, d, path)
    assert all(x <= 0 for x in anchor_d), "path does not negativize the vector"
    t = negative_triple(anchor_d)
    seeds = [seed]
    for u in path:
        seeds.append(mutate_seed(seeds[-1], u))
    for k in range(len(path) - 1, -1, -1):
        t = mutate_triple(seeds[k + 1], t, path[k], check=False)
    assert t.delta == d
    return t


def complete_triple(seed, d, budget=DEFAULT_BUDGET):
    """The generic triple of a delta vector: transport to a seed where it is
    nonpositive (zero cokernel there), then transport the full triple back."""
    d = tuple(d)
    return complete_triple_along(seed, d, find_negative_seq(seed, d, budget))


_NEG_DCHECK_POOL = {}


def find_negative_dcheck_seq(seed, dc, budget=DEFAULT_BUDGET):
    """A sequence carrying a dcheck vector to a nonpositive one (zero module
    anchor on the injective side), with the same pooling and descent as the
    delta-side search."""
    dc = tuple(dc)
    pool = _NEG_DCHECK_POOL.setdefault(canonical_form(seed), [])
    for path in pool:
        v, _ = transport_dcheck(seed, dc, path)
        if all(x <= 0 for x in v):
            return list(path)
    path = _greedy_descent(seed, dc, mutate_dcheck, 4 * budget.max_depth)
    if path is None:
        path, state, _ = _bfs_to_anchor(
            seed, (dc,),
            lambda s, st, u: (mutate_dcheck(s, st[0], u),),
            lambda st: all(x <= 0 for x in st[0]),
            budget)
    pool.append(tuple(path))
    return path


def complete_triple_from_dcheck(seed, dc, budget=DEFAULT_BUDGET):
    """The generic triple with the given dcheck vector, anchored where the
    transported dcheck is componentwise nonpositive (zero module there)."""
    dc = tuple(dc)
    path = find_negative_dcheck_seq(seed, dc, budget)
    anchor_dc, _ = transport_dcheck(seed, dc, path)
    t = negative_triple(anchor_dc)
    seeds = [seed]
    for u in path:
        seeds.append(mutate_seed(seeds[-1], u))
    for k in range(len(path) - 1, -1, -1):
        t = mutate_triple(seeds[k + 1], t, path[k], check=False)
    assert t.dcheck == dc
    return t


def tau_delta(seed, t):
    """The weight of the AR-translate of a generic presentation: -dcheck."""
    return tuple(-x for x in t.dcheck)


def tau_triple(seed, t, budget=DEFAULT_BUDGET):
    return complete_triple(seed, tau_delta(seed, t), budget)


def tau_inverse_triple(seed, t, budget=DEFAULT_BUDGET):
    """Triple of the inverse AR-translate: its dcheck vector is -delta."""
    return complete_triple_from_dcheck(seed, tuple(-x for x in t.delta), budget)


# ---------------------------------------------------------------------------
# generic pairings


@dataclass(frozen=True)
class PairLedger:
    """All four generic pairing values between two triples, with the anchoring
    mutation path that produced them."""

    e_ab: int
    hom_ab: int
    e_ba: int
    hom_ba: int
    path: tuple


def pair_ledger(seed, ta, tb, budget=DEFAULT_BUDGET):
    """Accumulate e/hom between triples ta, tb by anchoring at a seed where
    one of them is negative (zero module), then undoing the per-step
    increments of the mutation rule.  Any path negativizing either argument
    alone is an anchor path, so no joint search is needed."""
    small = Budget(max_depth=min(budget.max_depth, 24), max_states=20_000)
    path = None
    for t, b in ((tb, small), (ta, small), (tb, budget), (ta, budget)):
        try:
            path = find_negative_seq(seed, t.delta, b)
            break
        except ReachabilityError:
            continue
    if path is None:
        raise ReachabilityError("neither pairing argument reaches a zero module")

    # walk forward recording increments at each step's source seed
    incr = []
    a, b, s = ta, tb, seed
    for u in path:
        da, ja = a.delta[u], a.dcheck[u]
        db, jb = b.delta[u], b.dcheck[u]
        incr.append((
            max(da, 0) * max(-db, 0) - max(-da, 0) * max(db, 0),     # e(a,b)
            max(-da, 0) * max(-jb, 0) - max(da, 0) * max(jb, 0),     # hom(a,b)
            max(db, 0) * max(-da, 0) - max(-db, 0) * max(da, 0),     # e(b,a)
            max(-db, 0) * max(-ja, 0) - max(db, 0) * max(ja, 0),     # hom(b,a)
        ))
        a = mutate_triple(s, a, u, check=False)
        b = mutate_triple(s, b, u, check=False)
        s = mutate_seed(s, u)

    if all(x <= 0 for x in b.delta):
        e_ab, hom_ab, hom_ba = 0, 0, 0
        e_ba = sum(-x * y for x, y in zip(b.delta, a.dim))
    else:
        e_ba, hom_ba, hom_ab = 0, 0, 0
        e_ab = sum(-x * y for x, y in zip(a.delta, b.dim))
    vals = [e_ab, hom_ab, e_ba, hom_ba]
    for k in range(len(incr) - 1, -1, -1):
        vals = [v - d for v, d in zip(vals, incr[k])]
        assert all(v >= 0 for v in vals), "pairing accumulation went negative"
    return PairLedger(vals[0], vals[1], vals[2], vals[3], tuple(path))


def e_pair(seed, ta, tb, budget=DEFAULT_BUDGET):
    """Generic dimension of E(ta, coker tb)."""
    return pair_ledger(seed, ta, tb, budget).e_ab


def hom_pair(seed, ta, tb, budget=DEFAULT_BUDGET):
    """Generic dimension of Hom(ta, coker tb)."""
    return pair_ledger(seed, ta, tb, budget).hom_ab


def e_pair_dual(seed, ta, tb, budget=DEFAULT_BUDGET):
    """Generic dimension of the dual extension space between ta and tb,
    anchored where one argument is the zero module."""
    small = Budget(max_depth=min(budget.max_depth, 24), max_states=20_000)
    path = None
    for t, b in ((ta, small), (tb, small), (ta, budget), (tb, budget)):
        try:
            path = find_negative_dcheck_seq(seed, t.dcheck, b)
            break
        except ReachabilityError:
            continue
    if path is None:
        raise ReachabilityError("neither pairing argument reaches a zero module")

    incr = []
    a, b, s = ta, tb, seed
    for u in path:
        ja, jb = a.dcheck[u], b.dcheck[u]
        incr.append(max(-ja, 0) * max(jb, 0) - max(ja, 0) * max(-jb, 0))
        a = mutate_triple(s, a, u, check=False)
        b = mutate_triple(s, b, u, check=False)
        s = mutate_seed(s, u)

    if all(x <= 0 for x in a.dcheck):
        val = 0
    else:
        val = sum(-x * y for x, y in zip(b.dcheck, a.dim))
    for k in range(len(incr) - 1, -1, -1):
        val -= incr[k]
        assert val >= 0
    return val


def trop_f(seed, m, arg, budget=DEFAULT_BUDGET):
    """Tropical F-polynomial of a reachable triple m, evaluated at arg:
    f_M(arg) = hom(arg, M)."""
    ta = complete_triple(seed, arg, budget)
    return hom_pair(seed, ta, m, budget)


def trop_f_dual(seed, m, arg, budget=DEFAULT_BUDGET):
    """Dual tropical F-polynomial: fcheck_M(arg) = e(-arg, M)."""
    ta = complete_triple(seed, tuple(-x for x in arg), budget)
    return e_pair(seed, ta, m, budget)
