"""Ice-quiver seeds, seed mutation, and a memoized mutation graph.

A seed is a full skew-symmetric integer matrix B together with a set of
frozen vertices.  B(u, v) counts arrows u -> v minus arrows v -> u.
Arrows between two frozen vertices carry no information for anything
downstream, so they are normalized to zero on construction and after
every mutation.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np


class FrozenVertexError(ValueError):
    """Raised when a mutation is requested at a frozen vertex."""


def _normalize_matrix(n, frozen, rows):
    out = []
    for u in range(n):
        row = []
        for v in range(n):
            b = int(rows[u][v])
            if u in frozen and v in frozen:
                b = 0
            row.append(b)
        out.append(tuple(row))
    return tuple(out)


@dataclass(frozen=True)
class Seed:
    """An ice quiver: vertex count, frozen set, skew-symmetric B-matrix."""

    n: int
    frozen: frozenset
    B: tuple
    label: str | None = None
    _np: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __init__(self, n, frozen, B, label=None):
        frozen = frozenset(int(i) for i in frozen)
        if not all(0 <= i < n for i in frozen):
            raise ValueError("frozen vertex index out of range")
        rows = _normalize_matrix(n, frozen, B)
        for u in range(n):
            if rows[u][u] != 0:
                raise ValueError("B has a nonzero diagonal entry")
            for v in range(u + 1, n):
                if rows[u][v] != -rows[v][u]:
                    raise ValueError("B is not skew-symmetric")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "frozen", frozen)
        object.__setattr__(self, "B", rows)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "_np", {})

    @property
    def mutable(self):
        return tuple(u for u in range(self.n) if u not in self.frozen)

    def b(self, u, v):
        return self.B[u][v]

    def matrix(self):
        """B as an int64 numpy array (cached; treat as read-only)."""
        m = self._np.get("B")
        if m is None:
            m = np.array(self.B, dtype=np.int64)
            m.setflags(write=False)
            self._np["B"] = m
        return m

    def opposite(self):
        """The seed with all arrows reversed."""
        neg = tuple(tuple(-x for x in row) for row in self.B)
        return Seed(self.n, self.frozen, neg, label=None)

    def restrict_mutable(self):
        """The full subquiver on the mutable vertices, with all vertices mutable.

        Returns (seed, index_map) where index_map[k] is the vertex of self
        behind vertex k of the restriction.
        """
        idx = list(self.mutable)
        rows = [[self.B[u][v] for v in idx] for u in idx]
        return Seed(len(idx), frozenset(), rows), idx

    def permute(self, perm):
        """Relabel vertices: vertex u goes to perm[u]."""
        n = self.n
        inv = [0] * n
        for u in range(n):
            inv[perm[u]] = u
        rows = [[self.B[inv[u]][inv[v]] for v in range(n)] for u in range(n)]
        return Seed(n, frozenset(perm[i] for i in self.frozen), rows)

    def to_json(self):
        d = {"n": self.n, "frozen": sorted(self.frozen), "B": [list(r) for r in self.B]}
        if self.label is not None:
            d["label"] = self.label
        return d

    @classmethod
    def from_json(cls, d):
        return cls(d["n"], d.get("frozen", []), d["B"], label=d.get("label"))


def delete_frozen_arrows(seed):
    """Zero the frozen-frozen block.  Seeds are already normalized, so this
    is the identity; kept as the public name for the reduction step."""
    return Seed(seed.n, seed.frozen, seed.B, label=seed.label)


_MUTATION_CACHE = {}


def mutate_seed(seed, u):
    """Fomin-Zelevinsky matrix mutation at a mutable vertex, re-normalized.
    Results are memoized by canonical form; searches crisscross the same
    exchange graph constantly."""
    u = int(u)
    if u in seed.frozen:
        raise FrozenVertexError(f"cannot mutate at frozen vertex {u}")
    if not (0 <= u < seed.n):
        raise ValueError(f"vertex {u} out of range")
    key = (seed.n, seed.frozen, seed.B, u)
    hit = _MUTATION_CACHE.get(key)
    if hit is not None:
        return hit
    B = seed.B
    n = seed.n
    rows = []
    for v in range(n):
        row = []
        for w in range(n):
            if v == u or w == u:
                row.append(-B[v][w])
            else:
                bvu, buw = B[v][u], B[u][w]
                row.append(B[v][w] + max(bvu, 0) * max(buw, 0) - max(-bvu, 0) * max(-buw, 0))
        rows.append(row)
    out = Seed(n, seed.frozen, rows, label=seed.label)
    if len(_MUTATION_CACHE) < 1_000_000:
        _MUTATION_CACHE[key] = out
    return out


def mutate_seed_seq(seed, steps):
    for u in steps:
        seed = mutate_seed(seed, u)
    return seed


def canonical_form(seed):
    """Hashable key identifying a seed exactly (no permutation quotient)."""
    return (seed.n, tuple(sorted(seed.frozen)), seed.B)


class SeedGraph:
    """Memoized exchange graph.  Nodes are canonical seed forms; edges carry
    the mutation vertex.  Insertion is insert-if-absent under a lock; reads
    need no lock once a node id has been returned."""

    def __init__(self, root):
        self._lock = threading.Lock()
        self.nodes = {}
        self.seeds = []
        self.edges = {}
        self.root = self.intern(root)

    def intern(self, seed):
        key = canonical_form(seed)
        with self._lock:
            node = self.nodes.get(key)
            if node is None:
                node = len(self.seeds)
                self.nodes[key] = node
                self.seeds.append(seed)
            return node

    def seed(self, node):
        return self.seeds[node]

    def step(self, node, u):
        """Node reached from `node` by mutating at u (computed once)."""
        key = (node, int(u))
        hit = self.edges.get(key)
        if hit is not None:
            return hit
        target = self.intern(mutate_seed(self.seeds[node], u))
        with self._lock:
            self.edges.setdefault(key, target)
            self.edges.setdefault((target, int(u)), node)
        return self.edges[key]

    def __len__(self):
        return len(self.seeds)
