"""Constructors for the example families and shared fixtures.

Vertex labeling conventions (documented, 0-based):

  * unipotent:<X>  -- vertices are the indecomposable representations of the
    Dynkin quiver, knitted into its AR quiver with translation arrows
    M -> tau(M).  Mutable vertices (non-projectives) come first, ordered by
    (level, diagram node) of the knitting position; frozen vertices (the
    projectives) follow, ordered by diagram node.
  * base-affine:<X> -- the unipotent seed followed by one extra frozen
    vertex per diagram node i, written "bar i", wired so that the boundary
    data of bar(i) is the double inverse translate of the boundary data of
    the projective at i* (i* the diagram involution induced by the longest
    Weyl element).  Extra vertices are ordered by i.
  * grassmannian:<k>x<l> -- the rectangle quiver; mutable vertices are the
    grid points (x, y), 1 <= x <= l-1, 1 <= y <= k-1, ordered by (x, y);
    frozen vertices carry the cyclic labels m = 0..k+l-1 in this order,
    with 0 the corner, 1..l the top row, l+1..l+k-1 the right column.
  * omega:<quiver> -- n mutable copies of the quiver's vertices followed by
    n frozen partners.
  * canonical:a1,a2,...  -- mutable hub 0, then the arm vertices arm by
    arm, then the co-hub; frozen: per arm the simples along the arm then
    the weight-(e_hub - e_arm_start) vertex.
"""

from __future__ import annotations

from dataclasses import dataclass

from .quiver import Seed
from .tropical import complete_triple, complete_triple_from_dcheck

DYNKIN_EDGES = {
    "A": lambda r: [(i, i + 1) for i in range(1, r)],
    "D": lambda r: [(i, i + 1) for i in range(1, r - 1)] + [(r - 2, r)],
    "E": lambda r: [(1, 3), (3, 4), (2, 4), (4, 5), (5, 6)][: r - 1] if r == 6 else
                   ([(1, 3), (3, 4), (2, 4), (4, 5), (5, 6), (6, 7)] if r == 7 else
                    [(1, 3), (3, 4), (2, 4), (4, 5), (5, 6), (6, 7), (7, 8)]),
}


def parse_dynkin(name):
    letter, rank = name[0].upper(), int(name[1:])
    if letter not in "ADE":
        raise ValueError(f"not a simply-laced Dynkin type: {name}")
    if letter == "D" and rank < 3:
        raise ValueError("D requires rank >= 3")
    if letter == "E" and rank not in (6, 7, 8):
        raise ValueError("E requires rank in 6..8")
    return letter, rank


def dynkin_quiver(name):
    """Arrows of the standard orientation: lower label to higher label."""
    letter, rank = parse_dynkin(name)
    return rank, [(u, v) for u, v in DYNKIN_EDGES[letter](rank)]


def dynkin_cartan(name):
    rank, arrows = dynkin_quiver(name)
    C = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for u, v in arrows:
        C[u - 1][v - 1] = C[v - 1][u - 1] = -1
    return C


def diagram_involution(name):
    """The involution i -> i* induced by -w0 on the weight lattice."""
    letter, rank = parse_dynkin(name)
    if letter == "A":
        return {i: rank + 1 - i for i in range(1, rank + 1)}
    if letter == "D":
        if rank % 2 == 1:
            m = {i: i for i in range(1, rank + 1)}
            m[rank - 1], m[rank] = rank, rank - 1
            return m
        return {i: i for i in range(1, rank + 1)}
    if rank == 6:
        return {1: 6, 6: 1, 3: 5, 5: 3, 2: 2, 4: 4}
    return {i: i for i in range(1, rank + 1)}


def _path_counts(rank, arrows):
    """counts[u][v] = number of paths u -> v (including the empty path)."""
    adj = [[0] * (rank + 1) for _ in range(rank + 1)]
    for u, v in arrows:
        adj[u][v] += 1
    counts = [[1 if u == v else 0 for v in range(rank + 1)] for u in range(rank + 1)]
    # nilpotent adjacency: iterate rank times
    power = [row[:] for row in adj]
    for _ in range(rank):
        if not any(any(row) for row in power):
            break
        for u in range(1, rank + 1):
            for v in range(1, rank + 1):
                counts[u][v] += power[u][v]
        power = [[sum(power[u][w] * adj[w][v] for w in range(rank + 1))
                  for v in range(rank + 1)] for u in range(1, rank + 1)]
        power = [[0] * (rank + 1)] + power
    return counts


@dataclass
class ARQuiver:
    """Knitted AR data: node positions, dimension vectors, arrows,
    translation pairs, and the projective/injective markings."""

    rank: int
    arrows_q: list
    nodes: list            # positions (k, x) in knitting order
    dims: dict             # position -> dim vector (tuple over 1..rank)
    ar_arrows: list        # (src_pos, tgt_pos) with multiplicity by repetition
    tau: dict              # position -> position of the AR translate
    projectives: dict      # diagram node x -> position of P_x


def knit_ar_quiver(name):
    """Knit the AR quiver of a Dynkin quiver by the mesh recursion, checked
    against the positive-root count."""
    rank, arrows_q = dynkin_quiver(name)
    counts = _path_counts(rank, arrows_q)
    dim_p = {x: tuple(counts[x][j] for j in range(1, rank + 1)) for x in range(1, rank + 1)}
    dim_i = {x: tuple(counts[j][x] for j in range(1, rank + 1)) for x in range(1, rank + 1)}
    inj_dims = {dim_i[x] for x in dim_i}

    # levels: k(u) = k(v) + 1 for every arrow u -> v; tree, so consistent
    level = {x: 0 for x in range(1, rank + 1)}
    for _ in range(rank):
        for u, v in arrows_q:
            if level[u] != level[v] + 1:
                level[u] = level[v] + 1
    shift = min(level.values())
    level = {x: k - shift for x, k in level.items()}
    out_q = {x: [v for u, v in arrows_q if u == x] for x in range(1, rank + 1)}
    in_q = {x: [u for u, v in arrows_q if v == x] for x in range(1, rank + 1)}

    dims = {(level[x], x): dim_p[x] for x in range(1, rank + 1)}
    alive = {x: level[x] for x in range(1, rank + 1)}  # last level of orbit x
    ended = {x: dims[(level[x], x)] in inj_dims for x in range(1, rank + 1)}

    # topological order of diagram nodes (sources of Q first)
    topo, seen = [], set()

    def visit(x):
        if x in seen:
            return
        seen.add(x)
        for u in in_q[x]:
            visit(u)
        topo.append(x)

    for x in range(1, rank + 1):
        visit(x)

    changed = True
    while changed and not all(ended.values()):
        changed = False
        for x in topo:
            if ended[x]:
                continue
            k = alive[x]
            # middles of the mesh (k, x) => (k+1, x)
            need = [(k + 1, u) for u in in_q[x]] + [(k, y) for y in out_q[x]]
            mids = []
            ok = True
            for (kk, y) in need:
                if (kk, y) in dims:
                    mids.append(dims[(kk, y)])
                elif kk <= alive[y] or (not ended[y] and kk == alive[y] + 1):
                    ok = False  # middle pending, retry later
                    break
                # else: orbit y never occupies level kk; skip it
            if not ok:
                continue
            new = tuple(sum(m[j] for m in mids) - dims[(k, x)][j] for j in range(rank))
            assert all(c >= 0 for c in new) and any(c > 0 for c in new), \
                f"knitting produced a bad dimension vector at orbit {x}"
            dims[(k + 1, x)] = new
            alive[x] = k + 1
            ended[x] = new in inj_dims
            changed = True

    n_roots = sum(1 for _ in dims)
    expected = {"A": rank * (rank + 1) // 2, "D": rank * (rank - 1), "E": {6: 36, 7: 63, 8: 120}.get(rank)}[name[0].upper()]
    assert n_roots == expected, f"knitted {n_roots} modules, expected {expected}"

    positions = sorted(dims)
    ar_arrows = []
    for (k, u) in positions:
        for v in out_q[u]:
            if (k, v) in dims:
                ar_arrows.append(((k, u), (k, v)))
        for w in in_q[u]:
            if (k + 1, w) in dims:
                ar_arrows.append(((k, u), (k + 1, w)))
    tau = {(k, x): (k - 1, x) for (k, x) in positions if (k - 1, x) in dims}
    proj = {x: (level[x], x) for x in range(1, rank + 1)}
    return ARQuiver(rank, arrows_q, positions, dims, ar_arrows, tau, proj)


def _seed_from_arrows(n, frozen, arrow_pairs, label):
    B = [[0] * n for _ in range(n)]
    for u, v in arrow_pairs:
        B[u][v] += 1
        B[v][u] -= 1
    return Seed(n, frozen, B, label=label)


@dataclass
class UnipotentInfo:
    seed: Seed
    ar: ARQuiver
    vertex_of: dict      # position -> seed vertex
    position_of: list    # seed vertex -> position
    frozen_node: dict    # seed vertex (frozen) -> diagram node


def unipotent_info(name):
    ar = knit_ar_quiver(name)
    proj_pos = set(ar.projectives.values())
    mutables = sorted(p for p in ar.nodes if p not in proj_pos)
    frozens = [ar.projectives[x] for x in range(1, ar.rank + 1)]
    order = mutables + frozens
    vertex_of = {p: i for i, p in enumerate(order)}
    pairs = [(vertex_of[s], vertex_of[t]) for s, t in ar.ar_arrows]
    pairs += [(vertex_of[m], vertex_of[t]) for m, t in ar.tau.items()]
    seed = _seed_from_arrows(len(order), {vertex_of[p] for p in proj_pos}, pairs,
                             f"unipotent:{name.upper()}")
    frozen_node = {vertex_of[ar.projectives[x]]: x for x in range(1, ar.rank + 1)}
    return UnipotentInfo(seed, ar, vertex_of, order, frozen_node)


def unipotent_seed(name):
    """The AR quiver of a Dynkin quiver with translation arrows; frozen
    vertices are the projectives."""
    return unipotent_info(name).seed


def base_affine_seed(name):
    return base_affine_info(name)[0]


def base_affine_info(name):
    """Unipotent seed extended by one frozen vertex bar(i) per diagram node.

    bar(i) is wired so that the dual boundary data at bar(i) becomes the
    inverse AR-translate of the boundary data at the projective labeled i*;
    the partner pairs downstream then come out as (i*, bar i).
    """
    info = unipotent_info(name)
    base = info.seed
    mut_seed, mut_idx = base.restrict_mutable()
    op_mut = mut_seed.opposite()
    inv = diagram_involution(name)
    rank = info.ar.rank
    n_old = base.n
    node_of_frozen = info.frozen_node

    # delta of the restricted boundary data for each projective-frozen vertex
    col = {}
    for f, x in node_of_frozen.items():
        col[x] = tuple(base.B[f][u] for u in mut_idx)  # -b_f = row f over mutables

    new_cols = {}
    for x in range(1, rank + 1):
        # the partner w of the projective at x carries, on the reversed
        # quiver, boundary data of injective weight minus that at x
        t = complete_triple(mut_seed, col[x])
        s = complete_triple_from_dcheck(op_mut, tuple(-v for v in t.dcheck))
        new_cols[inv[x]] = tuple(-v for v in s.delta)  # label bar(x*)

    n = n_old + rank
    B = [[base.B[u][v] if u < n_old and v < n_old else 0 for v in range(n)]
         for u in range(n)]
    for i in range(1, rank + 1):
        w = n_old + i - 1
        eps = new_cols[i]
        for kk, u in enumerate(mut_idx):
            B[u][w] = -eps[kk]
            B[w][u] = eps[kk]
    frozen = set(base.frozen) | set(range(n_old, n))
    seed = Seed(n, frozen, B, label=f"base-affine:{name.upper()}")
    bar_vertex = {i: n_old + i - 1 for i in range(1, rank + 1)}
    return seed, info, bar_vertex


def grassmannian_seed(k, l):
    """The rectangle quiver of the (k, l) Grassmannian family."""
    if k < 1 or l < 1:
        raise ValueError("k, l must be >= 1")
    mut = [(x, y) for x in range(1, l) for y in range(1, k)]
    froz = [(0, 0)] + [(m, k) for m in range(1, l + 1)] \
                    + [(l, k - j) for j in range(1, k)]
    order = mut + froz
    idx = {p: i for i, p in enumerate(order)}
    pairs = []

    def arrow(a, b):
        if a in idx and b in idx and not (a in froz and b in froz):
            pairs.append((idx[a], idx[b]))

    for x in range(0, l + 1):
        for y in range(0, k + 1):
            if (x, y) not in idx:
                continue
            arrow((x, y), (x + 1, y))
            arrow((x, y), (x, y + 1))
            if (x - 1, y - 1) != (0, 0):
                arrow((x, y), (x - 1, y - 1))
    arrow((0, 0), (1, 1))
    seed = _seed_from_arrows(len(order), set(range(len(mut), len(order))), pairs,
                             f"grassmannian:{k}x{l}")
    cyclic = {m: idx[p] for m, p in enumerate(froz)}
    return seed, cyclic


def _parse_quiver_arg(q):
    """Either a Dynkin name or an explicit acyclic quiver given as
    (n, [(u, v), ...]) with 1-based vertices."""
    if isinstance(q, str):
        return dynkin_quiver(q)
    n, arrows = q
    return n, [(int(u), int(v)) for u, v in arrows]


def simple_canonical_seed(q):
    """Extension of an acyclic quiver by one frozen partner per vertex, with
    its explicit integral grading.  Returns (seed, grading_rows)."""
    from fractions import Fraction

    from .linalg import rref

    n, arrows = _parse_quiver_arg(q)
    A = [[0] * n for _ in range(n)]
    for u, v in arrows:
        A[u - 1][v - 1] += 1
    power = [row[:] for row in A]
    for _ in range(n + 1):
        if any(power[i][i] for i in range(n)):
            raise ValueError("quiver is not acyclic")
        power = [[sum(power[i][w] * A[w][j] for w in range(n)) for j in range(n)]
                 for i in range(n)]

    E = [[(1 if i == j else 0) - A[i][j] for j in range(n)] for i in range(n)]
    Et = [[E[j][i] for j in range(n)] for i in range(n)]
    BQ = [[A[i][j] - A[j][i] for j in range(n)] for i in range(n)]

    # invert E^T exactly (unipotent, so integral)
    aug = [[Fraction(Et[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    R, piv = rref(aug)
    assert piv == list(range(n)), "Euler matrix not invertible"
    EtInv = [[R[i][n + j] for j in range(n)] for i in range(n)]

    lower = [[sum(EtInv[i][w] * BQ[w][j] for w in range(n)) for j in range(n)]
             for i in range(n)]
    right = [[Fraction(int(i == j)) + sum(EtInv[i][w] * E[w][j] for w in range(n))
              for j in range(n)] for i in range(n)]
    top = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    W = [[sum(row[w] * right[w][j] for w in range(n)) for j in range(n)]
         for row in (top + lower)]
    assert all(x.denominator == 1 for row in W for x in row)
    W = [[int(x) for x in row] for row in W]

    # construction identities
    for i in range(n):
        for j in range(n):
            s = sum(BQ[i][w] * W[w][j] for w in range(n)) \
                - sum(Et[i][w] * W[n + w][j] for w in range(n))
            assert s == 0, "grading does not annihilate the B-matrix rows"
    for i in range(n):
        for j in range(n):
            s = sum(Et[i][w] * W[w][j] for w in range(n))
            assert s == E[i][j] + E[j][i], "grading is not adapted"

    B = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            B[i][j] = BQ[i][j]
            B[i][n + j] = -Et[i][j]
            B[n + j][i] = Et[i][j]
    label = f"omega:{q}" if isinstance(q, str) else "omega:custom"
    seed = Seed(2 * n, set(range(n, 2 * n)), B, label=label)
    grading = [tuple(W[v][i] for v in range(2 * n)) for i in range(n)]
    return seed, grading


def canonical_type_seed(a):
    """Mutable part: the cluster-tilted algebra of canonical type, arms from
    the hub to the co-hub plus max(0, r - 2) return arrows; a single
    parameter is realized as the two-arm quiver with one length-one arm.
    The frozen pattern attaches the arm simples and, per arm, the weight
    (hub minus arm start) vertex.  Returns (seed, blocks) with the frozen
    vertices arm by arm."""
    a = [int(x) for x in a]
    if not a or any(x < 2 for x in a):
        raise ValueError("parameters must be integers >= 2")
    r = len(a)
    hub = 0
    arm = {}
    nxt = 1
    for kk in range(r):
        for i in range(1, a[kk]):
            arm[(kk, i)] = nxt
            nxt += 1
    cohub = nxt
    n_mut = nxt + 1

    pairs = []
    for kk in range(r):
        pairs.append((hub, arm[(kk, 1)]))
        for i in range(1, a[kk] - 1):
            pairs.append((arm[(kk, i)], arm[(kk, i + 1)]))
        pairs.append((arm[(kk, a[kk] - 1)], cohub))
    if r == 1:
        pairs.append((hub, cohub))          # the implicit length-one arm
    for _ in range(r - 2):
        pairs.append((cohub, hub))

    frozen_pairs = []
    blocks = []
    fz = n_mut
    for kk in range(r):
        block = []
        for i in range(1, a[kk]):
            succ = arm[(kk, i + 1)] if i < a[kk] - 1 else cohub
            frozen_pairs.append((fz, arm[(kk, i)]))   # beta_plus at the arm vertex
            frozen_pairs.append((succ, fz))           # beta_minus at its successor
            block.append(fz)
            fz += 1
        frozen_pairs.append((fz, hub))                # weight e_hub - e_arm_start
        frozen_pairs.append((arm[(kk, 1)], fz))
        block.append(fz)
        fz += 1
        blocks.append(block)

    n = fz
    seed = _seed_from_arrows(n, set(range(n_mut, n)), pairs + frozen_pairs,
                             "canonical:" + ",".join(map(str, a)))
    return seed, blocks


def exceptional_grassmannian_seed():
    """The exceptional affine-E6 pattern on the triangular grid, shipped as
    a data file rather than a parametric constructor."""
    import json
    from pathlib import Path

    data = json.loads((Path(__file__).parent / "data"
                       / "grassmannian_e6.json").read_text())
    return Seed(data["n"], data["frozen"], data["B"], label=data["label"])


def seed_by_name(name):
    """Resolve catalog names: unipotent:A3, base-affine:D4, grassmannian:2x3,
    omega:A2, canonical:2,3,6, grassmannian:e6."""
    kind, _, arg = name.partition(":")
    kind = kind.strip().lower()
    if kind == "grassmannian" and arg.strip().lower() == "e6":
        return exceptional_grassmannian_seed()
    if kind == "unipotent":
        return unipotent_seed(arg)
    if kind in ("base-affine", "base_affine"):
        return base_affine_seed(arg)
    if kind == "grassmannian":
        k, _, l = arg.lower().partition("x")
        return grassmannian_seed(int(k), int(l))[0]
    if kind == "omega":
        return simple_canonical_seed(arg)[0]
    if kind == "canonical":
        return canonical_type_seed([int(x) for x in arg.split(",")])[0]
    raise ValueError(f"unknown catalog seed {name!r}")


def unipotent_eta_table(name, word_nodes):
    """Dual-chain weight table for a unipotent seed along a word of diagram
    nodes repeated slice by slice: the k-th entry lifts the inverse-translate
    slice of the projective at that letter, read off the knitted AR data.

    Slice 0 entries are the frozen units; later slices pair the top of the
    translated projective (as frozen units) against the module's own mutable
    vertex."""
    info = unipotent_info(name)
    rank, arrows_q = dynkin_quiver(name)
    A = [[0] * (rank + 1) for _ in range(rank + 1)]
    for u, v in arrows_q:
        A[u][v] += 1
    node_to_frozen = {x: f for f, x in info.frozen_node.items()}
    ar = info.ar
    level = {x: ar.projectives[x][0] for x in range(1, rank + 1)}
    out = []
    for k, x in enumerate(word_nodes):
        s = k // rank
        pos = (level[x] + s, x)
        if pos not in ar.dims:
            raise ValueError(f"letter {x} has no slice-{s} translate")
        vec = [0] * info.seed.n
        if s == 0:
            vec[node_to_frozen[x]] = 1
        else:
            dim = ar.dims[pos]
            for y in range(1, rank + 1):
                d = dim[y - 1] - sum(dim[z - 1] * A[z][y] for z in range(1, rank + 1))
                if d > 0:
                    vec[node_to_frozen[y]] = d
            vec[info.vertex_of[pos]] -= 1
        out.append(tuple(vec))
    return out


def default_index_set(name):
    """The frozen index set a catalog seed's crystal structure defaults to:
    for base-affine seeds the projective-labeled frozen vertices, everywhere
    else all frozen vertices."""
    kind, _, arg = name.partition(":")
    kind = kind.strip().lower()
    if kind in ("base-affine", "base_affine"):
        _, info, _ = base_affine_info(arg)
        return sorted(info.frozen_node)
    return None
