"""The service layer: one pure function per endpoint, shared by the HTTP
routes and the command-line client.

A process-wide cache keeps boundary systems and crystal structures per
(seed, index set); repeated queries against the same seed then skip all
the mutation searches.
"""

from __future__ import annotations

import threading

from .. import catalog, crystal, laurent
from ..boundary import BoundarySystem
from ..quiver import Seed, canonical_form, mutate_seed
from ..tropical import Budget, ReachabilityError
from . import schemas as S


class UsageError(ValueError):
    """Bad request content (unknown seed name, malformed data, bad vertex)."""


_lock = threading.Lock()
_structures = {}


def resolve_seed(spec):
    if spec.name is not None:
        try:
            seed = catalog.seed_by_name(spec.name)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        return seed, catalog.default_index_set(spec.name)
    m = spec.seed
    try:
        return Seed(m.n, m.frozen, m.B, label=m.label), None
    except ValueError as exc:
        raise UsageError(f"malformed seed: {exc}") from exc


def get_structure(spec, I=None, budget=None):
    seed, default_I = resolve_seed(spec)
    I = tuple(I) if I is not None else (tuple(default_I) if default_I else None)
    key = (canonical_form(seed), I)
    with _lock:
        hit = _structures.get(key)
    if hit is not None:
        return hit
    st = crystal.CrystalStructure(seed, I=I, budget=budget or Budget())
    with _lock:
        _structures.setdefault(key, st)
        return _structures[key]


def seed_to_model(seed):
    return S.SeedModel(n=seed.n, frozen=sorted(seed.frozen),
                       B=[list(r) for r in seed.B], label=seed.label)


def normalize_seed(spec):
    seed, _ = resolve_seed(spec)
    return seed_to_model(seed)


def mutate(req):
    seed, _ = resolve_seed(req.seed)
    try:
        for u in req.steps:
            seed = mutate_seed(seed, u)
    except Exception as exc:
        raise UsageError(str(exc)) from exc
    return seed_to_model(seed)


def invariants(req):
    seed, _ = resolve_seed(req.seed)
    sys_ = BoundarySystem(seed, budget=Budget(max_depth=req.max_depth))
    rows = []
    for i in sorted(seed.frozen):
        d = sys_.data[i]
        rows.append(S.BoundaryModel(
            i=i, reachable=d.reachable, rigid=d.rigid,
            seq_to_simple=list(d.seq_to_simple),
            dual_seq_to_simple=list(d.dual_seq_to_simple),
            eps=list(d.eps), eps_check=list(d.eps_check),
            eps_star=list(d.eps_star), eps_star_check=list(d.eps_star_check),
            dim_E=list(d.dim_E), dim_Estar=list(d.dim_Estar)))
    return S.InvariantsResponse(seed=seed_to_model(seed), boundary=rows)


def cartan(req):
    st = get_structure(req.seed, req.I)
    return S.CartanResponse(
        I=list(st.I),
        C=[list(r) for r in st.cartan.C],
        Cstar=[list(r) for r in st.cartan.Cstar],
        tau_exact_pairs=[list(p) for p in st.pairs.pairs],
        grading={str(i): [str(x) for x in st.grading.rows[i]] for i in st.I},
        grading_integral=st.grading.integral,
        grading_solution_dim=st.grading.solution_dim,
        mode=st.mode)


def rho(req):
    st = get_structure(req.seed, req.I)
    d = tuple(req.delta)
    if len(d) != st.seed.n:
        raise UsageError(f"delta must have length {st.seed.n}")
    supported = st.is_mu_supported(d)
    out = S.RhoResponse(delta=list(d), mu_supported=supported,
                        rho={}, rho_star={}, lam={}, wt={})
    if supported:
        for i in st.I:
            out.rho[str(i)] = st.rho(d, i)
            out.rho_star[str(i)] = st.rho_star(d, i)
            out.lam[str(i)] = st.lam(d, i)
            out.wt[str(i)] = str(st.wt(d, i))
    return out


def kashiwara(req):
    st = get_structure(req.seed, req.I)
    d = tuple(req.delta)
    if not st.is_mu_supported(d):
        raise UsageError("delta is not mu-supported")
    for i in req.word:
        if i not in st.I:
            raise UsageError(f"word letter {i} is not in the index set")
    datum = st.kashiwara_data(d, list(req.word))
    return S.KashiwaraResponse(word=list(datum.word), values=list(datum.values))


def graph(req):
    st = get_structure(req.seed, req.I)
    g = crystal.crystal_graph(st, bound=req.box,
                              close_under_lowering=req.close_under_lowering)
    if req.weight is not None:
        keep = [k for k in range(len(g.nodes))
                if list(g.wt[k]) == list(req.weight)]
        data = g.to_json()
        data["weight_slice"] = keep
    else:
        data = g.to_json()
    return S.GraphResponse(graph=data, dot=g.to_dot())


def verify(req):
    st = get_structure(req.seed, req.I)
    if req.check == "axioms":
        rep = crystal.verify_axioms(st, bound=req.box)
        return S.VerifyResponse(check="axioms", checked=rep.checked,
                                ok=rep.ok, violations=[list(map(str, v)) for v in rep.violations])
    if req.check == "serre":
        findings = []
        pairs = [(i, j) for i in st.I for j in st.I]
        for i, j in pairs:
            r = laurent.check_serre(st, i, j)
            findings.extend([list(map(str, f)) for f in r.findings])
        return S.VerifyResponse(check="serre", checked=len(pairs),
                                ok=not findings, violations=findings)
    if req.check == "bk":
        from concurrent.futures import ThreadPoolExecutor

        from ..crystal import enumerate_mu_supported
        pts = [tuple(int(x) for x in row)
               for row in enumerate_mu_supported(st, req.exponent_bound)]

        def one(d):
            out = []
            try:
                for i in st.I:
                    rep = laurent.check_bk_biperfect(st, d, i)
                    if not rep.ok:
                        out.append([str(d), str(i)] +
                                   [str(x) for x in rep.details if x[0] != "remainder"])
            except ReachabilityError:
                out.append([str(d), "unreachable-weight"])
            return out

        # derivations are shared state: build them up front, then fan out
        for i in st.I:
            laurent.derivation_Ri(st, i)
        if req.jobs > 1:
            with ThreadPoolExecutor(max_workers=req.jobs) as pool:
                results = list(pool.map(one, pts))
        else:
            results = [one(d) for d in pts]
        findings = [f for chunk in results for f in chunk]  # input order: deterministic
        return S.VerifyResponse(check="bk", checked=len(pts) * len(st.I),
                                ok=not findings, violations=findings)
    raise UsageError(f"unknown check {req.check!r}")


def character(req):
    seed, _ = resolve_seed(req.seed)
    try:
        f = laurent.generic_character(seed, tuple(req.delta))
    except ReachabilityError as exc:
        raise UsageError(str(exc)) from exc
    return S.CharacterResponse(
        delta=list(req.delta),
        terms=[S.PolyTerm(**t) for t in f.to_json()],
        pretty=f.pretty())


def derivation(req):
    st = get_structure(req.seed, req.I)
    if req.i not in st.I:
        raise UsageError(f"{req.i} is not in the index set")
    if req.kind == "R":
        D = laurent.derivation_Ri(st, req.i)
    elif req.kind == "Rstar":
        D = laurent.derivation_Ri_star(st, req.i)
    elif req.kind == "L":
        D = laurent.derivation_Li(st, req.i)
    elif req.kind == "H":
        D = laurent.derivation_Hi(st, req.i)
    else:
        raise UsageError(f"unknown derivation kind {req.kind!r}")
    images = {str(k): [S.PolyTerm(**t) for t in D.images[k].to_json()]
              for k in range(st.seed.n) if not D.images[k].is_zero()}
    applied = None
    if req.apply_to is not None:
        f = laurent.LaurentPoly.from_json(st.seed.n,
                                          [dict(t) for t in req.apply_to])
        applied = [S.PolyTerm(**t) for t in D(f).to_json()]
    return S.DerivationResponse(kind=req.kind, i=req.i, images=images,
                                applied=applied)


def orders(req):
    st = get_structure(req.seed, req.I)
    note = ""
    try:
        lt12 = crystal.dominance_lt(st.seed, tuple(req.d1), tuple(req.d2))
        lt21 = crystal.dominance_lt(st.seed, tuple(req.d2), tuple(req.d1))
    except crystal.AmbiguousDominanceError as exc:
        lt12 = lt21 = None
        note = str(exc)
    order = crystal.rho_orders(st, tuple(req.d1), tuple(req.d2))
    return S.OrdersResponse(dominance_d1_lt_d2=lt12, dominance_d2_lt_d1=lt21,
                            rho_order=order, note=note)
