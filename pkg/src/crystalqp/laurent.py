"""Exact Laurent-polynomial cluster dynamics and the lifted derivations.

Polynomials are sparse maps from integer exponent vectors to arbitrary-
precision integer coefficients.  Everything downstream (characters, Serre
relations, basis expansions) is exact symbolic arithmetic; any division is
asserted exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .quiver import mutate_seed
from .tropical import DEFAULT_BUDGET, find_negative_seq, transport_delta


class NonExactDivisionError(ArithmeticError):
    """Division left a remainder where the Laurent phenomenon promises none."""


class LaurentPoly:
    """Sparse multivariate Laurent polynomial with int coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for e, c in (terms.items() if isinstance(terms, dict) else terms):
                if c:
                    e = tuple(e)
                    c0 = self.terms.get(e, 0) + c
                    if c0:
                        self.terms[e] = c0
                    else:
                        self.terms.pop(e, None)

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def constant(cls, n, c):
        return cls(n, {(0,) * n: c})

    @classmethod
    def monomial(cls, n, exp, coef=1):
        return cls(n, {tuple(exp): coef})

    @classmethod
    def variable(cls, n, k):
        return cls.monomial(n, tuple(1 if v == k else 0 for v in range(n)))

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            c0 = out.get(e, 0) + c
            if c0:
                out[e] = c0
            else:
                out.pop(e, None)
        return LaurentPoly(self.n, out)

    def __neg__(self):
        return LaurentPoly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.n, {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c0 = out.get(e, 0) + c1 * c2
                if c0:
                    out[e] = c0
                else:
                    del out[e]
        return LaurentPoly(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self.terms) == 1:
                (e, c), = self.terms.items()
                assert c in (1, -1), "cannot invert a non-unit coefficient"
                return LaurentPoly(self.n, {tuple(k * x for x in e): c ** (-k)})
            raise NonExactDivisionError("negative power of a non-monomial")
        out = LaurentPoly.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, exp):
        return LaurentPoly(self.n, {tuple(a + b for a, b in zip(e, exp)): c
                                    for e, c in self.terms.items()})

    def min_exponents(self):
        return tuple(min(e[k] for e in self.terms) for k in range(self.n))

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), 0)

    def partial(self, k):
        """Formal partial derivative in variable k."""
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                e2 = list(e)
                e2[k] -= 1
                out[tuple(e2)] = out.get(tuple(e2), 0) + c * e[k]
        return LaurentPoly(self.n, out)

    def exact_div(self, other):
        """Exact division in the Laurent ring; raises when inexact."""
        if other.is_zero():
            raise ZeroDivisionError
        if self.is_zero():
            return LaurentPoly.zero(self.n)
        sf = self.min_exponents()
        sg = other.min_exponents()
        f = self.shift(tuple(-x for x in sf))
        g = other.shift(tuple(-x for x in sg))
        glead = max(g.terms)
        gc = g.terms[glead]
        q = {}
        while not f.is_zero():
            flead = max(f.terms)
            fc = f.terms[flead]
            e = tuple(a - b for a, b in zip(flead, glead))
            if any(x < 0 for x in e) or fc % gc:
                raise NonExactDivisionError("division is not exact")
            c = fc // gc
            q[e] = c
            f = f - g.shift(e) * c
        quot = LaurentPoly(self.n, q)
        return quot.shift(tuple(a - b for a, b in zip(sf, sg)))

    def div_int(self, k):
        out = {}
        for e, c in self.terms.items():
            if c % k:
                raise NonExactDivisionError(f"coefficient {c} not divisible by {k}")
            out[e] = c // k
        return LaurentPoly(self.n, out)

    def trop(self, d):
        """Tropicalization paired with an integer vector: the maximum of
        exponent . d over the support."""
        if self.is_zero():
            raise ValueError("tropicalizing the zero polynomial")
        return max(sum(a * b for a, b in zip(e, d)) for e in self.terms)

    def sorted_terms(self):
        """Graded lex on exponents, high degree first."""
        return sorted(self.terms.items(),
                      key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def to_json(self):
        return [{"exp": list(e), "coef": str(c)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, n, data):
        return cls(n, {tuple(t["exp"]): int(t["coef"]) for t in data})

    def pretty(self, names=None):
        if self.is_zero():
            return "0"
        names = names or [f"x{k}" for k in range(self.n)]
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"{names[k]}^{p}" if p != 1 else names[k]
                            for k, p in enumerate(e) if p)
            if not mono:
                parts.append(f"{c}")
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"LaurentPoly({self.pretty()})"


def exchange_polynomial(seed, u):
    """The sum of the incoming and outgoing monomials at a mutable vertex,
    as a polynomial in the current cluster."""
    n = seed.n
    e_in = tuple(max(seed.B[v][u], 0) for v in range(n))
    e_out = tuple(max(seed.B[u][v], 0) for v in range(n))
    return LaurentPoly(n, {e_in: 1}) + LaurentPoly(n, {e_out: 1})


def initial_seed_mutate(f, seed, u):
    """Express a Laurent polynomial in the adjacent cluster at u.

    The exchange binomial involves no variable u, so writing
    x_u = (binomial) / x'_u turns f into numerator / binomial^M; exactness
    of that division is the Laurent phenomenon at work."""
    n = seed.n
    ex = exchange_polynomial(seed, u)
    m = max(0, -min((e[u] for e in f.terms), default=0))
    num = LaurentPoly.zero(n)
    for e, c in f.terms.items():
        k = e[u]
        rest = list(e)
        rest[u] = 0
        term = LaurentPoly.monomial(n, tuple(rest), c) * ex ** (k + m)
        term = term.shift(tuple(-k if v == u else 0 for v in range(n)))
        num = num + term
    out = num.exact_div(ex ** m) if m else num
    return out


@dataclass
class ClusterState:
    """Current cluster variables expressed in the initial cluster."""

    seed: object
    vars: dict
    history: tuple = ()

    @classmethod
    def initial(cls, seed):
        return cls(seed, {k: LaurentPoly.variable(seed.n, k) for k in range(seed.n)})

    def var_list(self):
        return [self.vars[k] for k in range(self.seed.n)]


def mutate_state(state, u):
    """One exchange step; division by the outgoing variable must be exact."""
    seed = state.seed
    if u in seed.frozen:
        raise ValueError(f"cannot exchange at frozen vertex {u}")
    n = seed.n
    num = LaurentPoly.constant(n, 1)
    den = LaurentPoly.constant(n, 1)
    for v in range(n):
        if seed.B[v][u] > 0:
            num = num * state.vars[v] ** seed.B[v][u]
        if seed.B[u][v] > 0:
            den = den * state.vars[v] ** seed.B[u][v]
    new = (num + den).exact_div(state.vars[u])
    out = dict(state.vars)
    out[u] = new
    return ClusterState(mutate_seed(seed, u), out, state.history + (u,))


def mutate_state_seq(state, seq):
    for u in seq:
        state = mutate_state(state, u)
    return state


# ---------------------------------------------------------------------------
# generic characters


def generic_character(seed, delta, budget=DEFAULT_BUDGET, check_pointed=True):
    """The basis element of a reachable weight: the cluster monomial obtained
    by pulling the anchored initial monomial back along the reaching path."""
    from .crystal import dominance_lt

    from .tropical import ReachabilityError

    delta = tuple(delta)
    try:
        path = find_negative_seq(seed, delta, budget)
    except ReachabilityError as exc:
        raise ReachabilityError(
            f"weight {delta} not negative-reachable within budget; generic "
            "characters of unreachable weights would need quiver-Grassmannian "
            "Euler characteristics, which are unsupported") from exc
    anchored, _ = transport_delta(seed, delta, path)
    state = mutate_state_seq(ClusterState.initial(seed), path)
    out = LaurentPoly.constant(seed.n, 1)
    for u in range(seed.n):
        if anchored[u]:
            out = out * state.vars[u] ** (-anchored[u])
    if check_pointed:
        assert out.coefficient(tuple(-x for x in delta)) == 1, "not pointed"
        for e in out.terms:
            eta = tuple(-x for x in e)
            if eta != delta:
                assert dominance_lt(seed, eta, delta), "stray non-dominated term"
    return out


def pointed_degrees(seed, f):
    """The dominance-maximal degrees of a polynomial: eta's with -eta in the
    support such that no other support degree dominates them."""
    degs = [tuple(-x for x in e) for e in f.terms]
    from .crystal import dominance_lt
    out = []
    for eta in degs:
        if not any(eta != other and dominance_lt(seed, eta, other) for other in degs):
            out.append(eta)
    return out


# ---------------------------------------------------------------------------
# derivations


@dataclass
class Derivation:
    """A k-derivation stored by its images on the initial cluster."""

    n: int
    images: dict
    name: str = ""

    def __call__(self, f):
        out = LaurentPoly.zero(self.n)
        for k in range(self.n):
            img = self.images.get(k)
            if img is not None and not img.is_zero():
                out = out + f.partial(k) * img
        return out

    def is_zero(self):
        return all(v.is_zero() for v in self.images.values())

    def bracket(self, other):
        images = {}
        for k in range(self.n):
            xk = LaurentPoly.variable(self.n, k)
            images[k] = self(other(xk)) - other(self(xk))
        return Derivation(self.n, images, f"[{self.name},{other.name}]")

    def power_apply(self, f, k):
        for _ in range(k):
            f = self(f)
        return f

    def divided_power_apply(self, f, k):
        return self.power_apply(f, k).div_int(factorial(k))


def _express_along(f, path):
    """Rewrite f from the cluster at path start to the cluster at its end."""
    for k, u in enumerate(path.us):
        f = initial_seed_mutate(f, path.seeds[k], u)
    return f


def _express_back(f, path):
    for k in range(len(path.us) - 1, -1, -1):
        f = initial_seed_mutate(f, path.seeds[k + 1], path.us[k])
    return f


def _lift(structure, i, starred):
    """The derivation attached to i, built at the seed where the (dual)
    boundary data is simple and conjugated back to the base cluster."""
    seed = structure.seed
    n = seed.n
    path = structure.dual_path_for(i) if starred else structure.path_for(i)
    w = structure.epsst_d[i] if starred else structure.epsch_s[i]
    mono = tuple(-w[u] if u != i else 0 for u in range(n))
    assert all(x >= 0 for x in mono), "boundary monomial has a negative exponent"
    target = LaurentPoly.monomial(n, mono)

    images = {}
    for k in range(n):
        g = _express_along(LaurentPoly.variable(n, k), path)
        img = g.partial(i) * target
        images[k] = _express_back(img, path)
    return Derivation(n, images, name=(f"R*{i}" if starred else f"R{i}"))


def derivation_Ri(structure, i):
    cache = getattr(structure, "_deriv_cache", None)
    if cache is None:
        cache = structure._deriv_cache = {}
    if ("R", i) not in cache:
        cache[("R", i)] = _lift(structure, i, starred=False)
    return cache[("R", i)]


def derivation_Ri_star(structure, i):
    cache = getattr(structure, "_deriv_cache", None)
    if cache is None:
        cache = structure._deriv_cache = {}
    if ("R*", i) not in cache:
        cache[("R*", i)] = _lift(structure, i, starred=True)
    return cache[("R*", i)]


def derivation_Li(structure, i):
    """The lowering derivation of the seminormal mode: the starred lift at
    the tau-exact partner."""
    from .crystal import ModeError
    if structure.mode != "seminormal":
        raise ModeError("L_i needs the seminormal mode")
    return derivation_Ri_star(structure, structure.pairs.partner(i))


def derivation_Hi(structure, i):
    row = structure.grading.rows[i]
    if any(int(x) != x for x in row):
        raise ValueError("H_i needs an integral grading")
    n = structure.seed.n
    images = {k: LaurentPoly.variable(n, k) * int(-row[k]) for k in range(n)}
    return Derivation(n, images, name=f"H{i}")


def apply_derivation(D, f):
    return D(f)


# ---------------------------------------------------------------------------
# verification layers


@dataclass
class BKReport:
    delta: tuple
    i: int
    rho: int
    ok: bool
    details: list


def check_bk_biperfect(structure, x, i, budget=DEFAULT_BUDGET):
    """Expansion of the lifted operator on a basis element: leading term,
    then a remainder peeled degree-wise, every layer strictly more than one
    string-length below."""
    from .crystal import _as_delta
    seed = structure.seed
    delta = _as_delta(x)
    rho = structure.rho(delta, i)
    D = derivation_Ri(structure, i)
    f = D(generic_character(seed, delta, budget))
    details = []
    ok = True
    if rho > 0:
        y = structure.apply_r(delta, i)
        lead = generic_character(seed, y.delta, budget) * rho
        rem = f - lead
        details.append(("leading", y.delta, rho))
    else:
        rem = f
        bd = structure.system.data[i]
        would_be = tuple(-(a + b) for a, b in zip(delta, bd.eps_check))
        if rem.coefficient(would_be):
            ok = False
            details.append(("vanishing-branch-term-present", would_be))
    guard = 0
    while not rem.is_zero():
        guard += 1
        if guard > 10_000:
            raise RuntimeError("remainder peeling did not terminate")
        layer = pointed_degrees(seed, rem)
        for eta in layer:
            coef = rem.coefficient(tuple(-v for v in eta))
            if not structure.is_mu_supported(eta):
                ok = False
                details.append(("remainder-degree-not-mu-supported", eta))
            r_eta = structure.rho(eta, i)
            if not r_eta < rho - 1:
                ok = False
                details.append(("remainder-degree-too-high", eta, r_eta, rho))
            details.append(("remainder", eta, coef, r_eta))
            rem = rem - generic_character(seed, eta, budget) * coef
    return BKReport(delta, i, rho, ok, details)


@dataclass
class SerreReport:
    i: int
    j: int
    ok: bool
    findings: list


def check_serre(structure, i, j, budget=DEFAULT_BUDGET):
    """Nested-bracket relations between the lifted raising derivations,
    their starred versions, and (in the seminormal case) the bracket table
    against the lowering operators."""
    findings = []
    I = structure.I
    a_pos, b_pos = I.index(i), I.index(j)
    Ri, Rj = derivation_Ri(structure, i), derivation_Ri(structure, j)
    n = structure.seed.n

    if i == j:
        br = Ri.bracket(Ri)
        if not br.is_zero():
            findings.append(("self-bracket-nonzero", i))
    else:
        a = -structure.cartan.C[a_pos][b_pos]
        ad = Rj
        for _ in range(a):
            ad = Ri.bracket(ad)
        witness = ad(LaurentPoly.variable(n, j))
        if witness.is_zero():
            findings.append(("serre-minimality-failed", i, j, a))
        top = Ri.bracket(ad)
        if not top.is_zero():
            findings.append(("serre-relation-failed", i, j, a + 1))

        RjS = derivation_Ri_star(structure, j)
        cst = structure.cartan.Cstar[a_pos][b_pos]
        power = 1 - cst + min(-cst, 1)
        ad = RjS
        for _ in range(power):
            ad = Ri.bracket(ad)
        if not ad.is_zero():
            findings.append(("mixed-relation-failed", i, j, power))
        RiS = derivation_Ri_star(structure, i)
        cst_ji = structure.cartan.Cstar[b_pos][a_pos]
        power = 1 - cst_ji + min(-cst_ji, 1)
        ad = Rj
        for _ in range(power):
            ad = RiS.bracket(ad)
        if not ad.is_zero():
            findings.append(("mixed-star-relation-failed", i, j, power))

    if structure.mode == "seminormal":
        Li = derivation_Li(structure, i)
        br = Ri.bracket(Li)
        for k in range(n):
            want = LaurentPoly.variable(n, k) * int(-structure.grading.rows[i][k])
            got = br(LaurentPoly.variable(n, k))
            if got != want:
                findings.append(("cartan-bracket-mismatch", i, k))
        if i != j:
            Lj = derivation_Li(structure, j)
            if not Ri.bracket(Lj).is_zero():
                findings.append(("raising-lowering-bracket-nonzero", i, j))
    return SerreReport(i, j, not findings, findings)


def trop_x(f):
    """The tropical functional of a polynomial, pairing with A-points."""
    return lambda d: f.trop(d)
