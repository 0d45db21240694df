"""Chief series, complemented chief factors and the product formula for P_G(k).

For a soluble group, P_G(k) factors over the G-isomorphism classes A of
complemented chief factors:

    P_G(k) = prod_A prod_{0 <= l < delta_A} (1 - q_A^(l + r_A zeta_A) / |A|^k)

with q_A = |End_G(A)|, r_A = dim_{End_G(A)} A, zeta_A = 0 for a trivial
module and 1 otherwise.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .lattice import all_subgroups
from .perm import (FiniteGroup, bits, d_p, log_p, minimal_normal_masks, popcount,
                   prime_factors)
from .series import C_poly, D_poly
from .waiting import DirichletPolynomial, TrivialGroupError


class NonSolubleInput(ValueError):
    pass


@dataclass(frozen=True)
class ChiefFactor:
    lower: int
    upper: int
    order: int
    abelian: bool
    p: int | None
    t: int | None
    complemented: bool


@dataclass
class ChiefSeries:
    group: FiniteGroup
    terms: list[int]
    factors: list[ChiefFactor]

    @property
    def length(self) -> int:
        return len(self.factors)

    def to_json(self) -> list[dict]:
        return [{"order": f.order, "abelian": f.abelian, "p": f.p, "t": f.t,
                 "complemented": f.complemented} for f in self.factors]


def _commutes_mod(G: FiniteGroup, upper: int, lower: int) -> bool:
    t, inv = G.table, G.inverses
    gens = G.generators_of(upper)
    for a in gens:
        for b in gens:
            if not (lower >> int(t[inv[t[b, a]], t[a, b]])) & 1:
                return False
    return True


def _complement_exists(G: FiniteGroup, lower: int, upper: int) -> bool:
    target = G.order * popcount(lower) // popcount(upper)
    for K in all_subgroups(G).subgroups:
        if popcount(K) == target and K & lower == lower and K & upper == lower:
            return True
    return False


def chief_series(G: FiniteGroup, choice: str = "smallest") -> ChiefSeries:
    """1 = N_0 < ... < N_r = G, each step a minimal normal subgroup of G/N_i.

    ``choice`` picks the first ("smallest") or last ("largest") candidate
    in canonical order; both give the same factor statistics.
    """
    if G.order == 1:
        raise TrivialGroupError("the trivial group has no chief series")
    key = ("chief", choice)
    if key in G.cache:
        return G.cache[key]
    terms = [1]
    factors = []
    cur = 1
    while cur != G.full_mask:
        cands = minimal_normal_masks(G, above=cur)
        nxt = cands[0] if choice == "smallest" else cands[-1]
        order = popcount(nxt) // popcount(cur)
        abelian = _commutes_mod(G, nxt, cur)
        p = t = None
        if abelian:
            (p,) = prime_factors(order)
            t = log_p(order, p)
        factors.append(ChiefFactor(cur, nxt, order, abelian, p, t,
                                   _complement_exists(G, cur, nxt)))
        terms.append(nxt)
        cur = nxt
    series = ChiefSeries(G, terms, factors)
    G.cache[key] = series
    return series


def is_complemented(G: FiniteGroup, i: int, series: ChiefSeries | None = None) -> bool:
    series = chief_series(G) if series is None else series
    if not 0 <= i < series.length:
        raise IndexError(f"no chief factor at position {i}")
    f = series.factors[i]
    return _complement_exists(G, f.lower, f.upper)


@dataclass
class ChiefStats:
    alpha_pt: dict[tuple[int, int], int]
    alpha_p: dict[int, int]
    beta: int
    d_p: dict[int, int]

    def alpha(self, p: int, t: int | None = None) -> int:
        if t is None:
            return self.alpha_p.get(p, 0)
        return self.alpha_pt.get((p, t), 0)

    @property
    def d(self) -> int:
        return max(self.d_p.values(), default=0)

    def to_json(self) -> dict:
        return {
            "alpha_pt": {f"{p},{t}": n for (p, t), n in sorted(self.alpha_pt.items())},
            "alpha_p": {str(p): n for p, n in sorted(self.alpha_p.items())},
            "beta": self.beta,
            "d_p": {str(p): n for p, n in sorted(self.d_p.items())},
        }


def alpha_beta_stats(G: FiniteGroup, series: ChiefSeries | None = None) -> ChiefStats:
    if series is None and "stats" in G.cache:
        return G.cache["stats"]
    series = chief_series(G) if series is None else series
    alpha_pt: dict[tuple[int, int], int] = defaultdict(int)
    alpha_p: dict[int, int] = defaultdict(int)
    beta = 0
    for f in series.factors:
        if not f.abelian:
            beta += 1
        elif f.complemented:
            alpha_pt[(f.p, f.t)] += 1
            alpha_p[f.p] += 1
    stats = ChiefStats(dict(alpha_pt), dict(alpha_p), beta, {p: d_p(G, p) for p in G.primes})
    G.cache.setdefault("stats", stats)
    return stats


def stime_clauses(stats: ChiefStats) -> dict[str, bool]:
    """The five inequalities between alpha, beta and d_p; all must hold."""
    out = {}
    ps = sorted(stats.d_p)
    out["1"] = all(stats.alpha(p) <= stats.d_p[p] for p in ps)
    d2 = stats.d_p.get(2, 0)
    a2, b = stats.alpha(2), stats.beta
    out["2"] = a2 + b <= d2
    out["3"] = b == 0 or b <= d2 - 1
    out["4"] = stats.alpha(2, 1) != 0 or a2 + b <= d2 - 1 or (a2 + b == 0 and d2 == 0)
    out["5"] = all(stats.alpha(p, 1) != 0 or stats.alpha(p) <= stats.d_p[p] - 1
                   or (stats.alpha(p) == 0 and stats.d_p[p] == 0) for p in ps)
    return out


# -- G-module structure of abelian chief factors ------------------------------

def rank_mod_p(rows: list[list[int]], p: int) -> int:
    rows = [[v % p for v in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def intertwiner_dim(mats1: list[list[list[int]]], mats2: list[list[list[int]]], p: int) -> int:
    """dim of {X : X M1_g = M2_g X for all g}, X of shape t2 x t1."""
    t1 = len(mats1[0])
    t2 = len(mats2[0])
    nvar = t2 * t1
    rows = []
    for M1, M2 in zip(mats1, mats2):
        for i in range(t2):
            for j in range(t1):
                r = [0] * nvar
                for k in range(t1):  # (X M1)_ij = sum_k X_ik M1_kj
                    r[i * t1 + k] += M1[k][j]
                for k in range(t2):  # (M2 X)_ij = sum_k M2_ik X_kj
                    r[k * t1 + j] -= M2[i][k]
                rows.append(r)
    if not rows:
        return nvar
    return nvar - rank_mod_p(rows, p)


@dataclass
class FactorModule:
    position: int
    p: int
    t: int
    matrices: list[list[list[int]]]  # one per generator of G

    @property
    def trivial(self) -> bool:
        ident = [[int(i == j) for j in range(self.t)] for i in range(self.t)]
        return all(M == ident for M in self.matrices)


def factor_module(G: FiniteGroup, f: ChiefFactor, position: int) -> FactorModule:
    """Matrices of the conjugation action of G's generators on upper/lower."""
    p, tdim = f.p, f.t
    lower, upper = f.lower, f.upper
    tab = G.table
    basis: list[int] = []
    span = lower
    for y in bits(upper):
        if not (span >> y) & 1:
            basis.append(y)
            span = G.closure(G.generators_of(span) + (y,), span)
            if span == upper:
                break
    lower_el = list(bits(lower))
    coord: dict[int, tuple[int, ...]] = {}
    for vec in itertools.product(range(p), repeat=tdim):
        e = 0
        for b, a in zip(basis, vec):
            for _ in range(a):
                e = int(tab[e, b])
        for x in lower_el:
            coord[int(tab[e, x])] = vec
    mats = []
    for s in G.generator_indices:
        cols = [coord[G.conj(b, s)] for b in basis]
        mats.append([[cols[j][i] for j in range(tdim)] for i in range(tdim)])
    return FactorModule(position, p, tdim, mats)


@dataclass
class ChiefFactorClass:
    representative: int  # chief series position
    p: int
    t: int
    delta: int
    q: int
    r: int
    zeta: int
    members: list[int] = field(default_factory=list)

    @property
    def order(self) -> int:
        return self.p ** self.t

    def factor_polys(self) -> list[DirichletPolynomial]:
        """The delta_A factors Q_{A,l}, l = 0..delta_A-1."""
        return [DirichletPolynomial({1: 1, self.q ** self.r: -Fraction(self.q ** (l + self.r * self.zeta))})
                for l in range(self.delta)]

    def to_json(self) -> dict:
        return {"position": self.representative, "p": self.p, "t": self.t, "delta": self.delta,
                "q": self.q, "r": self.r, "zeta": self.zeta}


def _require_soluble(G: FiniteGroup) -> ChiefSeries:
    series = chief_series(G)
    if any(not f.abelian for f in series.factors):
        raise NonSolubleInput("group is not soluble")
    return series


def factor_classes(G: FiniteGroup) -> list[ChiefFactorClass]:
    if "classes" in G.cache:
        return G.cache["classes"]
    series = _require_soluble(G)
    modules = [factor_module(G, f, i) for i, f in enumerate(series.factors) if f.complemented]
    classes: list[tuple[FactorModule, list[FactorModule]]] = []
    for mod in modules:
        for rep, members in classes:
            # irreducible modules: any nonzero G-map is an isomorphism
            if (rep.p == mod.p and rep.t == mod.t
                    and intertwiner_dim(rep.matrices, mod.matrices, mod.p) > 0):
                members.append(mod)
                break
        else:
            classes.append((mod, [mod]))
    out = []
    for rep, members in classes:
        s = intertwiner_dim(rep.matrices, rep.matrices, rep.p)
        out.append(ChiefFactorClass(
            representative=rep.position, p=rep.p, t=rep.t, delta=len(members),
            q=rep.p ** s, r=rep.t // s, zeta=0 if rep.trivial else 1,
            members=[m.position for m in members]))
    G.cache["classes"] = out
    return out


def gaschutz_dirichlet(G: FiniteGroup, p: int | None = None) -> DirichletPolynomial:
    """Expanded product formula; restricted to p-power classes when p is given."""
    if G.order == 1:
        raise TrivialGroupError("the trivial group has no chief factors")
    out = DirichletPolynomial.one()
    for cls in factor_classes(G):
        if p is not None and cls.p != p:
            continue
        for q in cls.factor_polys():
            out = out * q
    return out


def gaschutz_probability(G: FiniteGroup, k: int) -> Fraction:
    if k < 1:
        raise ValueError("the product formula holds for k >= 1")
    out = Fraction(1)
    for cls in factor_classes(G):
        for q in cls.factor_polys():
            out *= q(k)
    return out


def partial_probability_p(G: FiniteGroup, p: int, k: int) -> Fraction:
    out = Fraction(1)
    for cls in factor_classes(G):
        if cls.p == p:
            for q in cls.factor_polys():
                out *= q(k)
    return out


def confronti_check(G: FiniteGroup, p: int, d: int, k: int) -> dict[str, bool | None]:
    """Compare P_{G,p}(k) with the model products C_{p,d}(k), D_{p,d}(k).

    Clause values: True/False when the hypotheses hold, None when they do not.
    """
    _require_soluble(G)
    stats = alpha_beta_stats(G)
    dp = stats.d_p.get(p, 0)
    P = partial_probability_p(G, p, k)
    report: dict[str, bool | None] = {"1": None, "2": None, "3": None, "4": None}
    if dp > d or k < 1:
        return report
    report["1"] = P >= D_poly(p, d, k)
    derived = G.derived_mask()
    if (G.order // popcount(derived)) % p == 0:
        report["2"] = P >= C_poly(p, d, k)
    if stats.alpha(p, 1) == 0:
        report["3"] = P >= C_poly(p, d, k)
    if p == 2:
        report["4"] = P >= C_poly(2, d, k)
    return report
