"""Upper bounds for e(G) and checks of the main inequalities on concrete groups.

e(G) <= t + mu*(G,t) + sum_p mu_p(G,t), where mu* sums m^B_n / n^k over
type-B maximal subgroups of index n >= 5 and mu_p sums m^A_{p^n} / p^{nk}
over type-A maximal subgroups of p-power index, both for k >= t.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .chief import alpha_beta_stats
from .corpus import EXCEPTIONAL_GROUPS
from .lattice import all_subgroups, maximal_census, mobius
from .named import parse_group, symmetric
from .perm import FiniteGroup, bits, popcount, prime_factors
from .series import KAPPA_UNSOLUBLE_BOUND, e_H_exact, kappa, kappa_perm, kappa_tilde
from .waiting import expected_wait_exact, fraction_str

MAX_SCAN_DEGREE = 6
CONSTANT_DIGITS = 10


def _geometric_tail(m: int, n: int, t: int) -> Fraction:
    """sum_{k>=t} m / n^k."""
    return Fraction(m * n, (n - 1) * n ** t)


def mu_exact(G: FiniteGroup, t: int) -> tuple[Fraction, dict[int, Fraction]]:
    if t < 1:
        raise ValueError("t must be >= 1")
    census = maximal_census(G)
    mu_star = Fraction(0)
    mu_p: dict[int, Fraction] = {p: Fraction(0) for p in G.primes}
    for n, m in census.mB.items():
        if n >= 5:
            mu_star += _geometric_tail(m, n, t)
    for n, m in census.mA.items():
        (p,) = prime_factors(n)
        mu_p[p] += _geometric_tail(m, n, t)
    return mu_star, mu_p


def e_upper_bound(G: FiniteGroup, t: int) -> Fraction:
    mu_star, mu_p = mu_exact(G, t)
    return t + mu_star + sum(mu_p.values(), Fraction(0))


@dataclass
class LemmaBound:
    name: str
    applicable: bool
    bound: Fraction | None
    exact: Fraction
    prime: int | None = None

    @property
    def holds(self) -> bool | None:
        if not self.applicable:
            return None
        return self.exact <= self.bound

    def to_json(self) -> dict:
        return {"name": self.name, "prime": self.prime, "applicable": self.applicable,
                "bound": None if self.bound is None else fraction_str(self.bound),
                "exact": fraction_str(self.exact), "holds": self.holds}


def lemma_bounds(G: FiniteGroup, t: int) -> list[LemmaBound]:
    """Closed-form bounds on mu*, mu_p from the chief-factor counts."""
    stats = alpha_beta_stats(G)
    mu_star, mu_p = mu_exact(G, t)
    beta = stats.beta
    out = [LemmaBound("mu_star_zero", beta == 0, Fraction(0) if beta == 0 else None, mu_star)]
    ok = t >= beta + 3
    out.append(LemmaBound("mu_star", ok,
                          Fraction(beta * (beta + 1), 2) / Fraction(5) ** (t - 4) / 4 if ok else None,
                          mu_star))
    for p in sorted(G.primes):
        a = stats.alpha(p)
        out.append(LemmaBound("mu_p_zero", a == 0, Fraction(0) if a == 0 else None, mu_p[p], p))
        if p == 2:
            ok = a <= t - 1 and all(n <= t - 2 for (q, u), n in stats.alpha_pt.items()
                                    if q == 2 and u > 1)
            bound = Fraction(1, 2) ** (t - a - 1) if ok else None
        else:
            ok = a <= t - 2
            bound = Fraction(1, (p - 1) ** 2) / Fraction(p) ** (t - a - 2) if ok else None
        out.append(LemmaBound("mu_p", ok, bound, mu_p[p], p))
    return out


@dataclass
class Check:
    name: str
    applicable: bool
    lhs: str
    rhs: str
    holds: bool | None
    note: str = ""


@dataclass
class BoundReport:
    group: str
    order: int
    degree: int | None
    t: int
    d: int
    e: Fraction
    census_bound: Fraction
    lemmas: list[LemmaBound] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (all(c.holds is not False for c in self.checks)
                and all(lb.holds is not False for lb in self.lemmas)
                and self.e <= self.census_bound)

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_json(self) -> dict:
        return {
            "group": self.group, "order": self.order, "degree": self.degree, "t": self.t,
            "d": self.d, "e": fraction_str(self.e), "census_bound": fraction_str(self.census_bound),
            "lemmas": [lb.to_json() for lb in self.lemmas],
            "checks": [asdict(c) for c in self.checks],
            "passed": self.passed,
        }


def _le(name: str, lhs: Fraction, rhs: Fraction, label: str, note: str = "") -> Check:
    return Check(name, True, fraction_str(lhs), label, lhs <= rhs, note)


def _skip(name: str, note: str) -> Check:
    return Check(name, False, "", "", None, note)


def theorem_check(G: FiniteGroup, name: str = "", degree: int | None = None,
                  t: int | None = None) -> BoundReport:
    """Check every inequality that applies to G.

    Certified constants enter through the lower end of their interval, so a
    pass never depends on uncertain digits. ``degree`` defaults to the number
    of points G moves.
    """
    stats = alpha_beta_stats(G)
    d = stats.d
    t = d + 2 if t is None else t
    e = expected_wait_exact(G)
    n = popcount(G.moved_points(G.full_mask)) if degree is None else degree
    report = BoundReport(name, G.order, n, t, d, e, e_upper_bound(G, t), lemma_bounds(G, t))
    soluble = stats.beta == 0

    k_lo = Fraction(kappa(CONSTANT_DIGITS).lower)
    report.checks.append(_le("kappa", e, d + k_lo, f"{d}+{k_lo}"))
    if G.order % 2:
        kt = Fraction(kappa_tilde(CONSTANT_DIGITS).lower)
        report.checks.append(_le("kappa_tilde_odd_order", e, d + kt, f"{d}+{kt}"))
    else:
        report.checks.append(_skip("kappa_tilde_odd_order", "even order"))
    if soluble:
        eh = e_H_exact(set(G.primes) | {2}, d)
        report.checks.append(_le("soluble_model", e, eh, fraction_str(eh)))
        report.checks.append(_skip("unsoluble_bound", "soluble"))
    else:
        report.checks.append(_skip("soluble_model", "not soluble"))
        ub = d + KAPPA_UNSOLUBLE_BOUND
        report.checks.append(_le("unsoluble_bound", e, ub, f"{d}+{KAPPA_UNSOLUBLE_BOUND}"))
    if n >= 2:
        m = n // 2
        if n == 3 and G.order == 6:
            report.checks.append(_skip("permutation_degree", "Sym(3) of degree 3"))
        else:
            kp = Fraction(kappa_perm(CONSTANT_DIGITS).lower)
            report.checks.append(_le("permutation_degree", e, m + kp, f"{m}+{kp}"))
        kopr = all(stats.d_p[p] <= n // p for p in G.primes)
        report.checks.append(Check("sylow_generators", True,
                                   str({p: stats.d_p[p] for p in sorted(G.primes)}),
                                   str({p: n // p for p in sorted(G.primes)}), kopr))
        if n >= 8:
            report.checks.append(Check("unsoluble_chief_length", True, str(stats.beta),
                                       str(m - 3), stats.beta <= m - 3))
        else:
            report.checks.append(_skip("unsoluble_chief_length", "degree < 8"))
    report.checks.append(Check("census_bound", True, fraction_str(e),
                               fraction_str(report.census_bound), e <= report.census_bound))
    return report


# -- exhaustive scan of small symmetric groups --------------------------------

def iso_signature(G: FiniteGroup, mask: int | None = None) -> tuple:
    """(order, abelian, sorted element orders); separates all groups met here."""
    mask = G.full_mask if mask is None else mask
    els = list(bits(mask))
    orders = sorted(int(G.element_orders[x]) for x in els)
    t = G.table
    abelian = all(t[a, b] == t[b, a] for a in G.generators_of(mask) for b in G.generators_of(mask))
    return (len(els), abelian, tuple(orders))


@dataclass
class ScanHit:
    degree: int
    name: str
    order: int
    e: Fraction
    class_size: int

    def to_json(self) -> dict:
        return {"degree": self.degree, "name": self.name, "order": self.order,
                "e": fraction_str(self.e), "class_size": self.class_size}


def _reference_names() -> dict[tuple, str]:
    out = {}
    for row in EXCEPTIONAL_GROUPS:
        H = parse_group(row.spec)
        out[iso_signature(H)] = row.name
    for k in range(4, MAX_SCAN_DEGREE + 1):
        out.setdefault(iso_signature(symmetric(k)), f"Sym({k})")
    return out


def degree_scan(n: int) -> list[ScanHit]:
    """Conjugacy classes of subgroups of Sym(n) moving all n points with e > floor(n/2)+1.

    Groups with fixed points live in a smaller symmetric group and are
    covered by the scan at that degree.
    """
    if not 2 <= n <= MAX_SCAN_DEGREE:
        raise ValueError(f"degree must be in 2..{MAX_SCAN_DEGREE}")
    S = symmetric(n)
    L = all_subgroups(S)
    full_support = (1 << n) - 1
    threshold = n // 2 + 1
    names = _reference_names()
    seen = set()
    hits = []
    for H in L.subgroups:
        if H in seen or H == 1 or S.moved_points(H) != full_support:
            continue
        orbit = {H}
        stack = [H]
        while stack:
            K = stack.pop()
            for s in S.generator_indices:
                C = S.conjugate_mask(K, s)
                if C not in orbit:
                    orbit.add(C)
                    stack.append(C)
        seen |= orbit
        e = _e_below(S, L, H)
        if e > threshold:
            sig = iso_signature(S, H)
            hits.append(ScanHit(n, names.get(sig, f"order {sig[0]}"), sig[0], e, len(orbit)))
    return hits


def _e_below(S: FiniteGroup, L, H: int) -> Fraction:
    """e(H) from the Möbius function of the interval [1, H] in S's lattice."""
    size = popcount(H)
    total = Fraction(0)
    for K, mu in mobius(L, top=H).items():
        k = popcount(K)
        if k < size:
            total -= Fraction(mu * size, size - k)
    return total


def reference_scan(n: int) -> set[tuple[str, Fraction]]:
    return {(row.name, row.e) for row in EXCEPTIONAL_GROUPS if row.degree == n}


def scan_matches_reference(n: int, hits: list[ScanHit] | None = None) -> bool:
    hits = degree_scan(n) if hits is None else hits
    return {(h.name, h.e) for h in hits} == reference_scan(n)
