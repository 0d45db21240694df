"""Exact generation probabilities and expected waiting times.

P_G(k), the probability that k uniform elements generate G, is a Dirichlet
polynomial in k; e(G) = sum_{k>=0} (1 - P_G(k)) is then a finite sum of
geometric series.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .lattice import SubgroupLattice, all_subgroups, maximal_census
from .perm import FiniteGroup, popcount


class TrivialGroupError(ValueError):
    """e(G) is ambiguous for the trivial group (0 by the series, 1 by the definition)."""


@dataclass
class DirichletPolynomial:
    """k -> sum of c * base**(-k) over the stored (base, c) pairs."""

    coeffs: dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict[int, Fraction] = {}
        for b, c in self.coeffs.items():
            if b < 1:
                raise ValueError(f"base {b} < 1")
            c = Fraction(c)
            if c:
                clean[b] = clean.get(b, Fraction(0)) + c
        self.coeffs = {b: c for b, c in sorted(clean.items()) if c}

    @classmethod
    def from_monomials(cls, monomials: Iterable[tuple[Fraction | int, int]]) -> DirichletPolynomial:
        acc: dict[int, Fraction] = defaultdict(Fraction)
        for c, b in monomials:
            acc[b] += Fraction(c)
        return cls(dict(acc))

    @classmethod
    def one(cls) -> DirichletPolynomial:
        return cls({1: Fraction(1)})

    @property
    def monomials(self) -> list[tuple[Fraction, int]]:
        return [(c, b) for b, c in self.coeffs.items()]

    def __call__(self, k: int) -> Fraction:
        return sum((c / Fraction(b) ** k for b, c in self.coeffs.items()), Fraction(0))

    evaluate = __call__

    def __mul__(self, other: DirichletPolynomial) -> DirichletPolynomial:
        acc: dict[int, Fraction] = defaultdict(Fraction)
        for b1, c1 in self.coeffs.items():
            for b2, c2 in other.coeffs.items():
                acc[b1 * b2] += c1 * c2
        return DirichletPolynomial(dict(acc))

    def __pow__(self, n: int) -> DirichletPolynomial:
        out = DirichletPolynomial.one()
        for _ in range(n):
            out = out * self
        return out

    def __add__(self, other: DirichletPolynomial) -> DirichletPolynomial:
        acc = defaultdict(Fraction, self.coeffs)
        for b, c in other.coeffs.items():
            acc[b] += c
        return DirichletPolynomial(dict(acc))

    def __sub__(self, other: DirichletPolynomial) -> DirichletPolynomial:
        return self + DirichletPolynomial({b: -c for b, c in other.coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, DirichletPolynomial) and self.coeffs == other.coeffs

    def constant(self) -> Fraction:
        return self.coeffs.get(1, Fraction(0))

    def __str__(self) -> str:
        parts = []
        for b, c in self.coeffs.items():
            parts.append(f"{c}" if b == 1 else f"{c}*{b}^-k")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> list[dict]:
        return [{"base": b, "coeff": fraction_str(c)} for b, c in self.coeffs.items()]


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def gen_probability(G: FiniteGroup, L: SubgroupLattice | None, k: int) -> Fraction:
    """P_G(k) = sum_H mu(H) (|H|/|G|)^k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    L = all_subgroups(G) if L is None else L
    n = G.order
    return sum((mu * Fraction(popcount(h), n) ** k for h, mu in L.mobius.items()), Fraction(0))


def gen_probability_dirichlet(G: FiniteGroup, L: SubgroupLattice | None = None) -> DirichletPolynomial:
    L = all_subgroups(G) if L is None else L
    return DirichletPolynomial.from_monomials(
        (mu, G.order // popcount(h)) for h, mu in L.mobius.items())


def expected_wait_exact(G: FiniteGroup, L: SubgroupLattice | None = None) -> Fraction:
    """e(G) = -sum_{H<G} mu(H) |G| / (|G| - |H|)."""
    if G.order == 1:
        raise TrivialGroupError("e(G) is undefined for the trivial group")
    L = all_subgroups(G) if L is None else L
    n = G.order
    total = Fraction(0)
    for h, mu in L.mobius.items():
        size = popcount(h)
        if size < n:
            total -= Fraction(mu * n, n - size)
    return total


def expected_wait_from_dirichlet(P: DirichletPolynomial) -> Fraction:
    """sum_{k>=0} (1 - P(k)) summed exactly as geometric series."""
    if P.constant() != 1:
        raise ValueError("constant term must be 1 for the series to converge")
    total = Fraction(0)
    for b, c in P.coeffs.items():
        if b == 1:
            continue
        total -= c * Fraction(b, b - 1)
    return total


def expected_wait_series(G: FiniteGroup, L: SubgroupLattice | None, tolerance) -> tuple[Fraction, Fraction]:
    """Bracket [partial sum, partial sum + tail bound] around e(G).

    The tail uses 1 - P_G(k) <= m * 2^-k with m the number of maximal
    subgroups.
    """
    tolerance = Fraction(tolerance)
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    if G.order == 1:
        raise TrivialGroupError("e(G) is undefined for the trivial group")
    L = all_subgroups(G) if L is None else L
    P = gen_probability_dirichlet(G, L)
    m = maximal_census(G, L).total
    K = 0
    while Fraction(m * 2, 2 ** K) >= tolerance:
        K += 1
    partial = sum((1 - P(k) for k in range(K)), Fraction(0))
    return partial, partial + Fraction(m * 2, 2 ** K)


def minimal_generator_count(G: FiniteGroup, L: SubgroupLattice | None = None) -> int:
    """Least k with P_G(k) > 0."""
    k = 0
    while gen_probability(G, L, k) == 0:
        k += 1
    return k


def count_generating_tuples(G: FiniteGroup, k: int) -> list[int]:
    """Exact counts of generating j-tuples for j = 0..k, without the lattice.

    Every tuple is accounted for: the count of j-tuples generating each
    subgroup H is pushed through all |G| choices of the next element.
    """
    full = G.full_mask
    states: Counter[int] = Counter({1: 1})
    memo: dict[tuple[int, int], int] = {}
    out = [1 if G.order == 1 else 0]
    for _ in range(k):
        nxt: Counter[int] = Counter()
        for h, cnt in states.items():
            gens = G.generators_of(h)
            inside = popcount(h)
            nxt[h] += cnt * inside
            for g in range(G.order):
                if (h >> g) & 1:
                    continue
                key = (h, g)
                kk = memo.get(key)
                if kk is None:
                    kk = memo[key] = G.closure(gens + (g,), h)
                nxt[kk] += cnt
        states = nxt
        out.append(states.get(full, 0))
    return out


def count_generating_tuples_naive(G: FiniteGroup, k: int) -> int:
    """Literal enumeration of G^k; for tiny groups only."""
    full = G.full_mask
    return sum(1 for tup in itertools.product(range(G.order), repeat=k)
               if G.closure(tup) == full)


def generated_mask(G: FiniteGroup, elems: Iterable[int]) -> int:
    return G.closure(list(elems))


__all__ = [
    "DirichletPolynomial", "TrivialGroupError", "count_generating_tuples",
    "count_generating_tuples_naive", "expected_wait_exact", "expected_wait_from_dirichlet",
    "expected_wait_series", "fraction_str", "gen_probability", "gen_probability_dirichlet",
    "minimal_generator_count",
]
