"""Subgroup lattices, their Möbius function, and the maximal-subgroup census."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

from .perm import (FiniteGroup, bits, minimal_normal_masks, normal_subgroup_masks,
                   popcount)

DEFAULT_SUBGROUP_CAP = 200000


class SubgroupCapExceeded(ValueError):
    pass


def canonical_key(mask: int):
    return (popcount(mask), list(bits(mask)))


@dataclass
class SubgroupLattice:
    group: FiniteGroup
    subgroups: list[int]

    def __post_init__(self):
        self.position = {m: i for i, m in enumerate(self.subgroups)}
        self.orders = [popcount(m) for m in self.subgroups]

    def __len__(self) -> int:
        return len(self.subgroups)

    @property
    def top(self) -> int:
        return self.subgroups[-1]

    def contains(self, big: int, small: int) -> bool:
        return big & small == small

    @cached_property
    def mobius(self) -> dict[int, int]:
        return mobius(self)

    @cached_property
    def maximal(self) -> list[int]:
        """Maximal subgroups of the ambient group, in canonical order."""
        proper = self.subgroups[:-1]
        out = []
        for i, m in enumerate(proper):
            om = self.orders[i]
            # canonical order is by size, so overgroups come later
            if not any(self.orders[j] > om and k & m == m
                       for j, k in enumerate(proper[i + 1:], start=i + 1)):
                out.append(m)
        return out

    def interval_above(self, mask: int) -> list[int]:
        return [k for k in self.subgroups if k & mask == mask]

    def below(self, mask: int) -> list[int]:
        return [k for k in self.subgroups if k & mask == k]

    def to_json(self) -> dict:
        mu = self.mobius
        rows = [{"order": popcount(m), "mobius": mu.get(m, 0)} for m in self.subgroups]
        census = maximal_census(self.group, self)
        return {
            "group_order": self.group.order,
            "subgroup_count": len(self.subgroups),
            "subgroups": rows,
            "census": census.to_json(),
        }


def all_subgroups(G: FiniteGroup, cap: int = DEFAULT_SUBGROUP_CAP) -> SubgroupLattice:
    """Every subgroup of G, by closing the cyclic subgroups under joins.

    Only prime-power cyclic subgroups are used as join partners: each
    subgroup is generated by its elements of prime-power order.
    """
    if "lattice" in G.cache:
        return G.cache["lattice"]
    orders = G.element_orders
    cyclic: dict[int, int] = {}
    for x in range(G.order):
        m = G.closure([x])
        cyclic.setdefault(m, x)
    pp = []
    for m, x in cyclic.items():
        o = int(orders[x])
        if o > 1 and len(_prime_set(o)) == 1:
            pp.append((m, x))
    found = set(cyclic)
    frontier = list(found)
    while frontier:
        new = []
        for h in frontier:
            hg = G.generators_of(h)
            for cm, cx in pp:
                if h & cm == cm:
                    continue
                k = G.closure(hg + (cx,), h)
                if k not in found:
                    found.add(k)
                    new.append(k)
                    if len(found) > cap:
                        raise SubgroupCapExceeded(f"more than {cap} subgroups")
        frontier = new
    lat = SubgroupLattice(G, sorted(found, key=canonical_key))
    G.cache["lattice"] = lat
    return lat


def _prime_set(n: int) -> set[int]:
    out, p = set(), 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


def mobius(L: SubgroupLattice, top: int | None = None) -> dict[int, int]:
    """Möbius values mu(H) = mu(H, top) for H <= top; zero entries omitted.

    Top-down recursion: mu(top) = 1, mu(H) = -sum of mu(K) over H < K <= top.
    """
    top = L.top if top is None else top
    subs = [m for m in L.subgroups if m & top == m]
    nonzero: list[tuple[int, int]] = []
    mu: dict[int, int] = {}
    for h in reversed(subs):
        if h == top:
            val = 1
        else:
            val = -sum(v for k, v in nonzero if k & h == h)
        if val:
            nonzero.append((h, val))
            mu[h] = val
    return mu


@dataclass
class MaximalSubgroupCensus:
    group_order: int
    entries: list[tuple[int, int, str]] = field(default_factory=list)  # (mask, index, type)

    def counts(self, kind: str | None = None) -> dict[int, int]:
        c = Counter(n for _, n, t in self.entries if kind is None or t == kind)
        return dict(sorted(c.items()))

    @property
    def m(self) -> dict[int, int]:
        return self.counts()

    @property
    def mA(self) -> dict[int, int]:
        return self.counts("A")

    @property
    def mB(self) -> dict[int, int]:
        return self.counts("B")

    @property
    def total(self) -> int:
        return len(self.entries)

    def to_json(self) -> dict:
        rows = {}
        for n in sorted(self.m):
            rows[str(n)] = {"m": self.m.get(n, 0), "A": self.mA.get(n, 0), "B": self.mB.get(n, 0)}
        return rows


def is_type_a(G: FiniteGroup, M: int) -> bool:
    """True iff soc(G / core_G(M)) is abelian."""
    K = G.core(M)
    t = G.table
    for N in minimal_normal_masks(G, above=K):
        gens = G.generators_of(N)
        for a in gens:
            for b in gens:
                ab, ba = t[a, b], t[b, a]
                # [a, b] in K  <=>  ab and ba lie in the same coset of K
                if not (K >> int(t[G.inverses[ba], ab])) & 1:
                    return False
    return True


def maximal_census(G: FiniteGroup, L: SubgroupLattice | None = None) -> MaximalSubgroupCensus:
    if "census" in G.cache:
        return G.cache["census"]
    L = all_subgroups(G) if L is None else L
    normal_subgroup_masks(G)
    census = MaximalSubgroupCensus(G.order)
    for M in L.maximal:
        census.entries.append((M, G.order // popcount(M), "A" if is_type_a(G, M) else "B"))
    G.cache["census"] = census
    return census


def frattini_mask(G: FiniteGroup) -> int:
    """Intersection of the maximal subgroups (the whole group if trivial)."""
    L = all_subgroups(G)
    out = G.full_mask
    for M in L.maximal:
        out &= M
    return out


def lattice_json(G: FiniteGroup) -> str:
    return json.dumps(all_subgroups(G).to_json(), indent=2)
