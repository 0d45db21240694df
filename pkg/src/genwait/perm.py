"""Permutations and explicit finite permutation groups.

Groups carry their full element table, sorted lexicographically on image
tuples, so the identity is always element 0 and every derived computation
(subgroup lists, JSON output) is reproducible. Subgroups are handled as
integer bitmasks over that table.

Permutations act on the right: ``(g * h)(x) = h(g(x))``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels

DEFAULT_ORDER_CAP = 10000


class OrderCapExceeded(ValueError):
    def __init__(self, cap: int):
        super().__init__(f"group order exceeds cap {cap}")
        self.cap = cap


class NotNormalError(ValueError):
    pass


def default_order_cap() -> int:
    return int(os.environ.get("GENWAIT_ORDER_CAP", DEFAULT_ORDER_CAP))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` in increasing order."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def log_p(n: int, p: int) -> int:
    t = 0
    while n > 1:
        if n % p:
            raise ValueError(f"{n} is not a power of {p}")
        n //= p
        t += 1
    return t


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        im = other.images
        return Permutation(tuple(im[i] for i in self.images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def perm_from_cycles(cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
    """Product of disjoint cycles on ``{0, ..., degree-1}``."""
    images = list(range(degree))
    used: set[int] = set()
    for cyc in cycles:
        for x in cyc:
            if not 0 <= x < degree:
                raise ValueError(f"point {x} out of range for degree {degree}")
            if x in used:
                raise ValueError(f"point {x} repeated in cycle list")
            used.add(x)
        for a, b in zip(cyc, tuple(cyc[1:]) + tuple(cyc[:1])):
            images[a] = b
    return Permutation(tuple(images))


class FiniteGroup:
    """A permutation group with its complete, lexicographically sorted element table."""

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 elements: Sequence[tuple[int, ...]]):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.order = len(self.elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        # per-group memo for lattice, normal subgroups, chief data
        self.cache: dict = {}

    def __repr__(self) -> str:
        return f"<FiniteGroup degree={self.degree} order={self.order}>"

    def __len__(self) -> int:
        return self.order

    def element(self, i: int) -> Permutation:
        return Permutation(self.elements[i])

    def index(self, g: Permutation | tuple[int, ...]) -> int:
        key = g.images if isinstance(g, Permutation) else tuple(g)
        return self._index[key]

    def __contains__(self, g: Permutation) -> bool:
        return g.images in self._index

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @cached_property
    def generator_indices(self) -> tuple[int, ...]:
        return tuple(self.index(g) for g in self.generators)

    @cached_property
    def table(self) -> np.ndarray:
        """Cayley table, ``table[i, j] = index(g_i * g_j)``."""
        n, deg = self.order, self.degree
        E = np.array(self.elements, dtype=np.int64).reshape(n, deg)
        table = np.empty((n, n), dtype=np.int32)
        if deg == 0 or n == 1:
            table[:] = 0
            return table
        if deg <= 15:
            weights = deg ** np.arange(deg - 1, -1, -1, dtype=np.int64)
            codes = E @ weights
            for i in range(n):
                # row i: g_i * g_j has images E[j][E[i]]
                table[i] = np.searchsorted(codes, E[:, E[i]] @ weights)
        else:
            for i in range(n):
                prod = E[:, E[i]]
                table[i] = [self._index[tuple(r)] for r in prod.tolist()]
        return table

    @cached_property
    def inverses(self) -> np.ndarray:
        return np.argmin(self.table, axis=1).astype(np.int32)

    @cached_property
    def element_orders(self) -> np.ndarray:
        return np.array([Permutation(e).order() for e in self.elements], dtype=np.int64)

    @cached_property
    def primes(self) -> list[int]:
        """The set of primes dividing the order, ascending."""
        return prime_factors(self.order)

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def conj(self, i: int, s: int) -> int:
        """Index of ``g_s^-1 g_i g_s``."""
        t = self.table
        return int(t[t[self.inverses[s], i], s])

    def is_abelian(self) -> bool:
        t = self.table
        gi = self.generator_indices
        return all(t[a, b] == t[b, a] for a in gi for b in gi)

    def exponent(self) -> int:
        return math.lcm(1, *map(int, self.element_orders))

    # -- subgroups as bitmasks ------------------------------------------------

    def closure(self, gens: Iterable[int], seed: int = 1) -> int:
        gens = list(gens)
        if not gens:
            return seed | 1
        return kernels.closure(self.table, seed, gens)

    def generators_of(self, mask: int) -> tuple[int, ...]:
        """A small generating set for the subgroup ``mask`` (greedy, canonical)."""
        memo = self.cache.setdefault("gens_of", {})
        if mask in memo:
            return memo[mask]
        gens: list[int] = []
        cur = 1
        for x in bits(mask):
            if not (cur >> x) & 1:
                gens.append(x)
                cur = self.closure(gens, cur)
                if cur == mask:
                    break
        memo[mask] = tuple(gens)
        return memo[mask]

    def join(self, a: int, b: int) -> int:
        if a & b == b:
            return a
        if a & b == a:
            return b
        return self.closure(self.generators_of(a) + self.generators_of(b), a)

    def conjugate_mask(self, mask: int, s: int) -> int:
        out = 0
        for x in bits(mask):
            out |= 1 << self.conj(x, s)
        return out

    def is_normal_mask(self, mask: int) -> bool:
        for s in self.generator_indices:
            for x in self.generators_of(mask):
                if not (mask >> self.conj(x, s)) & 1:
                    return False
        return True

    def normal_closure(self, elems: Iterable[int]) -> int:
        gens = list(elems)
        mask = self.closure(gens)
        changed = True
        while changed:
            changed = False
            for s in self.generator_indices:
                for x in self.generators_of(mask):
                    y = self.conj(x, s)
                    if not (mask >> y) & 1:
                        mask = self.closure(self.generators_of(mask) + (y,), mask)
                        changed = True
        return mask

    def core(self, mask: int) -> int:
        """Largest normal subgroup of G inside ``mask``."""
        cur = mask
        while True:
            nxt = cur
            for s in self.generator_indices:
                nxt &= self.conjugate_mask(cur, s)
            if nxt == cur:
                return cur
            cur = nxt

    def derived_mask(self) -> int:
        t, inv = self.table, self.inverses
        comms = []
        gi = self.generator_indices
        for a in gi:
            for b in gi:
                comms.append(int(t[t[inv[a], inv[b]], t[a, b]]))
        return self.normal_closure(comms)

    def subgroup(self, mask: int) -> FiniteGroup:
        gens = [self.element(i) for i in self.generators_of(mask)]
        return FiniteGroup(self.degree, gens, [self.elements[i] for i in bits(mask)])

    def mask_of(self, H: FiniteGroup) -> int:
        if H.degree != self.degree:
            raise ValueError("degree mismatch")
        mask = 0
        for e in H.elements:
            if e not in self._index:
                raise ValueError("not a subgroup of G")
            mask |= 1 << self._index[e]
        return mask

    def moved_points(self, mask: int) -> int:
        """Bitmask of points moved by some element of the subgroup."""
        moved = 0
        for x in self.generators_of(mask):
            for pt, im in enumerate(self.elements[x]):
                if pt != im:
                    moved |= 1 << pt
        return moved


def group_from_generators(gens: Sequence[Permutation], cap: int | None = None,
                          degree: int | None = None) -> FiniteGroup:
    """Enumerate the group generated by ``gens``; fails past ``cap`` elements."""
    cap = default_order_cap() if cap is None else cap
    if cap < 1:
        raise ValueError("cap must be positive")
    gens = list(gens)
    if gens:
        degree = gens[0].degree if degree is None else degree
        if any(g.degree != degree for g in gens):
            raise ValueError("generators must share a degree")
    elif degree is None:
        raise ValueError("degree required for an empty generating set")
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    gimgs = [g.images for g in gens if not g.is_identity()]
    for x in frontier:
        for g in gimgs:
            y = tuple([g[i] for i in x])
            if y not in seen:
                seen.add(y)
                frontier.append(y)
                if len(seen) > cap:
                    raise OrderCapExceeded(cap)
    return FiniteGroup(degree, gens, sorted(seen))


def trivial_group(degree: int = 1) -> FiniteGroup:
    return group_from_generators([], degree=degree)


def _shift(p: tuple[int, ...], offset: int, total: int, before: bool) -> tuple[int, ...]:
    if before:
        return tuple(range(offset)) + tuple(x + offset for x in p)
    return p + tuple(range(len(p), total))


def direct_product(G: FiniteGroup, H: FiniteGroup, cap: int | None = None) -> FiniteGroup:
    """G x H acting on disjoint point sets (G's points first)."""
    cap = default_order_cap() if cap is None else cap
    if G.order * H.order > cap:
        raise OrderCapExceeded(cap)
    deg = G.degree + H.degree
    gens = [Permutation(_shift(g.images, 0, deg, False)) for g in G.generators]
    gens += [Permutation(_shift(h.images, G.degree, deg, True)) for h in H.generators]
    shifted = [tuple(x + G.degree for x in h) for h in H.elements]
    # nested loop over sorted factors is already lexicographic
    elements = [g + h for g in G.elements for h in shifted]
    return FiniteGroup(deg, gens, elements)


def quotient(G: FiniteGroup, N: FiniteGroup | int) -> FiniteGroup:
    """G/N realised as the action of G on the right cosets of N."""
    mask = N if isinstance(N, int) else G.mask_of(N)
    if G.closure(G.generators_of(mask)) != mask:
        raise ValueError("N is not a subgroup of G")
    if not G.is_normal_mask(mask):
        raise NotNormalError("N is not normal in G")
    t = G.table
    coset_of = [-1] * G.order
    reps = []
    nel = list(bits(mask))
    for x in range(G.order):
        if coset_of[x] >= 0:
            continue
        c = len(reps)
        reps.append(x)
        for n in nel:
            coset_of[int(t[n, x])] = c
    k = len(reps)
    gens = []
    for s in G.generator_indices:
        gens.append(Permutation(tuple(coset_of[int(t[r, s])] for r in reps)))
    return group_from_generators(gens, degree=k)


def normal_subgroup_masks(G: FiniteGroup) -> list[int]:
    """All normal subgroups, sorted by order then by element indices."""
    if "normal" in G.cache:
        return G.cache["normal"]
    # conjugacy classes via orbits under the generators
    seen = 0
    closures: set[int] = set()
    for x in range(G.order):
        if (seen >> x) & 1:
            continue
        orbit = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for s in G.generator_indices:
                z = G.conj(y, s)
                if z not in orbit:
                    orbit.add(z)
                    stack.append(z)
        for y in orbit:
            seen |= 1 << y
        closures.add(G.closure(sorted(orbit)))
    normals = set(closures)
    frontier = list(normals)
    while frontier:
        new = []
        for a in frontier:
            for b in closures:
                j = G.join(a, b)
                if j not in normals:
                    normals.add(j)
                    new.append(j)
        frontier = new
    out = sorted(normals, key=lambda m: (popcount(m), list(bits(m))))
    G.cache["normal"] = out
    return out


def minimal_normal_subgroups(G: FiniteGroup) -> list[FiniteGroup]:
    if G.order == 1:
        raise ValueError("the trivial group has no minimal normal subgroups")
    return [G.subgroup(m) for m in minimal_normal_masks(G)]


def minimal_normal_masks(G: FiniteGroup, above: int = 1) -> list[int]:
    """Normal subgroups minimal among those properly containing ``above``."""
    cands = [m for m in normal_subgroup_masks(G) if m & above == above and m != above]
    return [m for m in cands
            if not any(o != m and o & m == o and o & above == above for o in cands)]


def sylow_mask(G: FiniteGroup, p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    target = p_part(G.order, p)
    P = 1
    if target == 1:
        return P
    orders = G.element_orders
    for x in range(G.order):
        if (P >> x) & 1 or p_part(int(orders[x]), p) != int(orders[x]):
            continue
        Q = G.closure(G.generators_of(P) + (x,), P)
        if p_part(popcount(Q), p) == popcount(Q):
            P = Q
            if popcount(P) == target:
                break
    return P


def sylow_subgroup(G: FiniteGroup, p: int) -> FiniteGroup:
    return G.subgroup(sylow_mask(G, p))


def d_p(G: FiniteGroup, p: int) -> int:
    """Minimal number of generators of a Sylow p-subgroup."""
    from .lattice import frattini_mask

    P = sylow_subgroup(G, p)
    if P.order == 1:
        return 0
    return log_p(P.order // popcount(frattini_mask(P)), p)
