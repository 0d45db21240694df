"""A supersoluble group H with P_H(k) <= P_G(k), built prime by prime.

For primes p_1 < p_2 < ... of |G|, H grows by C_p^{d_p(G)}: as a direct
factor when p divides |G/G'| or G has no complemented chief factor of order
p, and otherwise as C_p^{d_p} : H_i with H_i acting through a quotient of
prime order q dividing p - 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chief import NonSolubleInput, alpha_beta_stats, chief_series, gaschutz_probability
from .perm import (FiniteGroup, Permutation, bits, d_p, direct_product, group_from_generators,
                   normal_subgroup_masks, perm_from_cycles, popcount, prime_factors)
from .waiting import fraction_str


class WitnessConstructionError(RuntimeError):
    pass


def least_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = prime_factors(p - 1)
    for r in range(2, p):
        if all(pow(r, (p - 1) // f, p) != 1 for f in factors):
            return r
    raise ValueError(f"no primitive root mod {p}")


def elementary_abelian(p: int, d: int) -> FiniteGroup:
    """C_p^d on d disjoint blocks of p points."""
    deg = p * d
    return group_from_generators(
        [perm_from_cycles([tuple(range(i * p, (i + 1) * p))], deg) for i in range(d)], degree=deg)


def abelianization_order(G: FiniteGroup) -> int:
    return G.order // popcount(G.derived_mask())


def _prime_quotient(H: FiniteGroup, q: int) -> tuple[int, list[int]]:
    """A normal K of index q containing H', and phi(gen) in Z/q for each generator."""
    derived = H.derived_mask()
    target = H.order // q
    for K in normal_subgroup_masks(H):
        if popcount(K) == target and K & derived == derived:
            break
    else:
        raise WitnessConstructionError(f"no quotient of order {q}")
    g = next(x for x in range(H.order) if not (K >> x) & 1)
    t = H.table
    # coset g^j K for j = 0..q-1
    coset_index = {}
    power = 0
    for j in range(q):
        for k in bits(K):
            coset_index[int(t[power, k])] = j
        power = int(t[power, g])
    return K, [coset_index[s] for s in H.generator_indices]


def semidirect_extension(H: FiniteGroup, p: int, d: int, q: int) -> FiniteGroup:
    """C_p^d : H, H acting on each C_p by x -> w^phi(h) x with w of order q mod p.

    New points are d blocks labelled by Z/p; H's generators act on them as
    multiplications, and each block carries the translation x -> x + 1.
    """
    _, phi = _prime_quotient(H, q)
    w = pow(least_primitive_root(p), (p - 1) // q, p)
    base = H.degree
    deg = base + p * d
    gens = []
    for h, e in zip(H.generators, phi):
        mult = pow(w, e, p)
        images = list(h.images)
        for b in range(d):
            off = base + b * p
            images.extend(off + (mult * x) % p for x in range(p))
        gens.append(Permutation(tuple(images)))
    for b in range(d):
        off = base + b * p
        gens.append(perm_from_cycles([tuple(range(off, off + p))], deg))
    return group_from_generators(gens, degree=deg)


@dataclass
class WitnessCertificate:
    steps: list[dict] = field(default_factory=list)
    k_max: int = 0
    probability_checks: list[dict] = field(default_factory=list)
    d_p_checks: dict[int, tuple[int, int]] = field(default_factory=dict)
    primes_G: list[int] = field(default_factory=list)
    primes_H: list[int] = field(default_factory=list)
    abelian_primes_G: list[int] = field(default_factory=list)
    abelian_primes_H: list[int] = field(default_factory=list)

    @property
    def probabilities_ok(self) -> bool:
        return all(c["ok"] for c in self.probability_checks)

    @property
    def d_p_ok(self) -> bool:
        return all(h <= g for g, h in self.d_p_checks.values())

    @property
    def primes_ok(self) -> bool:
        return self.primes_G == self.primes_H

    @property
    def abelianization_ok(self) -> bool:
        return set(self.abelian_primes_G) <= set(self.abelian_primes_H)

    @property
    def verified(self) -> bool:
        return self.probabilities_ok and self.d_p_ok and self.primes_ok and self.abelianization_ok

    def to_json(self) -> dict:
        return {
            "steps": self.steps,
            "k_max": self.k_max,
            "probability_checks": self.probability_checks,
            "d_p": {str(p): {"G": g, "H": h} for p, (g, h) in sorted(self.d_p_checks.items())},
            "pi_G": self.primes_G,
            "pi_H": self.primes_H,
            "pi_G_abelianization": self.abelian_primes_G,
            "pi_H_abelianization": self.abelian_primes_H,
            "checks": {"P_G>=P_H": self.probabilities_ok, "d_p(H)<=d_p(G)": self.d_p_ok,
                       "pi(H)=pi(G)": self.primes_ok,
                       "pi(G/G')<=pi(H/H')": self.abelianization_ok},
            "verified": self.verified,
        }


@dataclass
class Witness:
    group: FiniteGroup
    certificate: WitnessCertificate


def supersoluble_witness(G: FiniteGroup, k_max: int | None = None) -> Witness:
    if G.order == 1:
        raise ValueError("the trivial group needs no witness")
    if any(not f.abelian for f in chief_series(G).factors):
        raise NonSolubleInput("group is not soluble")
    stats = alpha_beta_stats(G)
    ab_G = abelianization_order(G)
    H: FiniteGroup | None = None
    cert = WitnessCertificate()
    for p in sorted(G.primes):
        dp = stats.d_p[p]
        if ab_G % p == 0 or stats.alpha(p, 1) == 0:
            block = elementary_abelian(p, dp)
            H = block if H is None else direct_product(H, block)
            cert.steps.append({"p": p, "d_p": dp, "case": 1})
            continue
        if H is None:
            raise WitnessConstructionError(f"no acting group available for p = {p}")
        ab_H = abelianization_order(H)
        qs = [q for q in prime_factors(ab_H) if (p - 1) % q == 0]
        if not qs:
            raise WitnessConstructionError(f"no prime quotient of H acts on C_{p}")
        q = qs[0]
        H = semidirect_extension(H, p, dp, q)
        cert.steps.append({"p": p, "d_p": dp, "case": 2, "q": q})

    d = stats.d
    cert.k_max = d + 6 if k_max is None else k_max
    for k in range(1, cert.k_max + 1):
        pg, ph = gaschutz_probability(G, k), gaschutz_probability(H, k)
        cert.probability_checks.append({"k": k, "P_G": fraction_str(pg), "P_H": fraction_str(ph),
                                        "ok": pg >= ph})
    for p in sorted(G.primes):
        cert.d_p_checks[p] = (stats.d_p[p], d_p(H, p))
    cert.primes_G = sorted(G.primes)
    cert.primes_H = sorted(H.primes)
    cert.abelian_primes_G = prime_factors(ab_G)
    cert.abelian_primes_H = prime_factors(abelianization_order(H))
    return Witness(H, cert)

