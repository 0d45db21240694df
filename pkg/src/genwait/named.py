"""Named groups and the group-spec mini-language.

Grammar::

    expr    := factor ("x" factor)*
    factor  := "S(n)" | "A(n)" | "C(n)" | "D(n)" | "Q8" | "H([p,...],d)"
             | "Gn(n)" | "gens[(c)(c),(c)]@deg" | "(" expr ")"

``D(n)`` is the dihedral group of order ``n``. ``x`` is the direct product
on disjoint point sets.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .perm import (FiniteGroup, Permutation, direct_product, group_from_generators,
                   is_prime, perm_from_cycles)


class GroupSpecError(ValueError):
    pass


def symmetric(n: int) -> FiniteGroup:
    if n <= 1:
        return group_from_generators([], degree=max(n, 1))
    gens = [perm_from_cycles([tuple(range(n))], n)]
    if n > 2:
        gens.append(perm_from_cycles([(0, 1)], n))
    return group_from_generators(gens)


def alternating(n: int) -> FiniteGroup:
    if n <= 2:
        return group_from_generators([], degree=max(n, 1))
    return group_from_generators([perm_from_cycles([(i, i + 1, i + 2)], n) for i in range(n - 2)])


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupSpecError("C(n) needs n >= 1")
    if n == 1:
        return group_from_generators([], degree=1)
    return group_from_generators([perm_from_cycles([tuple(range(n))], n)])


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given order (order 4 is the Klein group on 4 points)."""
    if order < 2 or order % 2:
        raise GroupSpecError("D(n) needs an even order n >= 2")
    m = order // 2
    if m == 1:
        return cyclic(2)
    if m == 2:
        return group_from_generators([perm_from_cycles([(0, 1)], 4),
                                      perm_from_cycles([(2, 3)], 4)])
    rot = perm_from_cycles([tuple(range(m))], m)
    ref = Permutation(tuple((-i) % m for i in range(m)))
    return group_from_generators([rot, ref])


def quaternion() -> FiniteGroup:
    """Q8 in its regular representation on 8 points."""
    # elements (sign, unit) with unit in 1, i, j, k; point = 4*(sign<0) + unit
    table = {  # unit product: (a, b) -> (sign, unit)
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def right_mult(unit: int) -> Permutation:
        images = []
        for pt in range(8):
            sgn, a = (-1 if pt >= 4 else 1), pt % 4
            s2, c = table[(a, unit)]
            images.append(c + (4 if sgn * s2 < 0 else 0))
        return Permutation(tuple(images))

    return group_from_generators([right_mult(1), right_mult(2)])


def h_group(primes: list[int], d: int) -> FiniteGroup:
    """((prod_{p odd} C_p^d) : C_2) x C_2^(d-1), the C_2 inverting every coordinate.

    Each C_p acts on its own p-point block; the inverting involution reflects
    every block (or is a transposition on two extra points when no odd prime
    is present). The C_2^(d-1) factor uses d-1 further point pairs.
    """
    ps = sorted(set(primes))
    if 2 not in ps:
        raise GroupSpecError("H(pi, d) needs 2 in pi")
    if any(not is_prime(p) for p in ps):
        raise GroupSpecError(f"non-prime entry in {ps}")
    if d < 1:
        raise GroupSpecError("H(pi, d) needs d >= 1")
    odd = [p for p in ps if p != 2]
    blocks = [(p, c) for p in odd for c in range(d)]
    degree = sum(p for p, _ in blocks)
    if not blocks:
        degree = 2
    degree += 2 * (d - 1)
    gens = []
    start = 0
    refl = list(range(degree))
    for p, _ in blocks:
        gens.append(perm_from_cycles([tuple(range(start, start + p))], degree))
        for i in range(p):
            refl[start + i] = start + (-i) % p
        start += p
    if not blocks:
        refl[0], refl[1] = 1, 0
        start = 2
    gens.append(Permutation(tuple(refl)))
    for _ in range(d - 1):
        gens.append(perm_from_cycles([(start, start + 1)], degree))
        start += 2
    return group_from_generators(gens)


def extremal_perm_group(n: int) -> FiniteGroup:
    """G_n: C_2^m for n = 2m, C_2^(m-1) x Sym(3) for n = 2m + 1."""
    if n < 2:
        raise GroupSpecError("Gn(n) needs n >= 2")
    m = n // 2
    pairs = m if n % 2 == 0 else m - 1
    gens = [perm_from_cycles([(2 * i, 2 * i + 1)], n) for i in range(pairs)]
    if n % 2:
        b = 2 * pairs
        gens += [perm_from_cycles([(b, b + 1, b + 2)], n), perm_from_cycles([(b, b + 1)], n)]
    return group_from_generators(gens)


_TOKEN = re.compile(r"\s*(?:(?P<name>S|A|C|D|Gn)\((?P<n>\d+)\)"
                    r"|(?P<q8>Q8)"
                    r"|H\(\[(?P<primes>[\d,\s]*)\]\s*,\s*(?P<d>\d+)\)"
                    r"|gens\[(?P<cycles>[^\]]*)\]@(?P<deg>\d+)"
                    r"|(?P<op>[x()]))")


def _parse_gens(text: str, degree: int) -> FiniteGroup:
    gens = []
    for chunk in re.findall(r"((?:\([^()]*\))+)", text):
        cycles = [tuple(int(v) for v in c.replace(",", " ").split())
                  for c in re.findall(r"\(([^()]*)\)", chunk)]
        gens.append(perm_from_cycles([c for c in cycles if c], degree))
    leftover = re.sub(r"((?:\([^()]*\))+)", "", text).replace(",", "").strip()
    if leftover:
        raise GroupSpecError(f"bad generator list: {text!r}")
    return group_from_generators(gens, degree=degree)


def _tokens(text: str):
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise GroupSpecError(f"cannot parse group spec at {text[pos:]!r}")
        pos = m.end()
        yield m
        while pos < len(text) and text[pos].isspace():
            pos += 1


def _atom(m) -> FiniteGroup:
    if m.group("name"):
        n = int(m.group("n"))
        return {"S": symmetric, "A": alternating, "C": cyclic, "D": dihedral,
                "Gn": extremal_perm_group}[m.group("name")](n)
    if m.group("q8"):
        return quaternion()
    if m.group("d") is not None:
        primes = [int(v) for v in m.group("primes").replace(" ", "").split(",") if v]
        return h_group(primes, int(m.group("d")))
    if m.group("deg") is not None:
        return _parse_gens(m.group("cycles"), int(m.group("deg")))
    raise GroupSpecError("unexpected token")


def parse_group(text: str) -> FiniteGroup:
    toks = list(_tokens(text))
    pos = 0

    def expr():
        nonlocal pos
        g = factor()
        while pos < len(toks) and toks[pos].group("op") == "x":
            pos += 1
            g = direct_product(g, factor())
        return g

    def factor():
        nonlocal pos
        if pos >= len(toks):
            raise GroupSpecError(f"unexpected end of spec {text!r}")
        t = toks[pos]
        pos += 1
        if t.group("op") == "(":
            g = expr()
            if pos >= len(toks) or toks[pos].group("op") != ")":
                raise GroupSpecError(f"unbalanced parentheses in {text!r}")
            pos += 1
            return g
        if t.group("op"):
            raise GroupSpecError(f"unexpected {t.group('op')!r} in {text!r}")
        return _atom(t)

    g = expr()
    if pos != len(toks):
        raise GroupSpecError(f"trailing input in {text!r}")
    return g


@dataclass(frozen=True)
class GroupSpec:
    text: str

    def build(self) -> FiniteGroup:
        return parse_group(self.text)


def standard_group(name: str) -> FiniteGroup:
    return parse_group(name)
