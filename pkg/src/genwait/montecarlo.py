"""Simulation of the waiting time tau_G.

Random elements come from a counter-based generator: trial t under seed s
has key mix64(s + (t+1) * 0xD1B54A32D192ED03), and its i-th 64-bit word
(i = 1, 2, ...) is mix64(key + i * 0x9E3779B97F4A7C15), where mix64 is the
splitmix64 finalizer. A word w gives the element index w mod |G| unless
w < 2^64 mod |G|, in which case it is rejected. Trials are independent
streams, so any batching of trials gives identical results.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from ._kernels_py import GOLDEN, MASK64, STREAM, mix64
from .perm import FiniteGroup
from .waiting import TrivialGroupError, gen_probability, minimal_generator_count

DEFAULT_CHUNK = 1 << 14


class CounterRNG:
    """Uniform element indices for one trial of the documented stream."""

    def __init__(self, seed: int, trial: int = 0):
        if not 0 <= seed <= MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.key = mix64(seed + (trial + 1) * STREAM)
        self.counter = 0

    def next_word(self) -> int:
        self.counter += 1
        return mix64(self.key + self.counter * GOLDEN)

    def below(self, n: int) -> int:
        threshold = ((1 << 64) - n) % n
        while True:
            w = self.next_word()
            if w >= threshold:
                return w % n


def sample_tau(G: FiniteGroup, rng: CounterRNG) -> int:
    """Draw elements until they generate G, extending the closure each time."""
    if G.order == 1:
        raise TrivialGroupError("tau is undefined for the trivial group")
    full = G.full_mask
    current = 1
    gens: list[int] = []
    draws = 0
    while current != full:
        x = rng.below(G.order)
        draws += 1
        if (current >> x) & 1:
            continue
        gens.append(x)
        current = G.closure(gens, current)
    return draws


@dataclass
class SimulationResult:
    trials: int
    seed: int
    total: int
    total_sq: int
    histogram: dict[int, int] = field(default_factory=dict)

    @property
    def mean(self) -> Fraction:
        return Fraction(self.total, self.trials)

    @property
    def std_error(self) -> float:
        if self.trials < 2:
            return math.inf
        n = self.trials
        var = (Fraction(self.total_sq) - Fraction(self.total) ** 2 / n) / (n - 1)
        return math.sqrt(var / n)

    def survival(self, k: int) -> Fraction:
        """Empirical P(tau > k)."""
        return Fraction(sum(c for t, c in self.histogram.items() if t > k), self.trials)

    def to_json(self) -> dict:
        return {"trials": self.trials, "seed": self.seed, "mean": f"{float(self.mean):.6f}",
                "std_error": f"{self.std_error:.6f}",
                "histogram": {str(k): v for k, v in sorted(self.histogram.items())}}


def estimate_e(G: FiniteGroup, trials: int, seed: int, chunk: int = DEFAULT_CHUNK) -> SimulationResult:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if G.order == 1:
        raise TrivialGroupError("tau is undefined for the trivial group")
    if not 0 <= seed <= MASK64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    table = G.table
    hist: Counter[int] = Counter()
    for start in range(0, trials, chunk):
        taus = kernels.sample_tau_batch(table, min(chunk, trials - start), seed, start)
        hist.update(int(t) for t in taus)
    total = sum(t * c for t, c in hist.items())
    total_sq = sum(t * t * c for t, c in hist.items())
    return SimulationResult(trials, seed, total, total_sq, dict(sorted(hist.items())))


@dataclass
class SurvivalCheck:
    k: int
    empirical: Fraction
    exact: Fraction
    band: float

    @property
    def ok(self) -> bool:
        return abs(float(self.empirical - self.exact)) <= self.band


def survival_checks(G: FiniteGroup, result: SimulationResult, k_max: int = 6,
                    sigmas: float = 4.0) -> list[SurvivalCheck]:
    """Compare P(tau > k) with 1 - P_G(k) inside binomial sigma bands."""
    out = []
    for k in range(k_max + 1):
        exact = 1 - gen_probability(G, None, k)
        p = float(exact)
        band = sigmas * math.sqrt(p * (1 - p) / result.trials)
        out.append(SurvivalCheck(k, result.survival(k), exact, band))
    return out


def minimum_respected(G: FiniteGroup, result: SimulationResult) -> bool:
    return min(result.histogram) >= minimal_generator_count(G)
