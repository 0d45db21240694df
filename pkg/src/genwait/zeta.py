"""Certified real numbers and a table of zeta values.

All real computations run in mpmath interval arithmetic on a private
context, so every reported digit comes with a rigorous enclosure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, ROUND_CEILING, ROUND_HALF_EVEN, localcontext
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath.ctx_iv import MPIntervalContext

MAX_DIGITS = 40
WORK_DIGITS = 2 * MAX_DIGITS + 10
_DEC_PREC = 200


class PrecisionError(ValueError):
    pass


def interval_context(dps: int = WORK_DIGITS) -> MPIntervalContext:
    ctx = MPIntervalContext()
    ctx.dps = dps
    return ctx


def _raw_to_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    if not man:
        if exp:  # inf / nan encodings have a zero mantissa and nonzero exponent
            raise PrecisionError("non-finite interval endpoint")
        return Fraction(0)
    value = Fraction(int(man)) * (Fraction(2) ** exp)
    return -value if sign else value


def endpoints(x) -> tuple[Fraction, Fraction]:
    """Exact rational endpoints of an mpmath interval."""
    lo, hi = x._mpi_
    return _raw_to_fraction(lo), _raw_to_fraction(hi)


@dataclass(frozen=True)
class ErrorBoundedReal:
    """value ± abs_error, the true quantity lying in the closed interval."""

    value: Decimal
    abs_error: Decimal
    digits: int | None = None

    def __post_init__(self):
        if self.abs_error < 0:
            raise ValueError("abs_error must be nonnegative")

    @classmethod
    def exact(cls, x) -> ErrorBoundedReal:
        return cls(Decimal(x), Decimal(0))

    @classmethod
    def from_enclosure(cls, lo: Fraction, hi: Fraction, digits: int) -> ErrorBoundedReal:
        """Round [lo, hi] outward onto the grid 10^-(digits+1).

        A coarser grid always contains a finer-grid enclosure, so results at
        increasing precision are nested.
        """
        if lo > hi:
            raise ValueError("empty enclosure")
        g = digits + 1
        scale = 10 ** g
        L = math.floor(lo * scale)
        H = math.ceil(hi * scale)
        with localcontext() as ctx:
            ctx.prec = _DEC_PREC
            value = Decimal(L + H) / 2 / scale
            err = Decimal(H - L) / 2 / scale
        return cls(value, err, digits)

    @property
    def lower(self) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = _DEC_PREC
            return self.value - self.abs_error

    @property
    def upper(self) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = _DEC_PREC
            return self.value + self.abs_error

    def contains(self, x) -> bool:
        x = Fraction(x) if not isinstance(x, Decimal) else Fraction(x)
        return Fraction(self.lower) <= x <= Fraction(self.upper)

    def encloses(self, other: ErrorBoundedReal) -> bool:
        return self.lower <= other.lower and other.upper <= self.upper

    def _combine(self, value: Decimal, err: Decimal) -> ErrorBoundedReal:
        # pad by one unit in the last place of the working precision
        slack = abs(value).scaleb(1 - _DEC_PREC) if value else Decimal(0)
        return ErrorBoundedReal(value, err + slack)

    def __add__(self, other) -> ErrorBoundedReal:
        other = _lift(other)
        with localcontext() as ctx:
            ctx.prec = _DEC_PREC
            ctx.rounding = ROUND_CEILING
            err = self.abs_error + other.abs_error
            ctx.rounding = ROUND_HALF_EVEN
            return self._combine(self.value + other.value, err)

    __radd__ = __add__

    def __neg__(self) -> ErrorBoundedReal:
        return ErrorBoundedReal(-self.value, self.abs_error, self.digits)

    def __sub__(self, other) -> ErrorBoundedReal:
        return self + (-_lift(other))

    def __rsub__(self, other) -> ErrorBoundedReal:
        return _lift(other) - self

    def __mul__(self, other) -> ErrorBoundedReal:
        other = _lift(other)
        with localcontext() as ctx:
            ctx.prec = _DEC_PREC
            ctx.rounding = ROUND_CEILING
            err = (abs(self.value) * other.abs_error + abs(other.value) * self.abs_error
                   + self.abs_error * other.abs_error)
            ctx.rounding = ROUND_HALF_EVEN
            return self._combine(self.value * other.value, err)

    __rmul__ = __mul__

    def rounded(self, digits: int | None = None) -> tuple[Decimal, Decimal]:
        """(value rounded to `digits` places, bound widened to cover the rounding)."""
        digits = self.digits if digits is None else digits
        if digits is None:
            return self.value, self.abs_error
        with localcontext() as ctx:
            ctx.prec = _DEC_PREC
            r = self.value.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN)
            bound = self.abs_error + abs(self.value - r)
        return r, bound

    def __str__(self) -> str:
        r, bound = self.rounded()
        return f"{r}±{_format_bound(bound)}"

    def to_json(self) -> dict:
        r, bound = self.rounded()
        return {"value": str(r), "bound": _format_bound(bound),
                "exact_value": str(self.value), "abs_error": _format_bound(self.abs_error)}


def _lift(x) -> ErrorBoundedReal:
    if isinstance(x, ErrorBoundedReal):
        return x
    if isinstance(x, Fraction):
        with localcontext() as ctx:
            ctx.prec = _DEC_PREC
            v = Decimal(x.numerator) / Decimal(x.denominator)
            err = Decimal(0) if Fraction(v) == x else abs(v).scaleb(1 - _DEC_PREC)
        return ErrorBoundedReal(v, err)
    return ErrorBoundedReal.exact(x)


def _format_bound(b: Decimal) -> str:
    """Round a bound up to one significant digit, as in 5e-9."""
    if b == 0:
        return "0"
    e = b.adjusted()
    lead = math.ceil(Fraction(b) / Fraction(10) ** e)
    if lead == 10:
        lead, e = 1, e + 1
    return f"{lead}e{e}"


# -- zeta ---------------------------------------------------------------------

def zeta_euler_maclaurin(ctx: MPIntervalContext, n: int, cutoff: int | None = None):
    """Interval enclosure of zeta(n), n >= 2.

    sum_{k<N} k^-n + N^(1-n)/(n-1) + N^-n/2 + sum_j B_2j/(2j)! (n)_{2j-1} N^(1-n-2j),
    with the remainder bounded by the first omitted term.
    """
    if n < 2:
        raise ValueError("zeta(n) needs n >= 2")
    # the correction terms shrink down to about exp(-2 pi N) before diverging
    N = max(20, ctx.dps // 2 + 10) if cutoff is None else cutoff
    s = ctx.mpf(n)
    total = ctx.mpf(0)
    for k in range(1, N):
        total += ctx.mpf(1) / ctx.mpf(k) ** n
    Nm = ctx.mpf(N)
    total += Nm ** (1 - n) / (n - 1) + Nm ** (-n) / 2
    eps = Fraction(1, 2 ** (ctx.prec + 8))
    rising = s  # (n)_{2j-1}
    j = 1
    prev = None
    while True:
        num, den = mpmath.bernfrac(2 * j)
        term = ctx.mpf(int(num)) / (ctx.mpf(int(den)) * ctx.mpf(math.factorial(2 * j))) \
            * rising * Nm ** (1 - n - 2 * j)
        mag = endpoints(abs(term))[1]
        if mag < eps:
            # stop before adding: this term bounds the remainder
            total += ctx.mpf([-mag.numerator, mag.numerator]) / mag.denominator
            return total
        if prev is not None and mag > prev:
            raise PrecisionError(f"zeta({n}): cutoff {N} too small for {ctx.dps} digits")
        prev = mag
        total += term
        rising = rising * (s + 2 * j - 1) * (s + 2 * j)
        j += 1


def zeta_direct(n: int, terms: int) -> tuple[Fraction, Fraction]:
    """sum_{k<=M} k^-n plus the integral tail in [(M+1)^(1-n), M^(1-n)]/(n-1)."""
    if n < 2 or terms < 1:
        raise ValueError("zeta_direct needs n >= 2 and terms >= 1")
    s = sum(Fraction(1, k ** n) for k in range(1, terms + 1))
    return (s + Fraction(1, (terms + 1) ** (n - 1) * (n - 1)),
            s + Fraction(1, terms ** (n - 1) * (n - 1)))


def _primes_upto(P: int) -> list[int]:
    sieve = bytearray([1]) * (P + 1)
    sieve[:2] = b"\x00\x00"
    for i in range(2, int(P ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i in range(P + 1) if sieve[i]]


def zeta_euler(n: int, prime_cutoff: int) -> tuple[Fraction, Fraction]:
    """prod_{p<=P} (1-p^-n)^-1 times a tail factor in [1, 1 + P^(1-n)/(n-1)]."""
    if n < 2 or prime_cutoff < 2:
        raise ValueError("zeta_euler needs n >= 2 and a cutoff >= 2")
    prod = Fraction(1)
    for p in _primes_upto(prime_cutoff):
        prod /= 1 - Fraction(1, p ** n)
    # prod_{p>P} (1-p^-n) >= 1 - sum_{m>P} m^-n >= 1 - P^(1-n)/(n-1)
    t = Fraction(1, prime_cutoff ** (n - 1) * (n - 1))
    return prod, prod / (1 - t)


class ZetaTable:
    """zeta(n) for 2 <= n <= N, with products used by the constant series."""

    def __init__(self, N: int | None = None, dps: int = WORK_DIGITS):
        self.ctx = interval_context(dps)
        # tail of prod zeta(n)^-1 past N is within exp(-2^(1-N)) of 1
        self.N = N if N is not None else int(dps * 3.33) + 20
        if self.N < 3:
            raise ValueError("ZetaTable needs N >= 3")
        ctx = self.ctx
        self._z = [None, None] + [zeta_euler_maclaurin(ctx, n) for n in range(2, self.N + 1)]
        self._inv = [None, None] + [ctx.mpf(1) / z for z in self._z[2:]]
        # suffix[j] = prod_{j < n <= N} zeta(n)^-1
        suffix = [ctx.mpf(1)] * (self.N + 1)
        for j in range(self.N - 1, 0, -1):
            suffix[j] = suffix[j + 1] * self._inv[j + 1]
        self._suffix = suffix
        self._tail = ctx.mpf([ctx.exp(-(ctx.mpf(2) ** (1 - self.N))).a, 1])

    def zeta_interval(self, n: int):
        if not 2 <= n <= self.N:
            raise ValueError(f"zeta({n}) outside table range 2..{self.N}")
        return self._z[n]

    def zeta(self, n: int, digits: int = 30) -> ErrorBoundedReal:
        return ErrorBoundedReal.from_enclosure(*endpoints(self.zeta_interval(n)), digits)

    def inv_zeta(self, n: int):
        return self._inv[n]

    def inv_zeta_tail(self, j: int):
        """prod_{n > j} zeta(n)^-1 as an interval (j >= 1)."""
        if not 1 <= j < self.N:
            raise ValueError(f"tail product from {j} outside table")
        return self._suffix[j] * self._tail

    def inv_zeta_range(self, j: int, d: int):
        """prod_{j < n <= j+d} zeta(n)^-1."""
        if j + d > self.N:
            raise ValueError("range exceeds table")
        out = self.ctx.mpf(1)
        for n in range(j + 1, j + d + 1):
            out = out * self._inv[n]
        return out

    def c_interval(self):
        return self.inv_zeta_tail(1)

    def b_interval(self):
        """prod_{n>=1} (1-2^-n)^-1."""
        ctx = self.ctx
        p = ctx.mpf(1)
        for n in range(1, self.N + 1):
            p = p * (1 - ctx.mpf(2) ** (-n))
        # prod_{n>N} (1-2^-n) lies in [1 - 2^-N, 1]
        p = p * ctx.mpf([(1 - ctx.mpf(2) ** (-self.N)).a, 1])
        return 1 / p

    def c(self, digits: int = 30) -> ErrorBoundedReal:
        return ErrorBoundedReal.from_enclosure(*endpoints(self.c_interval()), digits)

    def b(self, digits: int = 30) -> ErrorBoundedReal:
        return ErrorBoundedReal.from_enclosure(*endpoints(self.b_interval()), digits)


@lru_cache(maxsize=None)
def shared_zeta_table() -> ZetaTable:
    return ZetaTable()
