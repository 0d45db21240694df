"""Exact and certified series for the extremal model groups.

Exact rationals: e(H_{pi,d}) and e(G_n) from their product formulas.
Certified reals: e_d - d, kappa, kappa_tilde and the omega family, each a
sum over j of 1 - (product) whose tail past j = J is bounded in closed form.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .perm import is_prime
from .waiting import DirichletPolynomial, expected_wait_from_dirichlet
from .zeta import MAX_DIGITS, ErrorBoundedReal, PrecisionError, endpoints, shared_zeta_table

FERMAT_PRIMES = (3, 5, 17, 257, 65537)
# bound for unsoluble groups: e(G) <= d + 2.7501
KAPPA_UNSOLUBLE_BOUND = Fraction(27501, 10000)
# earlier constants from the literature, kept for annotation only
PRIOR_ETA = "2.875065"
PRIOR_SIGMA = "2.11846"


def C_poly(p: int, alpha: int, k: int) -> Fraction:
    """prod_{0 <= i < alpha} (1 - p^i / p^k)."""
    out = Fraction(1)
    for i in range(alpha):
        out *= 1 - Fraction(p) ** (i - k)
    return out


def D_poly(p: int, alpha: int, k: int) -> Fraction:
    """prod_{1 <= i <= alpha} (1 - p^i / p^k)."""
    out = Fraction(1)
    for i in range(1, alpha + 1):
        out *= 1 - Fraction(p) ** (i - k)
    return out


def _factor(p: int, i: int) -> DirichletPolynomial:
    # 1 - p^i p^-k
    return DirichletPolynomial({1: 1, p: -Fraction(p) ** i})


def C_dirichlet(p: int, alpha: int) -> DirichletPolynomial:
    out = DirichletPolynomial.one()
    for i in range(alpha):
        out = out * _factor(p, i)
    return out


def D_dirichlet(p: int, alpha: int) -> DirichletPolynomial:
    out = DirichletPolynomial.one()
    for i in range(1, alpha + 1):
        out = out * _factor(p, i)
    return out


def e_H_exact(primes, d: int) -> Fraction:
    """e(H_{pi,d}) with P(k) = C_{2,d}(k) prod_{p odd} D_{p,d}(k)."""
    ps = sorted(set(primes))
    if 2 not in ps:
        raise ValueError("the prime set must contain 2")
    if any(not is_prime(p) for p in ps):
        raise ValueError(f"non-prime in {ps}")
    if d < 1:
        raise ValueError("d must be >= 1")
    P = C_dirichlet(2, d)
    for p in ps:
        if p != 2:
            P = P * D_dirichlet(p, d)
    return expected_wait_from_dirichlet(P)


def perm_extremal_e(n: int) -> Fraction:
    """e(G_n) from prod_{0<=i<m} (1 - 2^i/2^k) (1 - 3/3^k)^eta, m = n//2, eta = n%2."""
    if n < 2:
        raise ValueError("n must be >= 2")
    P = C_dirichlet(2, n // 2)
    if n % 2:
        P = P * _factor(3, 1)
    return expected_wait_from_dirichlet(P)


def lambda_star_product() -> Fraction:
    """prod p^2/(p^2 - 1) over the known Fermat primes."""
    out = Fraction(1)
    for p in FERMAT_PRIMES:
        out *= Fraction(p * p, p * p - 1)
    return out


# -- certified constants ------------------------------------------------------

def _check_digits(digits: int) -> None:
    if not 1 <= digits <= MAX_DIGITS:
        raise PrecisionError(f"target digits must be in 1..{MAX_DIGITS}")


def _certify(enclosure: tuple[Fraction, Fraction], digits: int) -> ErrorBoundedReal:
    _check_digits(digits)
    lo, hi = enclosure
    if hi - lo > Fraction(1, 10 ** (digits + 2)):
        raise PrecisionError(f"enclosure too wide for {digits} digits")
    return ErrorBoundedReal.from_enclosure(lo, hi, digits)


def _default_terms(extra: int = 0) -> int:
    return shared_zeta_table().N - 1 - extra


def _finish(ctx, total, tail_lo: Fraction, tail_hi: Fraction) -> tuple[Fraction, Fraction]:
    lo, hi = endpoints(total)
    return lo + tail_lo, hi + tail_hi


def kappa_enclosure(terms: int | None = None) -> tuple[Fraction, Fraction]:
    """kappa = 2 + sum_{j>=1} (1 - (1 + 1/(2^{j+1}-1)) prod_{n>j} zeta(n)^-1).

    For j >= 2 each term lies in [-2^-j, 2^(1-j)].
    """
    T = shared_zeta_table()
    ctx = T.ctx
    J = _default_terms() if terms is None else terms
    if not 1 <= J < T.N:
        raise ValueError(f"terms must be in 1..{T.N - 1}")
    total = ctx.mpf(2)
    for j in range(1, J + 1):
        f = 1 + ctx.mpf(1) / (ctx.mpf(2) ** (j + 1) - 1)
        total += 1 - f * T.inv_zeta_tail(j)
    return _finish(ctx, total, -Fraction(1, 2 ** J), Fraction(2, 2 ** J))


def e_d_minus_d_enclosure(d: int, terms: int | None = None) -> tuple[Fraction, Fraction]:
    """2 + sum_{j>=1} (1 - (2^{j+1} - 2^-d)/(2^{j+1} - 1) prod_{j<n<=j+d} zeta(n)^-1)."""
    T = shared_zeta_table()
    ctx = T.ctx
    if d < 1:
        raise ValueError("d must be >= 1")
    J = _default_terms(d) if terms is None else terms
    if not 1 <= J <= T.N - d:
        raise PrecisionError(f"d = {d} too large for the zeta table")
    total = ctx.mpf(2)
    two_d = ctx.mpf(2) ** (-d)
    for j in range(1, J + 1):
        q = ctx.mpf(2) ** (j + 1)
        total += 1 - (q - two_d) / (q - 1) * T.inv_zeta_range(j, d)
    return _finish(ctx, total, -Fraction(1, 2 ** J), Fraction(2, 2 ** J))


def _two_power_suffix(ctx, N: int) -> list:
    """s[j] = prod_{n>j} (1 - 2^-n), with the tail past N enclosed in [1 - 2^-N, 1]."""
    tail = ctx.mpf([(1 - ctx.mpf(2) ** (-N)).a, 1])
    s = [None] * (N + 1)
    s[N] = tail
    for j in range(N - 1, -1, -1):
        s[j] = s[j + 1] * (1 - ctx.mpf(2) ** (-(j + 1)))
    return s


def kappa_tilde_enclosure(terms: int | None = None) -> tuple[Fraction, Fraction]:
    """2 + sum_{j>=1} (1 - A_j B_j C_j) with
    A_j = prod_{n>j} (1-2^-n)^-1, B_j = prod_{p Fermat} (1 + 1/(p^{j+1}-1)),
    C_j = prod_{n>j} zeta(n)^-1.  Terms for j >= 2 lie in [-2^(2-j), 2^(1-j)].
    """
    T = shared_zeta_table()
    ctx = T.ctx
    J = _default_terms() if terms is None else terms
    if not 1 <= J < T.N:
        raise ValueError(f"terms must be in 1..{T.N - 1}")
    s2 = _two_power_suffix(ctx, T.N)
    total = ctx.mpf(2)
    for j in range(1, J + 1):
        B = ctx.mpf(1)
        for p in FERMAT_PRIMES:
            B *= 1 + ctx.mpf(1) / (ctx.mpf(p) ** (j + 1) - 1)
        total += 1 - B / s2[j] * T.inv_zeta_tail(j)
    return _finish(ctx, total, -Fraction(8, 2 ** J), Fraction(2, 2 ** J))


def kappa_tilde_d_enclosure(d: int, terms: int | None = None) -> tuple[Fraction, Fraction]:
    """Finite-d analogue of kappa_tilde: products over j < n <= j+d and the
    Fermat factor (1 - p^(-j-d-1)) / (1 - p^(-j-1)).
    """
    T = shared_zeta_table()
    ctx = T.ctx
    if d < 1:
        raise ValueError("d must be >= 1")
    J = _default_terms(d) if terms is None else terms
    if not 1 <= J <= T.N - d:
        raise PrecisionError(f"d = {d} too large for the zeta table")
    total = ctx.mpf(2)
    for j in range(1, J + 1):
        A = ctx.mpf(1)
        for n in range(j + 1, j + d + 1):
            A *= 1 - ctx.mpf(2) ** (-n)
        B = ctx.mpf(1)
        for p in FERMAT_PRIMES:
            pp = ctx.mpf(p)
            B *= (1 - pp ** (-j - d - 1)) / (1 - pp ** (-j - 1))
        total += 1 - B / A * T.inv_zeta_range(j, d)
    return _finish(ctx, total, -Fraction(8, 2 ** J), Fraction(2, 2 ** J))


def omega_enclosure(m: int, eta: int, terms: int | None = None) -> tuple[Fraction, Fraction]:
    """sum_{j>=0} (1 - prod_{1<=l<=m} (1 - 2^-(j+l)) (1 - 3^(1-j-m))^eta).

    Each term lies in [0, 2^-j + eta 3^(1-j-m)].
    """
    if m < 1 or eta not in (0, 1):
        raise ValueError("need m >= 1 and eta in {0, 1}")
    T = shared_zeta_table()
    ctx = T.ctx
    J = _default_terms() if terms is None else terms
    total = ctx.mpf(0)
    for j in range(J):
        prod = ctx.mpf(1)
        for l in range(1, m + 1):
            prod *= 1 - ctx.mpf(2) ** (-(j + l))
        if eta:
            prod *= 1 - ctx.mpf(3) ** (1 - j - m)
        total += 1 - prod
    tail = Fraction(2, 2 ** J) + eta * Fraction(3, 2) * Fraction(1, 3) ** (J + m - 1)
    return _finish(ctx, total, Fraction(0), tail)


def omega_limit_enclosure(terms: int | None = None) -> tuple[Fraction, Fraction]:
    """sum_{j>=0} (1 - prod_{n>j} (1 - 2^-n)); terms lie in [0, 2^-j]."""
    T = shared_zeta_table()
    ctx = T.ctx
    J = _default_terms() if terms is None else terms
    s2 = _two_power_suffix(ctx, T.N)
    total = ctx.mpf(0)
    for j in range(J):
        total += 1 - s2[j]
    return _finish(ctx, total, Fraction(0), Fraction(2, 2 ** J))


_cached = lru_cache(maxsize=None)


@_cached
def _kappa() -> tuple[Fraction, Fraction]:
    return kappa_enclosure()


@_cached
def _kappa_tilde() -> tuple[Fraction, Fraction]:
    return kappa_tilde_enclosure()


@_cached
def _e_d(d: int) -> tuple[Fraction, Fraction]:
    return e_d_minus_d_enclosure(d)


@_cached
def _kappa_tilde_d(d: int) -> tuple[Fraction, Fraction]:
    return kappa_tilde_d_enclosure(d)


@_cached
def _omega(m: int, eta: int) -> tuple[Fraction, Fraction]:
    return omega_enclosure(m, eta)


@_cached
def _omega_limit() -> tuple[Fraction, Fraction]:
    return omega_limit_enclosure()


def kappa(target_digits: int) -> ErrorBoundedReal:
    return _certify(_kappa(), target_digits)


def kappa_tilde(target_digits: int) -> ErrorBoundedReal:
    return _certify(_kappa_tilde(), target_digits)


def kappa_tilde_d(d: int, target_digits: int) -> ErrorBoundedReal:
    return _certify(_kappa_tilde_d(d), target_digits)


def e_d_minus_d(d: int, target_digits: int) -> ErrorBoundedReal:
    return _certify(_e_d(d), target_digits)


def omega(m: int, eta: int, target_digits: int) -> ErrorBoundedReal:
    return _certify(_omega(m, eta), target_digits)


def omega_limit(target_digits: int) -> ErrorBoundedReal:
    return _certify(_omega_limit(), target_digits)


def kappa_perm(target_digits: int) -> ErrorBoundedReal:
    """The constant in e(G) <= floor(n/2) + kappa_perm for G <= Sym(n), G != Sym(3)."""
    return omega_limit(target_digits)


def zeta_constant_c(target_digits: int) -> ErrorBoundedReal:
    _check_digits(target_digits)
    return shared_zeta_table().c(target_digits)


def two_power_constant_b(target_digits: int) -> ErrorBoundedReal:
    _check_digits(target_digits)
    return shared_zeta_table().b(target_digits)


CONSTANTS = {
    "kappa": kappa,
    "kappa_tilde": kappa_tilde,
    "omega_limit": omega_limit,
    "kappa_perm": kappa_perm,
    "b": two_power_constant_b,
    "c": zeta_constant_c,
}
