"""Special functions and prime sums used throughout the package.

Everything here is a pure function of its inputs: identical arguments give
bit-identical results, so the verification and optimization layers built on
top are reproducible.  Arithmetic is plain binary64; prime sums use Kahan
compensated summation in ascending order.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

__all__ = [
    "EvalOptions",
    "DEFAULT_OPTIONS",
    "PrimeTable",
    "MAX_SIEVE_LIMIT",
    "kahan_sum",
    "sieve",
    "zeta_real",
    "prime_zeta",
    "prime_recip_sum",
    "prime_log_weight_sum",
    "log_abs_gamma",
]

#: Hard cap on sieve size (~256 MB of flags); larger requests raise MemoryError.
MAX_SIEVE_LIMIT = 2**28


@dataclass(frozen=True)
class EvalOptions:
    """Numerical evaluation knobs.

    abs_tol / rel_tol are the accuracy targets promised by the evaluators;
    tail_cutoff is where infinite prime sums are truncated (the remainder is
    covered by an explicit tail bound).
    """

    abs_tol: float = 1e-13
    rel_tol: float = 1e-12
    tail_cutoff: int = 10**7

    def __post_init__(self) -> None:
        if not self.abs_tol > 0:
            raise ValueError(f"abs_tol must be positive, got {self.abs_tol}")
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.tail_cutoff < 10**4:
            raise ValueError(f"tail_cutoff must be >= 10^4, got {self.tail_cutoff}")


DEFAULT_OPTIONS = EvalOptions()


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """All primes up to ``limit``, ascending.  Immutable after construction."""

    limit: int
    primes: np.ndarray

    def __len__(self) -> int:
        return len(self.primes)


def kahan_sum(values: Iterable[float]) -> float:
    """Compensated (Kahan) summation in the iteration order given."""
    total = 0.0
    carry = 0.0
    for v in values:
        y = v - carry
        t = total + y
        carry = (t - total) - y
        total = t
    return total


def sieve(limit: int) -> PrimeTable:
    """Sieve of Eratosthenes up to ``limit`` inclusive."""
    if limit < 2:
        raise ValueError(f"sieve limit must be >= 2, got {limit}")
    if limit > MAX_SIEVE_LIMIT:
        raise MemoryError(
            f"sieve limit {limit} exceeds configured bound {MAX_SIEVE_LIMIT}"
        )
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    primes = np.nonzero(mask)[0].astype(np.int64)
    primes.setflags(write=False)
    return PrimeTable(limit=limit, primes=primes)


# --- Riemann zeta on the real ray s > 1 -----------------------------------

# B_{2j} for j = 1..10.
_BERNOULLI_EVEN = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
)
_EM_COEFFS = tuple(b / math.factorial(2 * j) for j, b in enumerate(_BERNOULLI_EVEN, 1))
_EM_DIRECT_TERMS = 50


@lru_cache(maxsize=65536)
def _zeta_euler_maclaurin(s: float) -> float:
    # zeta(s) = sum_{n<=N} n^-s + N^(1-s)/(s-1) - N^-s/2
    #           + sum_j B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^(-s-2j+1)
    N = _EM_DIRECT_TERMS
    acc = kahan_sum(float(n) ** -s for n in range(1, N + 1))
    total = acc + N ** (1.0 - s) / (s - 1.0) - 0.5 * N**-s
    rising = s  # s(s+1)...(s+2j-2) for the current j
    npow = float(N) ** (-s - 1.0)
    for j, coeff in enumerate(_EM_COEFFS, start=1):
        total += coeff * rising * npow
        rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j)
        npow /= float(N) * float(N)
    return total


def zeta_real(s: float, opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """Riemann zeta at real s > 1 via truncated series plus Euler-Maclaurin tail.

    Absolute error is below ``opts.abs_tol`` for s >= 1.1; closer to the pole
    the error is limited by binary64 (relative ~1e-16 of zeta(s) ~ 1/(s-1)).
    """
    if not s > 1.0:
        raise ValueError(f"zeta_real requires s > 1, got {s}")
    return _zeta_euler_maclaurin(float(s))


# --- prime zeta -------------------------------------------------------------


def _mobius_upto(n: int) -> list[int]:
    mu = [1] * (n + 1)
    primes: list[int] = []
    is_comp = [False] * (n + 1)
    for i in range(2, n + 1):
        if not is_comp[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            if i * p > n:
                break
            is_comp[i * p] = True
            if i % p == 0:
                mu[i * p] = 0
                break
            mu[i * p] = -mu[i]
    return mu


_MOBIUS_K_MAX = 256
_MOBIUS = _mobius_upto(_MOBIUS_K_MAX)


@lru_cache(maxsize=4096)
def _prime_zeta(s: float, abs_tol: float) -> float:
    # P(s) = sum_{k>=1} mu(k)/k * log zeta(ks); remaining tail after index k
    # is below 2^(1-(k+1)s) / ((k+1)(1-2^-s)), since log zeta(m) <= 2^(1-m).
    total = 0.0
    carry = 0.0
    geom = 1.0 / (1.0 - 2.0**-s)
    for k in range(1, _MOBIUS_K_MAX + 1):
        if _MOBIUS[k] != 0:
            term = _MOBIUS[k] / k * math.log(_zeta_euler_maclaurin(k * s))
            y = term - carry
            t = total + y
            carry = (t - total) - y
            total = t
        tail = 2.0 ** (1.0 - (k + 1) * s) / (k + 1) * geom
        if tail < 0.1 * abs_tol:
            return total
    raise RuntimeError(f"prime zeta truncation did not converge for s={s}")


def prime_zeta(s: float, opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """Prime zeta P(s) = sum over primes p of p^-s, for real s > 1.

    Computed by Moebius inversion of log zeta: P(s) = sum_k mu(k)/k log zeta(ks),
    truncated once the remaining tail is provably below ``opts.abs_tol``.
    """
    if not s > 1.0:
        raise ValueError(f"prime_zeta requires s > 1, got {s}")
    return _prime_zeta(float(s), opts.abs_tol)


# --- prime sums -------------------------------------------------------------


def prime_recip_sum(x: float, table: PrimeTable) -> float:
    """sum of 1/p over primes p <= x.  A step function of x, constant between
    consecutive primes."""
    if x < 2:
        raise ValueError(f"prime_recip_sum requires x >= 2, got {x}")
    if table.limit < x:
        raise ValueError(f"prime table limit {table.limit} is below x = {x}")
    cut = int(np.searchsorted(table.primes, math.floor(x), side="right"))
    return kahan_sum(1.0 / p for p in table.primes[:cut].tolist())


def prime_log_weight_sum(opts: EvalOptions = DEFAULT_OPTIONS) -> tuple[float, float]:
    """sum of (log p) / (p(p-1)) over primes p <= opts.tail_cutoff, plus a
    rigorous overestimate of the remainder.

    The tail over integers n > cutoff of (log n)/(n(n-1)) is bounded by
    int_c^inf (log u)/(u-1)^2 du = (log c)/(c-1) - log(1 - 1/c).

    Returns (value, tail_bound).
    """
    table = sieve(opts.tail_cutoff)
    pv = table.primes.astype(np.float64)
    terms = np.log(pv) / (pv * (pv - 1.0))
    value = kahan_sum(terms.tolist())
    c = float(opts.tail_cutoff)
    tail_bound = math.log(c) / (c - 1.0) - math.log1p(-1.0 / c)
    return value, tail_bound


# --- log |Gamma| ------------------------------------------------------------

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _log_gamma_right(z: complex) -> float:
    # Lanczos (g = 7, 9 coefficients); valid for Re z >= 0.5.
    w = z - 1.0
    x = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        x += c / (w + i)
    t = w + _LANCZOS_G + 0.5
    val = 0.5 * math.log(2.0 * math.pi) + (w + 0.5) * cmath.log(t) - t + cmath.log(x)
    return val.real


def _log_abs_sin_pi(sigma: float, t: float) -> float:
    # log |sin(pi(sigma + it))| = log hypot(sin(pi sigma), sinh(pi t)),
    # switched to the asymptotic form for large |t| to avoid sinh overflow;
    # hypot keeps tiny arguments out of squaring underflow.
    a = math.pi * abs(t)
    if a > 20.0:
        return a - math.log(2.0)
    return math.log(math.hypot(math.sin(math.pi * sigma), math.sinh(math.pi * t)))


def log_abs_gamma(sigma: float, t: float) -> float:
    """log |Gamma(sigma + i t)| with absolute error <= 1e-10.

    Lanczos approximation for sigma >= 1/2; the reflection formula
    log|Gamma(z)| = log pi - log|sin(pi z)| - log|Gamma(1-z)| otherwise.
    Raises at the poles (sigma a nonpositive integer, t = 0).
    """
    if t == 0.0 and sigma <= 0.0 and sigma == math.floor(sigma):
        raise ValueError(f"Gamma pole at sigma = {sigma}")
    if sigma >= 0.5:
        return _log_gamma_right(complex(sigma, t))
    return (
        math.log(math.pi)
        - _log_abs_sin_pi(sigma, t)
        - _log_gamma_right(complex(1.0 - sigma, -t))
    )
