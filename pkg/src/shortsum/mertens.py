"""RH-conditional Mertens envelope and its machine verification.

The envelope

    m(x) = (3 log x + 4) / (8 pi sqrt(x)) + 5 / x^2

bounds |sum_{p<=x} 1/p - log log x - M| on x >= 1.048 (M the Meissel-Mertens
constant).  Above 13.5 this is classical; the window [1.048, 13.5] is checked
here by direct computation, exploiting that the prime sum is a step function:
between consecutive primes the defect is monotone, so its extremes over the
window occur at the primes themselves (left and right limits) and at the
window endpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .specfun import PrimeTable, kahan_sum, sieve

__all__ = [
    "MEISSEL_MERTENS",
    "MertensEnvelope",
    "VerificationReport",
    "default_envelope",
    "m_envelope",
    "m_envelope_from_log",
    "mertens_defect",
    "prime_clearance",
    "verify_lemma_window",
    "window_profile",
]

MEISSEL_MERTENS = 0.261497212847642783755

#: Default verification window; below it the envelope eventually fails, above
#: 13.5 the classical estimate takes over.
WINDOW_LO = 1.048
WINDOW_HI = 13.5


@dataclass(frozen=True, eq=False)
class MertensEnvelope:
    """Envelope context: the stored constant M plus a prime table covering the
    verification window."""

    meissel_mertens: float = MEISSEL_MERTENS
    table: PrimeTable = field(default_factory=lambda: sieve(16))


def default_envelope(limit: int = 16) -> MertensEnvelope:
    """Envelope with a prime table up to ``limit`` (must be >= 14 to cover the
    default window)."""
    return MertensEnvelope(table=sieve(limit))


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking an inequality over a window.

    ``worst_margin`` is the minimum over checked points of (bound - |quantity|);
    the check passed iff it is strictly positive.  ``witness`` is the point
    attaining the worst margin (for two-dimensional checks, its first
    coordinate).
    """

    window: tuple[float, float]
    passed: bool
    worst_margin: float
    witness: float
    points_checked: int


def m_envelope(x: float) -> float:
    """m(x) = (3 log x + 4)/(8 pi sqrt(x)) + 5/x^2, for x >= 1."""
    if x < 1.0:
        raise ValueError(f"m_envelope requires x >= 1, got {x}")
    return (3.0 * math.log(x) + 4.0) / (8.0 * math.pi * math.sqrt(x)) + 5.0 / (x * x)


def m_envelope_from_log(log_x: float) -> float:
    """m(x) evaluated from log x; safe when x itself would overflow."""
    if log_x < 0.0:
        raise ValueError(f"m_envelope_from_log requires log x >= 0, got {log_x}")
    return (3.0 * log_x + 4.0) / (8.0 * math.pi) * math.exp(-0.5 * log_x) + 5.0 * math.exp(
        -2.0 * log_x
    )


def mertens_defect(x: float, env: MertensEnvelope) -> float:
    """sum_{p<=x} 1/p - log log x - M."""
    if x < 2.0:
        raise ValueError(f"mertens_defect requires x >= 2, got {x}")
    if env.table.limit < x:
        raise ValueError(f"prime table limit {env.table.limit} is below x = {x}")
    cut = int((env.table.primes <= x).sum())
    recip = kahan_sum(1.0 / p for p in env.table.primes[:cut].tolist())
    return recip - math.log(math.log(x)) - env.meissel_mertens


def _defect_with_sum(x: float, recip_sum: float, m_const: float) -> float:
    # Defect with an explicitly supplied prime-reciprocal sum; lets the window
    # verifier evaluate left limits (sum excluding the prime at x) and the
    # empty-sum region 1 < x < 2.
    if x <= 1.0:
        return math.inf
    return recip_sum - math.log(math.log(x)) - m_const


def _window_points(
    lo: float, hi: float, env: MertensEnvelope
) -> list[tuple[float, float]]:
    # Points (x, defect) where |defect| can peak: window endpoints plus, at
    # each prime p in the window, the right limit (sum includes p) and the
    # left limit (sum excludes p).
    m_const = env.meissel_mertens
    primes = [int(p) for p in env.table.primes.tolist() if lo <= p <= hi]
    points: list[tuple[float, float]] = []

    running = 0.0
    carry = 0.0
    sums: dict[int, tuple[float, float]] = {}  # p -> (sum excluding p, sum including p)
    for p in env.table.primes.tolist():
        if p > hi:
            break
        before = running
        y = 1.0 / p - carry
        t = running + y
        carry = (t - running) - y
        running = t
        sums[int(p)] = (before, running)

    def sum_upto(x: float) -> float:
        acc = 0.0
        for p in sums:
            if p <= x:
                acc = sums[p][1]
        return acc

    points.append((lo, _defect_with_sum(lo, sum_upto(lo), m_const)))
    for p in primes:
        excl, incl = sums[p]
        points.append((float(p), _defect_with_sum(float(p), excl, m_const)))
        points.append((float(p), _defect_with_sum(float(p), incl, m_const)))
    points.append((hi, _defect_with_sum(hi, sum_upto(hi), m_const)))
    return points


def verify_lemma_window(
    lo: float = WINDOW_LO, hi: float = WINDOW_HI, env: MertensEnvelope | None = None
) -> VerificationReport:
    """Check |defect(x)| < m(x) on [lo, hi] at all structural extreme points.

    The defect is monotone between consecutive primes, so checking the window
    endpoints plus both one-sided limits at each prime covers the extremes.
    ``lo`` may be taken below the supported 1.048 (down to 1.0, where the
    defect diverges) to demonstrate where the envelope fails.
    """
    if not (1.0 <= lo < hi <= WINDOW_HI):
        raise ValueError(f"window must satisfy 1.0 <= lo < hi <= {WINDOW_HI}")
    if env is None:
        env = default_envelope()
    if env.table.limit < hi:
        raise ValueError(f"prime table limit {env.table.limit} is below hi = {hi}")

    worst = math.inf
    witness = lo
    points = _window_points(lo, hi, env)
    for x, defect in points:
        margin = m_envelope(x) - abs(defect)
        if margin < worst:
            worst = margin
            witness = x
    return VerificationReport(
        window=(lo, hi),
        passed=worst > 0.0,
        worst_margin=worst,
        witness=witness,
        points_checked=len(points),
    )


def prime_clearance(p: int, env: MertensEnvelope | None = None) -> float:
    """Vertical clearance m(p) - |defect| at a prime, taking the larger of the
    left and right one-sided defects."""
    if env is None:
        env = default_envelope()
    pts = [d for x, d in _window_points(2.0, float(env.table.limit), env) if x == p]
    if not pts:
        raise ValueError(f"{p} is not a prime within the table")
    return m_envelope(float(p)) - max(abs(d) for d in pts)


def window_profile(
    lo: float = WINDOW_LO,
    hi: float = WINDOW_HI,
    points: int = 2000,
    env: MertensEnvelope | None = None,
) -> list[tuple[float, float, float]]:
    """Rows (x, |defect(x)|, m(x)) on a dense grid plus both one-sided limits
    at each prime; suitable for plotting the envelope against the defect."""
    if env is None:
        env = default_envelope()
    xs = [lo + (hi - lo) * i / (points - 1) for i in range(points)]
    rows: list[tuple[float, float, float]] = []
    prime_pts = {x for x, _ in _window_points(lo, hi, env)}
    for x, defect in _window_points(lo, hi, env):
        rows.append((x, abs(defect), m_envelope(x)))
    m_const = env.meissel_mertens
    for x in xs:
        if x in prime_pts:
            continue
        cut = int((env.table.primes <= x).sum())
        s = kahan_sum(1.0 / p for p in env.table.primes[:cut].tolist())
        rows.append((x, abs(_defect_with_sum(x, s, m_const)), m_envelope(x)))
    rows.sort(key=lambda r: r[0])
    return rows
