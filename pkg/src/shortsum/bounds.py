"""Assembly of the explicit bound functions F, A, B, G and the residue-bound
exponents H, K.

With x = (log N)^beta and y = (log N)^(1/2), the short-sum error for a degree-d,
conductor-N L-function is bounded by

    G(beta, delta, eta; d, N) = A + B d,

    A = c6 log(N) / (x^(1/2-delta) log x),
    B = 2.19 + log(4 beta) + F(x, y) + c7 / (x^(1/2-delta) log x),
    F(x, y) = y/x + m(x^2) + m(y) + 4/(x e^x),

and the Dedekind-zeta-residue exponents are

    H = d (log 1/2 + M + m(sqrt(log N))) + G,
    K =    log 1/2 + M + m(sqrt(log N))  + G.

Internally everything is evaluated from log x = beta log log N, so very large
x (huge N or beta) degrades gracefully to 0 contributions instead of
overflowing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .envelope import ParamTriple, _c2, _c4, _c5
from .mertens import (
    MEISSEL_MERTENS,
    VerificationReport,
    m_envelope,
    m_envelope_from_log,
)
from .specfun import DEFAULT_OPTIONS, EvalOptions

__all__ = [
    "BoundInput",
    "LOG_DERIV_REMAINDER",
    "PRIME_POWER_TAIL",
    "HEAD_VARIANTS",
    "xy_of",
    "big_f",
    "objective_parts",
    "g_of",
    "h_and_k",
    "affine_second_difference",
    "verify_exp_upper",
    "verify_exp_lower",
    "verify_geometric_tail",
]

#: Additive remainder absorbed into B: prime-power tail 0.849567 at exponent
#: 3/2, plus log zeta(3/2) < 0.96026, plus half of PRIME_POWER_TAIL, rounded
#: up.  Fixed by the derivation, not recomputed.
LOG_DERIV_REMAINDER = 2.19

#: Upper bound for sum_p (log p)/(p(p-1)); prime_log_weight_sum cross-checks it.
PRIME_POWER_TAIL = 0.76

#: Head-term variants of F(x, y): the default y/x from the direct prime count
#: pi(y) <= y; "e_minus_one" scales it by (e-1); "pi_over_log" uses the
#: refinement pi(y) <= 1.25506 y / log y.  The alternates exist only for
#: comparison reports.
HEAD_VARIANTS = ("y_over_x", "e_minus_one", "pi_over_log")


@dataclass(frozen=True)
class BoundInput:
    """Parameters plus the (degree, conductor) pair a bound is evaluated at.

    N is real so that absolute discriminants beyond 2^63 stay representable;
    only log N enters the formulas.
    """

    params: ParamTriple
    d: int
    N: float

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"degree d must be >= 1, got {self.d}")
        if not self.N >= 3.0:
            raise ValueError(f"conductor N must be >= 3, got {self.N}")


def xy_of(inp: BoundInput) -> tuple[float, float]:
    """x = (log N)^beta and y = (log N)^(1/2).

    x may round to inf when beta log log N exceeds the binary64 range; the
    bound evaluators below avoid that by staying in log space.
    """
    log_n = math.log(inp.N)
    log_x = inp.params.beta * math.log(log_n)
    x = math.exp(log_x) if log_x < 709.0 else math.inf
    return x, math.sqrt(log_n)


def _head_term(log_x: float, y: float, variant: str) -> float:
    if variant == "y_over_x":
        return y * math.exp(-log_x)
    if variant == "e_minus_one":
        return (math.e - 1.0) * y * math.exp(-log_x)
    if variant == "pi_over_log":
        if y <= 1.0:
            raise ValueError("pi_over_log head term requires y > 1")
        return 1.25506 * y * math.exp(-log_x) / math.log(y)
    raise ValueError(f"unknown head variant {variant!r}; expected one of {HEAD_VARIANTS}")


def _big_f_from_log(log_x: float, y: float, variant: str) -> float:
    # 4/(x e^x) via exp(-x - log x); zero once x alone exceeds exp range.
    total = _head_term(log_x, y, variant) + m_envelope_from_log(2.0 * log_x) + m_envelope(y)
    if log_x < 700.0:
        x = math.exp(log_x)
        if x < 700.0:
            total += 4.0 * math.exp(-x - log_x)
    return total


def big_f(x: float, y: float, variant: str = "y_over_x") -> float:
    """F(x, y) = y/x + m(x^2) + m(y) + 4/(x e^x), for x > 1 and y >= 1."""
    if not x > 1.0:
        raise ValueError(f"big_f requires x > 1, got {x}")
    if not y >= 1.0:
        raise ValueError(f"big_f requires y >= 1, got {y}")
    return _big_f_from_log(math.log(x), y, variant)


def objective_parts(
    inp: BoundInput,
    opts: EvalOptions = DEFAULT_OPTIONS,
    head_variant: str = "y_over_x",
) -> tuple[float, float]:
    """The affine coefficients (A, B) of G(...; d, N) = A + B d.

    Defined for beta > 1/2, delta in (0, 1/2), eta in (1, 3/2]; the optimizer
    box is narrower.
    """
    p = inp.params
    if not p.beta > 0.5:
        raise ValueError(f"beta must exceed 1/2, got {p.beta}")
    if not 0.0 < p.delta < 0.5:
        raise ValueError(f"delta must lie in (0, 1/2), got {p.delta}")
    if not 1.0 < p.eta <= 1.5:
        raise ValueError(f"eta must lie in (1, 3/2], got {p.eta}")
    log_n = math.log(inp.N)
    log_x = p.beta * math.log(log_n)
    y = math.sqrt(log_n)
    inv_denom = math.exp(-(0.5 - p.delta) * log_x) / log_x

    c2 = _c2(p.delta, p.eta)
    c4 = _c4(p.delta)
    c5 = _c5(p.delta, p.eta, opts)
    c6 = c2 * c4 / (2.0 * math.pi)
    c7 = c2 * c5 / (2.0 * math.pi)

    a = c6 * log_n * inv_denom
    b = (
        LOG_DERIV_REMAINDER
        + math.log(4.0 * p.beta)
        + _big_f_from_log(log_x, y, head_variant)
        + c7 * inv_denom
    )
    return a, b


def g_of(
    inp: BoundInput,
    opts: EvalOptions = DEFAULT_OPTIONS,
    head_variant: str = "y_over_x",
) -> float:
    """G(beta, delta, eta; d, N) = A + B d."""
    a, b = objective_parts(inp, opts, head_variant)
    return a + b * inp.d


def h_and_k(
    inp: BoundInput,
    opts: EvalOptions = DEFAULT_OPTIONS,
    head_variant: str = "y_over_x",
) -> tuple[float, float]:
    """The residue-bound exponents (H, K); H = K when d = 1."""
    base = (
        math.log(0.5)
        + MEISSEL_MERTENS
        + m_envelope(math.sqrt(math.log(inp.N)))
    )
    g = g_of(inp, opts, head_variant)
    return inp.d * base + g, base + g


def affine_second_difference(inp: BoundInput, opts: EvalOptions = DEFAULT_OPTIONS) -> Fraction:
    """Exact second difference G(d+2) - 2 G(d+1) + G(d) of the affine form,
    computed in rational arithmetic on the binary64 coefficients.

    Zero exactly; binary64 re-rounding of A + B d would blur this at the last
    ulp, so the identity is checked on the exact coefficient arithmetic.
    """
    a, b = objective_parts(inp, opts)
    fa, fb = Fraction(a), Fraction(b)
    g = [fa + fb * (inp.d + k) for k in range(3)]
    return (g[2] - g[1]) - (g[1] - g[0])


# --- elementary inequality grids ----------------------------------------------


def verify_exp_upper(points: int = 10**4) -> VerificationReport:
    """|e^t - 1| <= |t| on (-1, 0]; grid check (endpoints shrunk: equality at 0)."""
    ts = np.linspace(-1.0 + 1e-9, -1e-9, points)
    margins = np.abs(ts) - np.abs(np.expm1(ts))
    i = int(np.argmin(margins))
    return VerificationReport(
        window=(-1.0, 0.0),
        passed=float(margins[i]) > 0.0,
        worst_margin=float(margins[i]),
        witness=float(ts[i]),
        points_checked=points,
    )


def verify_exp_lower(points: int = 10**4) -> VerificationReport:
    """|e^t - 1| > |t|/4 for 0 < |t| < 1; grid check on both signs."""
    half = np.linspace(1e-9, 1.0 - 1e-9, points // 2)
    ts = np.concatenate([-half[::-1], half])
    margins = np.abs(np.expm1(ts)) - np.abs(ts) / 4.0
    i = int(np.argmin(margins))
    return VerificationReport(
        window=(-1.0, 1.0),
        passed=float(margins[i]) > 0.0,
        worst_margin=float(margins[i]),
        witness=float(ts[i]),
        points_checked=len(ts),
    )


def verify_geometric_tail(xs: tuple[float, ...] = (2.0, 5.0, 10.0)) -> VerificationReport:
    """Direct-summation check of the geometric tail estimate
    sum_{k >= floor(x^2)} e^(-k/x) / x^2 <= 4/(x e^x)."""
    worst = math.inf
    witness = xs[0]
    total_terms = 0
    for x in xs:
        k = math.floor(x * x)
        ratio = math.exp(-1.0 / x)
        term = math.exp(-k / x)
        acc = 0.0
        while term > acc * 1e-18 + 5e-324:
            acc += term
            term *= ratio
            total_terms += 1
        lhs = acc / (x * x)
        margin = 4.0 / (x * math.exp(x)) - lhs
        if margin < worst:
            worst = margin
            witness = x
    return VerificationReport(
        window=(min(xs), max(xs)),
        passed=worst > 0.0,
        worst_margin=worst,
        witness=witness,
        points_checked=total_terms,
    )
