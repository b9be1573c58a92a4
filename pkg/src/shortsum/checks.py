"""End-to-end reproduction checks with pinned tolerances.

Each check recomputes one headline quantity from scratch and compares it to
its reference value at a fixed tolerance.  The CLI umbrella command and the
acceptance test module both run exactly this list.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

from . import bounds, envelope, kappa, mertens, optimizer, specfun

__all__ = ["CheckResult", "ALL_CHECKS", "run_check", "run_all"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _result(name: str, t0: float, passed: bool, detail: str) -> CheckResult:
    return CheckResult(name=name, passed=passed, detail=detail, seconds=time.perf_counter() - t0)


def check_tau() -> CheckResult:
    """Critical parameter to 1e-12, recomputed by bisection, in under 1 s."""
    envelope.solve_tau.cache_clear()
    t0 = time.perf_counter()
    value = envelope.solve_tau()
    err = abs(value - 0.219733068786773)
    elapsed = time.perf_counter() - t0
    return _result(
        "tau root",
        t0,
        err <= 1e-12 and elapsed < 1.0,
        f"tau = {value:.15f}, |err| = {err:.2e}, {elapsed:.3f}s",
    )


def check_c1() -> CheckResult:
    """zeta(3/2)/sqrt(2 pi) to 1e-12 against the 20-digit reference."""
    t0 = time.perf_counter()
    value = specfun.zeta_real(1.5) / math.sqrt(2.0 * math.pi)
    err = abs(value - 1.0421869788690765546)
    elapsed = time.perf_counter() - t0
    return _result(
        "c1 constant",
        t0,
        err <= 1e-12 and elapsed < 1.0,
        f"c1 = {value:.19f}, |err| = {err:.2e}, {elapsed:.3f}s",
    )


def check_theorem_constant(cfg: optimizer.OptimConfig | None = None) -> CheckResult:
    """Short-sum constant: minimum of A + B at N = 3 in [13.0, 13.53], with the
    quoted near-optimal triple within 0.005 of the found minimum; under 60 s."""
    t0 = time.perf_counter()
    cfg = cfg or optimizer.OptimConfig()
    res = optimizer.minimize_theorem_objective(cfg=cfg)
    quoted = envelope.ParamTriple(155.648, 0.213503, 1.18818)
    a, b = bounds.objective_parts(bounds.BoundInput(params=quoted, d=1, N=3.0))
    at_quoted = a + b
    elapsed = time.perf_counter() - t0
    ok = (
        13.0 <= res.value <= 13.53
        and abs(at_quoted - res.value) < 0.005
        and elapsed < 60.0
    )
    return _result(
        "theorem constant",
        t0,
        ok,
        f"min = {res.value:.6f} at ({res.best.beta:.4f}, {res.best.delta:.6f}, "
        f"{res.best.eta:.5f}); quoted-triple value = {at_quoted:.6f}; {elapsed:.1f}s",
    )


def check_mertens_window() -> CheckResult:
    """Envelope window check plus the four stated clearances; under 5 s."""
    t0 = time.perf_counter()
    env = mertens.default_envelope()
    report = mertens.verify_lemma_window(env=env)
    clearances = {p: mertens.prime_clearance(p, env) for p in (5, 7, 11, 13)}
    targets = {5: (0.061, 3e-3), 7: (0.0010, 6e-4), 11: (0.045, 3e-3), 13: (0.018, 3e-3)}
    clear_ok = all(
        abs(clearances[p] - target) <= tol for p, (target, tol) in targets.items()
    )
    elapsed = time.perf_counter() - t0
    detail = ", ".join(f"c({p}) = {clearances[p]:.5f}" for p in (5, 7, 11, 13))
    return _result(
        "mertens window",
        t0,
        report.passed and clear_ok and elapsed < 5.0,
        f"worst margin {report.worst_margin:.5f} at x = {report.witness}; {detail}; "
        f"{elapsed:.2f}s",
    )


def check_hk_table(cfg: optimizer.OptimConfig | None = None) -> CheckResult:
    """Exponent table: H, K at the quoted triples within 0.001, and fresh
    minimization within +0.01/-0.05 of the quoted values; under 5 min."""
    t0 = time.perf_counter()
    cfg = cfg or optimizer.OptimConfig()
    lines = []
    ok = True
    for ref in kappa.reference_rows():
        inp = bounds.BoundInput(params=ref.triple, d=ref.d, N=ref.N0)
        h_at, k_at = bounds.h_and_k(inp)
        h_res, k_res = optimizer.minimize_hk(ref.d, ref.N0, cfg)
        row_ok = (
            abs(h_at - ref.h_value) < 1e-3
            and abs(k_at - ref.k_value) < 1e-3
            and -0.05 < h_res.value - ref.h_value < 0.01
            and -0.05 < k_res.value - ref.k_value < 0.01
        )
        ok = ok and row_ok
        lines.append(
            f"n={ref.degree}: H {h_at:.5f}/{h_res.value:.5f} vs {ref.h_value}, "
            f"K {k_at:.5f}/{k_res.value:.5f} vs {ref.k_value}"
            + ("" if row_ok else "  <- FAIL")
        )
    elapsed = time.perf_counter() - t0
    return _result(
        "exponent table", t0, ok and elapsed < 300.0, "; ".join(lines) + f"; {elapsed:.1f}s"
    )


def check_corollary_exponents(cfg: optimizer.OptimConfig | None = None) -> CheckResult:
    """Ceiling-rounded optimized exponents reproduce the stated per-degree
    bullets exactly at their displayed precision."""
    t0 = time.perf_counter()
    cfg = cfg or optimizer.OptimConfig()
    rows = kappa.corollary_exponents(cfg)
    ok = all(r.matches_quoted for r in rows)
    detail = "; ".join(
        f"n={r.degree}: ({r.rounded_upper:.2f}, {r.rounded_lower:.2f}) vs "
        f"({r.quoted_upper}, {r.quoted_lower})" + ("" if r.matches_quoted else " <- FAIL")
        for r in rows
    )
    return _result("corollary exponents", t0, ok, detail)


def check_proof_constants() -> CheckResult:
    """Internal constants: the weighted prime sum, its 0.76 cap, the prime
    zeta value at 3/2, and log zeta(3/2)."""
    t0 = time.perf_counter()
    value, tail = specfun.prime_log_weight_sum()
    pz = specfun.prime_zeta(1.5)
    lz = math.log(specfun.zeta_real(1.5))
    ok = (
        abs(value - 0.7553666) <= 1e-6
        and value + tail < 0.76
        and pz < 0.849567
        and lz < 0.96026
    )
    return _result(
        "proof-internal constants",
        t0,
        ok,
        f"weighted prime sum = {value:.8f} (+ tail {tail:.2e} < 0.76), "
        f"prime_zeta(3/2) = {pz:.8f} < 0.849567, log zeta(3/2) = {lz:.8f} < 0.96026",
    )


def check_property_suite(cfg: optimizer.OptimConfig | None = None) -> CheckResult:
    """Bundle of structural properties: strip and Gamma envelopes at three
    deltas, the quadrature constant, the elementary inequality grids, exact
    affineness of G in d, monotone decrease of G, H, K in N, and bit-exact
    optimizer determinism."""
    t0 = time.perf_counter()
    failures: list[str] = []
    tau = envelope.tau()

    for delta in (tau, 0.2, 0.125):
        if not envelope.verify_strip_max(delta, grid=200).passed:
            failures.append(f"strip max delta={delta:.4f}")
        if not envelope.verify_gamma_envelope(delta, samples=2000).passed:
            failures.append(f"gamma envelope delta={delta:.4f}")

    if not envelope.verify_exp_log_integral().passed:
        failures.append("exp-log quadrature")
    if not bounds.verify_exp_upper().passed:
        failures.append("|e^t-1| <= |t| grid")
    if not bounds.verify_exp_lower().passed:
        failures.append("|e^t-1| > |t|/4 grid")
    if not bounds.verify_geometric_tail().passed:
        failures.append("geometric tail")

    p = envelope.ParamTriple(155.648, 0.213503, 1.18818)
    if bounds.affine_second_difference(bounds.BoundInput(params=p, d=1, N=3.0)) != 0:
        failures.append("affine identity")

    prev = None
    for exp10 in (math.log(3.0) / math.log(10.0), 1, 2, 4, 6, 8, 10, 12):
        n = 10.0**exp10
        inp = bounds.BoundInput(params=p, d=2, N=n)
        h, k = bounds.h_and_k(inp)
        g = bounds.g_of(inp)
        if prev is not None and not (g < prev[0] and h < prev[1] and k < prev[2]):
            failures.append(f"monotonicity in N at N={n:g}")
        prev = (g, h, k)

    small = optimizer.OptimConfig(grid_resolution=8, nm_restarts=4)
    r1 = optimizer.minimize_theorem_objective(cfg=small)
    r2 = optimizer.minimize_theorem_objective(cfg=small)
    if r1 != r2:
        failures.append("optimizer determinism")

    elapsed = time.perf_counter() - t0
    return _result(
        "property suite",
        t0,
        not failures,
        ("all sub-checks passed" if not failures else "failed: " + ", ".join(failures))
        + f"; {elapsed:.1f}s",
    )


ALL_CHECKS: tuple[tuple[str, Callable[[], CheckResult]], ...] = (
    ("tau root", check_tau),
    ("c1 constant", check_c1),
    ("theorem constant", check_theorem_constant),
    ("mertens window", check_mertens_window),
    ("exponent table", check_hk_table),
    ("corollary exponents", check_corollary_exponents),
    ("proof-internal constants", check_proof_constants),
    ("property suite", check_property_suite),
)


def run_check(name: str) -> CheckResult:
    for check_name, fn in ALL_CHECKS:
        if check_name == name:
            return fn()
    raise KeyError(f"unknown check {name!r}")


def run_all() -> list[CheckResult]:
    return [fn() for _, fn in ALL_CHECKS]
