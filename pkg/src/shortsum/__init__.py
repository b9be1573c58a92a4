"""shortsum: explicit constants for short prime-sum bounds on entire Artin
L-functions and the derived Dedekind-zeta residue bounds, under GRH.

The package recomputes every constant from scratch, machine-verifies the
inequalities behind them on finite lattices, and minimizes the bound
objectives over their parameter box.
"""

__version__ = "0.1.0"

from .bounds import BoundInput, big_f, g_of, h_and_k, objective_parts, xy_of
from .envelope import (
    ConstantSet,
    ParamTriple,
    constants_for,
    f_abs,
    gamma_integral_rhs,
    mu_of,
    solve_tau,
    tau,
    verify_gamma_envelope,
    verify_strip_max,
)
from .kappa import (
    FieldRecord,
    KappaBounds,
    batch_report,
    corollary_exponents,
    kappa_bounds,
    minimal_discriminants,
)
from .mertens import (
    MEISSEL_MERTENS,
    MertensEnvelope,
    VerificationReport,
    default_envelope,
    m_envelope,
    mertens_defect,
    verify_lemma_window,
)
from .optimizer import (
    OptimConfig,
    OptimResult,
    minimize_hk,
    minimize_theorem_objective,
    objective_surface,
)
from .specfun import (
    EvalOptions,
    PrimeTable,
    log_abs_gamma,
    prime_log_weight_sum,
    prime_recip_sum,
    prime_zeta,
    sieve,
    zeta_real,
)

__all__ = [
    "__version__",
    "BoundInput",
    "ConstantSet",
    "EvalOptions",
    "FieldRecord",
    "KappaBounds",
    "MEISSEL_MERTENS",
    "MertensEnvelope",
    "OptimConfig",
    "OptimResult",
    "ParamTriple",
    "PrimeTable",
    "VerificationReport",
    "batch_report",
    "big_f",
    "constants_for",
    "corollary_exponents",
    "default_envelope",
    "f_abs",
    "g_of",
    "gamma_integral_rhs",
    "h_and_k",
    "kappa_bounds",
    "log_abs_gamma",
    "m_envelope",
    "mertens_defect",
    "minimal_discriminants",
    "minimize_hk",
    "minimize_theorem_objective",
    "mu_of",
    "objective_parts",
    "objective_surface",
    "prime_log_weight_sum",
    "prime_recip_sum",
    "prime_zeta",
    "sieve",
    "solve_tau",
    "tau",
    "verify_gamma_envelope",
    "verify_lemma_window",
    "verify_strip_max",
    "xy_of",
    "zeta_real",
]
