"""Derivative-free minimization of the bound objectives over the search box
[4.5, 300] x (0, tau] x (1, 3/2].

Strategy: a coarse deterministic grid scan, then Nelder-Mead refinement from
the best grid cells (reflection 1, expansion 2, contraction 1/2, shrink 1/2,
initial simplex at 2% of each axis range).  Proposals are clipped into the
box, open endpoints are shrunk by 1e-6, and ties break lexicographically on
(value, beta, delta, eta) so runs are bit-for-bit reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import optimize

from .bounds import BoundInput, objective_parts
from .envelope import BETA_RANGE, ENDPOINT_SHRINK, ParamTriple, tau
from .specfun import DEFAULT_OPTIONS, EvalOptions

__all__ = [
    "OptimConfig",
    "OptimResult",
    "search_bounds",
    "minimize_theorem_objective",
    "minimize_hk",
    "objective_surface",
]


@dataclass(frozen=True)
class OptimConfig:
    grid_resolution: int = 24
    nm_restarts: int = 16
    nm_tol: float = 1e-10
    max_evals: int = 10**6
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("grid_resolution", "nm_restarts", "max_evals", "seed"):
            if getattr(self, name) < 0 or (name != "seed" and getattr(self, name) <= 0):
                raise ValueError(f"{name} must be positive")
        if not self.nm_tol > 0:
            raise ValueError("nm_tol must be positive")


@dataclass(frozen=True)
class OptimResult:
    best: ParamTriple
    value: float
    evaluations: int
    converged: bool
    trace: tuple[tuple[ParamTriple, float], ...] | None = None


def search_bounds() -> list[tuple[float, float]]:
    """Closed optimization box; the open endpoints delta = 0 and eta = 1 are
    shrunk by 1e-6, while tau and 3/2 are included exactly."""
    return [
        (BETA_RANGE[0], BETA_RANGE[1]),
        (ENDPOINT_SHRINK, tau()),
        (1.0 + ENDPOINT_SHRINK, 1.5),
    ]


class _Budget:
    """Evaluation counter shared between the grid stage and all restarts."""

    def __init__(self, fn: Callable[[np.ndarray], float], max_evals: int):
        self._fn = fn
        self.max_evals = max_evals
        self.count = 0

    def __call__(self, x: np.ndarray) -> float:
        self.count += 1
        return self._fn(x)

    @property
    def remaining(self) -> int:
        return self.max_evals - self.count


def _initial_simplex(x0: np.ndarray, box: list[tuple[float, float]]) -> np.ndarray:
    simplex = np.tile(x0, (len(x0) + 1, 1))
    for i, (lo, hi) in enumerate(box):
        step = 0.02 * (hi - lo)
        vertex = x0[i] + step
        if vertex > hi:
            vertex = x0[i] - step
        simplex[i + 1, i] = vertex
    return simplex


def _lexicographic_better(
    cand: tuple[float, float, float, float], incumbent: tuple[float, float, float, float]
) -> bool:
    return cand < incumbent


def _minimize(
    objective: Callable[[np.ndarray], float], cfg: OptimConfig
) -> OptimResult:
    box = search_bounds()
    budget = _Budget(objective, cfg.max_evals)

    # Grid stage: resolution points per axis, endpoints included.
    axes = [np.linspace(lo, hi, cfg.grid_resolution) for lo, hi in box]
    grid_cells: list[tuple[float, float, float, float]] = []
    for b in axes[0]:
        for d in axes[1]:
            for e in axes[2]:
                x = np.array([b, d, e])
                grid_cells.append((budget(x), b, d, e))
    grid_cells.sort()

    incumbent = grid_cells[0]
    trace: list[tuple[ParamTriple, float]] = [
        (ParamTriple(*incumbent[1:]), incumbent[0])
    ]

    exhausted = False
    converged_all = True
    starts = grid_cells[: cfg.nm_restarts]
    for _, b, d, e in starts:
        if budget.remaining < 10 * (len(box) + 1):
            exhausted = True
            break
        x0 = np.array([b, d, e])
        res = optimize.minimize(
            budget,
            x0,
            method="Nelder-Mead",
            bounds=box,
            options={
                "initial_simplex": _initial_simplex(x0, box),
                "xatol": cfg.nm_tol,
                "fatol": cfg.nm_tol,
                "maxfev": min(budget.remaining, 8000),
                "adaptive": False,
            },
        )
        if not res.success:
            converged_all = False
            if budget.remaining <= 0:
                exhausted = True
        xb = np.clip(res.x, [lo for lo, _ in box], [hi for _, hi in box])
        cand = (float(res.fun), float(xb[0]), float(xb[1]), float(xb[2]))
        if _lexicographic_better(cand, incumbent):
            incumbent = cand
        trace.append((ParamTriple(*incumbent[1:]), incumbent[0]))

    return OptimResult(
        best=ParamTriple(*incumbent[1:]),
        value=incumbent[0],
        evaluations=budget.count,
        converged=converged_all and not exhausted,
        trace=tuple(trace),
    )


def minimize_theorem_objective(
    d_mode: str = "sum_AB",
    N: float = 3.0,
    cfg: OptimConfig = OptimConfig(),
    opts: EvalOptions = DEFAULT_OPTIONS,
) -> OptimResult:
    """Minimize A + B over the search box at conductor N (default the minimal
    conductor 3).  A + B bounds the per-degree constant for every d >= 1."""
    if d_mode != "sum_AB":
        raise ValueError(f"unsupported d_mode {d_mode!r}")
    if N < 3.0:
        raise ValueError(f"N must be >= 3, got {N}")

    def objective(x: np.ndarray) -> float:
        inp = BoundInput(params=ParamTriple(*map(float, x)), d=1, N=N)
        a, b = objective_parts(inp, opts)
        return a + b

    return _minimize(objective, cfg)


def minimize_hk(
    d: int,
    N0: float,
    cfg: OptimConfig = OptimConfig(),
    opts: EvalOptions = DEFAULT_OPTIONS,
) -> tuple[OptimResult, OptimResult]:
    """Minimize the exponents H and K separately at fixed (d, N0); returns
    (result for H, result for K)."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if N0 < 3.0:
        raise ValueError(f"N0 must be >= 3, got {N0}")
    from .bounds import h_and_k

    def h_obj(x: np.ndarray) -> float:
        inp = BoundInput(params=ParamTriple(*map(float, x)), d=d, N=N0)
        return h_and_k(inp, opts)[0]

    def k_obj(x: np.ndarray) -> float:
        inp = BoundInput(params=ParamTriple(*map(float, x)), d=d, N=N0)
        return h_and_k(inp, opts)[1]

    return _minimize(h_obj, cfg), _minimize(k_obj, cfg)


def objective_surface(
    fixed: str = "delta",
    fixed_value: float | None = None,
    resolution: int = 60,
    opts: EvalOptions = DEFAULT_OPTIONS,
) -> list[tuple[ParamTriple, float]]:
    """The A + B surface on a regular grid, with one axis held fixed.

    fixed = "delta" (default, at tau) grids beta in [4.5, 500] against eta in
    (1, 3/2]; fixed = "eta" grids beta against delta in (0, tau].
    """
    if resolution < 10:
        raise ValueError(f"resolution must be >= 10, got {resolution}")
    if fixed not in ("delta", "eta"):
        raise ValueError(f"fixed must be 'delta' or 'eta', got {fixed!r}")
    betas = np.linspace(4.5, 500.0, resolution)
    rows: list[tuple[ParamTriple, float]] = []
    if fixed == "delta":
        dv = tau() if fixed_value is None else fixed_value
        others = np.linspace(1.0 + ENDPOINT_SHRINK, 1.5, resolution)
        triples = (ParamTriple(float(b), dv, float(e)) for b in betas for e in others)
    else:
        ev = 1.18818 if fixed_value is None else fixed_value
        others = np.linspace(ENDPOINT_SHRINK, tau(), resolution)
        triples = (ParamTriple(float(b), float(d), ev) for b in betas for d in others)
    for p in triples:
        a, b = objective_parts(BoundInput(params=p, d=1, N=3.0), opts)
        rows.append((p, a + b))
    return rows
