"""Command-line interface for reproduction runs and figure-data export.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget or
resource failure.  Every run emits a manifest (JSON to stderr, or to a file
via --manifest) whose configuration snapshot reproduces the primary output
byte for byte; wall time is excluded from that guarantee.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time
from pathlib import Path

from . import __version__, bounds, checks, envelope, kappa, mertens, optimizer
from .specfun import EvalOptions

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

_CONFIG_EVAL_KEYS = {"abs_tol": float, "rel_tol": float, "tail_cutoff": int}
_CONFIG_OPTIM_KEYS = {
    "grid_resolution": int,
    "nm_restarts": int,
    "nm_tol": float,
    "max_evals": int,
    "seed": int,
}


def load_config(path: str | None) -> tuple[EvalOptions, optimizer.OptimConfig]:
    """Parse a ``key = value`` config file overriding the evaluation and
    optimizer defaults; '#' starts a comment."""
    eval_kwargs: dict = {}
    optim_kwargs: dict = {}
    if path is not None:
        for i, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{i}: expected 'key = value', got {raw!r}")
            key, _, value = (part.strip() for part in line.partition("="))
            if key in _CONFIG_EVAL_KEYS:
                eval_kwargs[key] = _CONFIG_EVAL_KEYS[key](value)
            elif key in _CONFIG_OPTIM_KEYS:
                optim_kwargs[key] = _CONFIG_OPTIM_KEYS[key](value)
            else:
                raise ValueError(f"{path}:{i}: unknown config key {key!r}")
    return EvalOptions(**eval_kwargs), optimizer.OptimConfig(**optim_kwargs)


@dataclasses.dataclass
class RunManifest:
    command: str
    config: dict
    version: str
    wall_time_s: float
    outputs: list[str]


def _emit_manifest(manifest: RunManifest, path: str | None) -> None:
    payload = json.dumps(dataclasses.asdict(manifest), indent=2, sort_keys=True)
    if path is None:
        print(payload, file=sys.stderr)
    else:
        Path(path).write_text(payload + "\n", encoding="utf-8")


def _config_snapshot(args: argparse.Namespace, opts: EvalOptions, cfg: optimizer.OptimConfig) -> dict:
    flags = {
        k: v for k, v in vars(args).items() if k not in ("func",) and v is not None
    }
    return {
        "flags": flags,
        "eval_options": dataclasses.asdict(opts),
        "optimizer": dataclasses.asdict(cfg),
        "threads": kappa.thread_count(),
    }


def _write_csv(path: Path, header_meta: dict, columns: list[str], rows) -> None:
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for key, value in header_meta.items():
            fh.write(f"# {key}={value}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(f"{v:.17g}" if isinstance(v, float) else str(v) for v in row) + "\n")


# --- subcommands ----------------------------------------------------------------


def cmd_verify(args, opts, cfg) -> tuple[int, list[str]]:
    window = args.window or f"{mertens.WINDOW_LO}:{mertens.WINDOW_HI}"
    try:
        lo, hi = (float(part) for part in window.split(":"))
    except ValueError:
        print(f"invalid --window {window!r}; expected LO:HI", file=sys.stderr)
        return EXIT_USAGE, []

    tau = envelope.tau()
    named: list[tuple[str, mertens.VerificationReport]] = []
    named.append(("mertens window", mertens.verify_lemma_window(lo, hi)))
    for delta, tag in ((tau, "tau"), (0.125, "1/8")):
        named.append((f"strip max (delta={tag})", envelope.verify_strip_max(delta, args.grid)))
    named.append(("gamma envelope (delta=tau)", envelope.verify_gamma_envelope(tau, args.samples)))
    named.append(("exp upper grid", bounds.verify_exp_upper()))
    named.append(("exp lower grid", bounds.verify_exp_lower()))
    named.append(("geometric tail", bounds.verify_geometric_tail()))
    named.append(("exp-log quadrature", envelope.verify_exp_log_integral()))

    status = EXIT_OK
    for name, report in named:
        line = (
            f"{'PASS' if report.passed else 'FAIL'}  {name}: worst margin "
            f"{report.worst_margin:.6g} at {report.witness:.6g} "
            f"({report.points_checked} points)"
        )
        print(line)
        if not report.passed and status == EXIT_OK:
            status = EXIT_VERIFICATION
            print(f"first failure: {name}", file=sys.stderr)
    return status, []


def cmd_optimize(args, opts, cfg) -> tuple[int, list[str]]:
    if args.objective == "theorem":
        name, res = "A+B", optimizer.minimize_theorem_objective(N=args.N, cfg=cfg, opts=opts)
    else:
        h_res, k_res = optimizer.minimize_hk(args.d, args.N, cfg, opts)
        name, res = args.objective, (h_res if args.objective == "H" else k_res)

    p = res.best
    print(
        f"{name} minimum {res.value:.6f} at beta={p.beta:.6f} delta={p.delta:.8f} "
        f"eta={p.eta:.7f} ({res.evaluations} evaluations, "
        f"{'converged' if res.converged else 'budget exhausted'})"
    )
    print(f"implied constant (rounded up at 2 decimals): {kappa.ceil_at(res.value):.2f}")
    return (EXIT_OK if res.converged else EXIT_BUDGET), []


def cmd_figure_data(args, opts, cfg) -> tuple[int, list[str]]:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"figure{args.figure}.csv"
    tau = envelope.tau()

    if args.figure == 1:
        rows = mertens.window_profile(points=args.resolution or 2000)
        meta = {"window": f"{mertens.WINDOW_LO}:{mertens.WINDOW_HI}"}
        _write_csv(path, meta, ["x", "abs_defect", "envelope"], rows)
    elif args.figure == 2:
        n = args.resolution or 500
        rows = []
        for i in range(n):
            delta = 0.005 + (0.49 - 0.005) * i / (n - 1)
            gap = envelope.f_abs(-1.0 + delta, 0.0, delta) - envelope.f_abs(
                -0.5 + delta, 0.0, delta
            )
            rows.append((delta, gap))
        _write_csv(path, {"root": f"{tau:.15f}"}, ["delta", "edge_gap"], rows)
    elif args.figure == 3:
        n = args.resolution or 500
        rows = []
        for i in range(n):
            delta = 1e-3 + (tau - 1e-3) * i / (n - 1)
            rows.append((delta, envelope.constants_for(envelope.ParamTriple(5.0, delta, 1.2)).c4))
        _write_csv(path, {"delta_max": f"{tau:.15f}"}, ["delta", "c4"], rows)
    elif args.figure == 4:
        delta = args.delta
        n = args.resolution or 80
        rows = []
        for i in range(n):
            sigma = -1.0 + delta + 0.5 * i / (n - 1)
            for j in range(n):
                t = -3.0 + 6.0 * j / (n - 1)
                rows.append((sigma, t, envelope.f_abs(sigma, t, delta)))
        _write_csv(path, {"delta": delta, "mu": envelope.mu_of(delta)}, ["sigma", "t", "f"], rows)
    else:
        surf = optimizer.objective_surface(resolution=args.resolution or 60, opts=opts)
        rows = [(p.beta, p.eta, v) for p, v in surf]
        _write_csv(path, {"delta": f"{tau:.15f}"}, ["beta", "eta", "value"], rows)

    print(f"wrote {path}")
    return EXIT_OK, [str(path)]


def cmd_kappa(args, opts, cfg) -> tuple[int, list[str]]:
    if args.input is not None:
        lines = Path(args.input).read_text(encoding="utf-8").splitlines()
        parsed = kappa.parse_records(lines)
    elif args.degree is not None and args.disc is not None:
        record = kappa.FieldRecord(degree=args.degree, abs_discriminant=args.disc, label=args.label)
        parsed = [(1, record, None)]
    else:
        print("kappa requires --input FILE or --degree N --disc X", file=sys.stderr)
        return EXIT_USAGE, []

    mode = args.mode.replace("-", "_")
    report = kappa.batch_report(parsed, mode=mode, cfg=cfg, opts=opts)

    if args.format == "json":
        payload = {
            "assumptions": list(report.assumptions),
            "mode": report.mode,
            "rows": [
                {
                    "line": r.line_number,
                    "degree": r.field.degree if r.field else None,
                    "abs_discriminant": r.field.abs_discriminant if r.field else None,
                    "label": r.field.label if r.field else None,
                    "lower": r.bounds.lower if r.bounds else None,
                    "upper": r.bounds.upper if r.bounds else None,
                    "exponent_lower": r.bounds.exponent_lower if r.bounds else None,
                    "exponent_upper": r.bounds.exponent_upper if r.bounds else None,
                    "source": r.bounds.source if r.bounds else None,
                    "error": r.error,
                    "note": r.note,
                }
                for r in report.rows
            ],
            "n_ok": report.n_ok,
            "n_errors": report.n_errors,
        }
        print(json.dumps(payload, indent=2))
    else:
        print("# assumptions: " + "; ".join(report.assumptions))
        print("# columns: degree,abs_discriminant,label,lower,upper,exponent_lower,exponent_upper,source")
        for r in report.rows:
            if r.error is not None:
                print(f"# error {r.error}" + (f" ({r.note})" if r.note else ""), file=sys.stderr)
            if r.bounds is not None and r.field is not None:
                print(
                    f"{r.field.degree},{r.field.abs_discriminant:g},{r.field.label or ''},"
                    f"{r.bounds.lower:.10g},{r.bounds.upper:.10g},"
                    f"{r.bounds.exponent_lower:.6f},{r.bounds.exponent_upper:.6f},{r.bounds.source}"
                )
        print(f"# rows ok: {report.n_ok}, errors: {report.n_errors}")
    return EXIT_OK, []


def cmd_tables(args, opts, cfg) -> tuple[int, list[str]]:
    status = EXIT_OK
    print("exponent table reproduction (fresh minimization at each minimal discriminant)")
    print(" n  d    N0   H(ref)     H(at ref triple)  H(min)      K(ref)     K(at ref triple)  K(min)")
    for ref in kappa.reference_rows():
        inp = bounds.BoundInput(params=ref.triple, d=ref.d, N=ref.N0)
        h_at, k_at = bounds.h_and_k(inp, opts)
        h_res, k_res = optimizer.minimize_hk(ref.d, ref.N0, cfg, opts)
        if not (h_res.converged and k_res.converged):
            status = EXIT_BUDGET
        print(
            f" {ref.degree}  {ref.d}  {ref.N0:6.0f}  {ref.h_value:<9.4f} "
            f"{h_at:<17.6f} {h_res.value:<11.6f} {ref.k_value:<9.4f} "
            f"{k_at:<17.6f} {k_res.value:<11.6f}"
        )

    print()
    print("constant ledger (computed vs stored reference)")
    c1 = envelope.constants_for(envelope.ParamTriple(155.648, envelope.tau(), 1.18818)).c1
    tau = envelope.tau()
    entries = [
        ("meissel-mertens M", None, mertens.MEISSEL_MERTENS),
        ("c1", c1, 1.0421869788690765546),
        ("tau", tau, 0.219733068786773),
    ]
    for name, computed, stored in entries:
        if computed is None:
            print(f" {name:<18} stored literal {stored!r}")
        else:
            print(f" {name:<18} computed {computed:.16f}  stored {stored!r}  delta {computed - stored:+.3e}")

    print()
    p = envelope.ParamTriple(155.648, 0.213503, 1.18818)
    inp = bounds.BoundInput(params=p, d=1, N=3.0)
    x, y = bounds.xy_of(inp)
    f_default = bounds.big_f(x, y)
    f_alt = bounds.big_f(x, y, variant="e_minus_one")
    f_pi = bounds.big_f(x, y, variant="pi_over_log")
    print("head-term variant comparison at the near-optimal point (N = 3):")
    print(f" default y/x form:            F = {f_default:.12f}")
    print(f" (e-1) y/x variant:           F = {f_alt:.12f}  (delta {f_alt - f_default:+.3e})")
    print(f" pi(y) <= 1.25506 y/log y:    F = {f_pi:.12f}  (delta {f_pi - f_default:+.3e})")
    print(" note: the two stored variants of the head term disagree; the default is the")
    print(" derived form, and the displayed deltas quantify the numerical impact.")
    return status, []


def cmd_paper_check(args, opts, cfg) -> tuple[int, list[str]]:
    failed = 0
    for name, fn in checks.ALL_CHECKS:
        result = fn()
        print(f"{'PASS' if result.passed else 'FAIL'}  {name}: {result.detail}")
        failed += 0 if result.passed else 1
    print(f"{len(checks.ALL_CHECKS) - failed}/{len(checks.ALL_CHECKS)} checks passed")
    return (EXIT_OK if failed == 0 else EXIT_VERIFICATION), []


# --- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shortsum",
        description=(
            "Compute, verify, and optimize the explicit constants of the short "
            "prime-sum bound for entire Artin L-functions and the derived "
            "Dedekind-zeta residue bounds (all conditional on GRH)."
        ),
        epilog=(
            "Config file keys (key = value): abs_tol (1e-13), rel_tol (1e-12), "
            "tail_cutoff (1e7), grid_resolution (24), nm_restarts (16), "
            "nm_tol (1e-10), max_evals (1e6), seed (0).  Environment: "
            "SHORTSUM_THREADS sets the worker count for batch rows (default 1)."
        ),
    )
    parser.add_argument("--config", help="key = value file overriding evaluation/optimizer defaults")
    parser.add_argument("--manifest", help="write the run manifest JSON to this path (default: stderr)")
    parser.add_argument(
        "--paper-check",
        action="store_true",
        help="run the full reproduction check suite and exit",
    )
    sub = parser.add_subparsers(dest="command")

    optim_flags = argparse.ArgumentParser(add_help=False)
    optim_flags.add_argument("--grid-resolution", type=int, dest="grid_resolution")
    optim_flags.add_argument("--restarts", type=int, dest="nm_restarts")
    optim_flags.add_argument("--nm-tol", type=float, dest="nm_tol")
    optim_flags.add_argument("--max-evals", type=int, dest="max_evals")
    optim_flags.add_argument("--seed", type=int, dest="seed")

    p_verify = sub.add_parser("verify", help="run all inequality verifications")
    p_verify.add_argument("--window", help="mertens window LO:HI (default 1.048:13.5)")
    p_verify.add_argument("--grid", type=int, default=500, help="strip lattice resolution per axis")
    p_verify.add_argument("--samples", type=int, default=10**4, help="gamma-envelope sample budget")
    p_verify.set_defaults(func=cmd_verify)

    p_opt = sub.add_parser("optimize", parents=[optim_flags], help="minimize a bound objective")
    p_opt.add_argument("--objective", choices=("theorem", "H", "K"), default="theorem")
    p_opt.add_argument("--d", type=int, default=1, help="degree (H/K objectives)")
    p_opt.add_argument("--N", type=float, default=3.0, help="conductor / |discriminant|")
    p_opt.set_defaults(func=cmd_optimize)

    p_fig = sub.add_parser("figure-data", help="export plotted quantities as CSV")
    p_fig.add_argument("--figure", type=int, required=True, choices=(1, 2, 3, 4, 5))
    p_fig.add_argument("--out", default=".", help="output directory")
    p_fig.add_argument("--resolution", type=int, help="grid resolution override")
    p_fig.add_argument("--delta", type=float, default=0.125, help="strip delta (figure 4)")
    p_fig.set_defaults(func=cmd_figure_data)

    p_kappa = sub.add_parser("kappa", parents=[optim_flags], help="residue bounds for number fields")
    p_kappa.add_argument("--input", help="records file: degree,abs_discriminant[,label]")
    p_kappa.add_argument("--degree", type=int, help="inline field degree")
    p_kappa.add_argument("--disc", type=float, help="inline |discriminant|")
    p_kappa.add_argument("--label", help="inline field label")
    p_kappa.add_argument("--mode", choices=("general", "per-degree", "fresh"), default="per-degree")
    p_kappa.add_argument("--format", choices=("text", "json"), default="text")
    p_kappa.set_defaults(func=cmd_kappa)

    p_tables = sub.add_parser("tables", parents=[optim_flags], help="recompute the exponent table and constant ledger")
    p_tables.set_defaults(func=cmd_tables)

    return parser


def _apply_optimizer_overrides(args, cfg: optimizer.OptimConfig) -> optimizer.OptimConfig:
    overrides = {
        name: getattr(args, name)
        for name in ("grid_resolution", "nm_restarts", "nm_tol", "max_evals", "seed")
        if getattr(args, name, None) is not None
    }
    return dataclasses.replace(cfg, **overrides) if overrides else cfg


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        opts, cfg = load_config(args.config)
    except (OSError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cfg = _apply_optimizer_overrides(args, cfg)

    if args.paper_check:
        runner = cmd_paper_check
    elif getattr(args, "func", None) is not None:
        runner = args.func
    else:
        parser.print_help()
        return EXIT_USAGE

    start = time.perf_counter()
    try:
        status, outputs = runner(args, opts, cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MemoryError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_BUDGET

    manifest = RunManifest(
        command="shortsum " + " ".join(argv),
        config=_config_snapshot(args, opts, cfg),
        version=__version__,
        wall_time_s=round(time.perf_counter() - start, 6),
        outputs=outputs,
    )
    _emit_manifest(manifest, args.manifest)
    return status


if __name__ == "__main__":
    sys.exit(main())
