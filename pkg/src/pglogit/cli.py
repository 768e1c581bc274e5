"""Command-line front end.

Subcommands:

  fit         fit one dataset from CSV, with an optional prior JSON
  simulate    run a replicated dose-finding study from a scenario JSON
  oring       run the built-in O-ring temperature analysis
  ridge-demo  check the penalty-form / pseudo-data-form ridge equivalence
  diagnose    compute ESS and Geweke z for an existing draws CSV

Every run writes a `manifest.json` into the output directory recording the
subcommand, all resolved option values, the seed and the artifact names;
re-running the same subcommand with those options reproduces every artifact
byte for byte.  Failures exit non-zero and print a single line to stderr of
the form `pglogit: error [category] message` with category one of parse,
validation, numeric or io.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .diagnostics import ess, geweke_z, summarize_chain
from .fileio import (
    FileFormatError,
    fmt_pct,
    fmt_prob,
    read_data_csv,
    read_draws_csv,
    read_prior_json,
    read_scenario_json,
    write_csv,
    write_json,
)
from .gibbs import ChainConfig, run_chain
from .model import augment
from .prior import to_synthetic, validate_prior
from .ridge import RidgeProblem, ridge_augmented, ridge_closed_form
from .scenarios import (
    DEFAULT_SEED,
    FLAT,
    INFORMATIVE,
    default_scenario,
    oring_analysis,
    run_replications,
)

__all__ = ["main", "build_parser"]

_ENV_OUT_DIR = "PGLOGIT_OUT_DIR"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pglogit",
        description="Bayesian logistic regression with pseudo-data priors "
        "and an exact Polya-Gamma Gibbs sampler.",
    )
    parser.add_argument("--version", action="version", version=f"pglogit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, chain: bool = True) -> None:
        if chain:
            p.add_argument("--iters", type=int, default=None, help="sampler iterations (default 10000)")
            p.add_argument("--burnin", type=int, default=None, help="burn-in iterations (default 3000)")
            p.add_argument("--thin", type=int, default=None, help="keep every k-th draw (default 1)")
            p.add_argument("--seed", type=int, default=None, help=f"master seed (default {DEFAULT_SEED})")
        p.add_argument(
            "--out-dir",
            default=None,
            help=f"output directory (default ${_ENV_OUT_DIR} or current directory)",
        )

    p_fit = sub.add_parser("fit", help="fit one dataset from a CSV file")
    p_fit.add_argument("--data", required=True, help="CSV with a binary column 'y'")
    p_fit.add_argument("--prior", default=None, help="JSON array of prior design points")
    p_fit.add_argument(
        "--no-intercept",
        action="store_true",
        help="do not prepend an intercept column of ones",
    )
    add_common(p_fit)

    p_sim = sub.add_parser("simulate", help="replicated dose-finding study")
    p_sim.add_argument(
        "scenario",
        nargs="?",
        default=None,
        help="scenario JSON (omit for the built-in five-arm study)",
    )
    p_sim.add_argument("--reps", type=int, default=None, help="replicate trials (default 30)")
    add_common(p_sim)

    p_oring = sub.add_parser("oring", help="built-in O-ring temperature analysis")
    p_oring.add_argument(
        "--flat-only",
        action="store_true",
        help="fit only the flat prior (skip the informative prior)",
    )
    add_common(p_oring)

    p_ridge = sub.add_parser("ridge-demo", help="penalty vs pseudo-data ridge check")
    p_ridge.add_argument("--seed", type=int, default=None, help=f"instance seed (default {DEFAULT_SEED})")
    add_common(p_ridge, chain=False)

    p_diag = sub.add_parser("diagnose", help="diagnostics for an existing draws CSV")
    p_diag.add_argument("draws", help="draws CSV written by `fit`")
    add_common(p_diag, chain=False)

    return parser


def _out_dir(args) -> Path:
    out = args.out_dir or os.environ.get(_ENV_OUT_DIR) or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _chain_config(args) -> ChainConfig:
    return ChainConfig(
        iterations=args.iters if args.iters is not None else 10_000,
        burn_in=args.burnin if args.burnin is not None else 3_000,
        thin=args.thin if args.thin is not None else 1,
        seed=args.seed if args.seed is not None else DEFAULT_SEED,
    )


def _write_manifest(out: Path, command: str, options: dict, seed, artifacts: list[str]) -> None:
    write_json(
        out / "manifest.json",
        {
            "tool": "pglogit",
            "version": __version__,
            "command": command,
            "options": options,
            "seed": seed,
            "artifacts": sorted(artifacts),
        },
    )


def cmd_fit(args) -> int:
    out = _out_dir(args)
    data, labels = read_data_csv(args.data, add_intercept=not args.no_intercept)
    prior = read_prior_json(args.prior) if args.prior else None
    if prior is not None:
        if prior.p != data.p:
            raise ValueError(
                f"prior design points have dimension {prior.p} but the design has {data.p} columns"
            )
        report = validate_prior(prior)
        if not report.proper:
            print(
                "note: prior is improper "
                f"(rank {report.rank} of {report.p}, min weight {report.min_weight:g})",
                file=sys.stderr,
            )
    cfg = _chain_config(args)
    synthetic = to_synthetic(prior) if prior is not None else []
    aug = augment(data, synthetic)
    draws = run_chain(aug, cfg, labels=labels)
    queries = prior.design_matrix if prior is not None else None
    summary = summarize_chain(draws, query_points=queries)

    draws_path = out / "draws.csv"
    draws.to_csv(draws_path)
    summary_doc = {
        "prior": INFORMATIVE if prior is not None else FLAT,
        "pg_sampling": "exact" if aug.integer_weights else "approximate",
        "kept_draws": draws.kept,
        "level": summary.level,
        "coefficients": [
            {
                "name": c.name,
                "mean": round(c.mean, 6),
                "sd": round(c.sd, 6),
                "ess": round(c.ess, 1),
                "geweke_z": round(c.geweke_z, 3),
            }
            for c in summary.coefficients
        ],
        "query_probabilities": [
            {
                "covariates": list(q.x),
                "mean": round(q.mean, 4),
                "lo": round(q.lo, 4),
                "hi": round(q.hi, 4),
                "width": round(q.width, 4),
            }
            for q in summary.probabilities
        ],
    }
    write_json(out / "fit_summary.json", summary_doc)

    print(f"fit: {data.n} rows, {data.p} coefficients, {draws.kept} kept draws")
    print(f"{'coefficient':<14} {'mean':>10} {'sd':>10} {'ess':>8} {'geweke':>8}")
    for c in summary.coefficients:
        print(f"{c.name:<14} {c.mean:>10.4f} {c.sd:>10.4f} {c.ess:>8.0f} {c.geweke_z:>8.2f}")
    for q in summary.probabilities:
        x_txt = ",".join(f"{v:g}" for v in q.x)
        print(
            f"p(y=1 | x=[{x_txt}]) = {fmt_prob(q.mean)}  "
            f"{int(summary.level * 100)}% CrI [{fmt_prob(q.lo)}, {fmt_prob(q.hi)}]"
        )
    options = {
        "data": args.data,
        "prior": args.prior,
        "no_intercept": args.no_intercept,
        "iters": cfg.iterations,
        "burnin": cfg.burn_in,
        "thin": cfg.thin,
        "seed": cfg.seed,
        "out_dir": str(out),
    }
    _write_manifest(out, "fit", options, cfg.seed, ["draws.csv", "fit_summary.json"])
    return 0


def cmd_simulate(args) -> int:
    from dataclasses import replace

    out = _out_dir(args)
    scenario = read_scenario_json(args.scenario) if args.scenario else default_scenario()
    # Apply all flag overrides in one replace: ChainConfig validates on
    # construction, and e.g. lowering --iters below the scenario's burn-in
    # must not fail before the new --burnin is in place.
    overrides = {
        key: value
        for key, value in (
            ("iterations", args.iters),
            ("burn_in", args.burnin),
            ("thin", args.thin),
            ("seed", args.seed),
        )
        if value is not None
    }
    chain = replace(scenario.chain, **overrides) if overrides else scenario.chain
    scenario = replace(
        scenario,
        chain=chain,
        replicates=args.reps if args.reps is not None else scenario.replicates,
    )

    def progress(done: int, total: int) -> None:
        print(f"replicate {done}/{total}", file=sys.stderr)

    report = run_replications(scenario, progress=progress)

    labels = (INFORMATIVE, FLAT)
    dose_header = ["dose", "true_pct"]
    for lb in labels:
        dose_header += [f"{lb}_mean_pct", f"{lb}_sd_pct", f"{lb}_ci_width_pp"]
    dose_rows = []
    for row in report.dose_rows:
        cells = [f"{row.dose:g}", fmt_pct(row.true_p)]
        for lb in labels:
            st = row.stats[lb]
            cells += [fmt_pct(st.mean), fmt_pct(st.sd), fmt_pct(st.ci_width)]
        dose_rows.append(cells)
    write_csv(out / "dose_response.csv", dose_header, dose_rows)

    decision_header = ["dose"] + [f"{lb}_decision_prob" for lb in labels]
    decision_rows = [
        [f"{row.dose:g}"] + [fmt_prob(row.prob[lb]) for lb in labels]
        for row in report.decision_rows
    ]
    write_csv(out / "decision.csv", decision_header, decision_rows)

    diag_header = ["prior", "coefficient", "mean_ess", "geweke_within_2", "replicates"]
    diag_rows = []
    for lb in labels:
        for j, name in enumerate(("beta0", "beta1")):
            diag_rows.append(
                [
                    lb,
                    name,
                    f"{report.mean_ess[lb][j]:.1f}",
                    str(report.geweke_pass[lb]),
                    str(scenario.replicates),
                ]
            )
    write_csv(out / "diagnostics.csv", diag_header, diag_rows)

    plot_header = ["dose", "prior", "post_mean", "ci_lo", "ci_hi"]
    plot_rows = []
    for row in report.dose_rows:
        for lb in labels:
            st = row.stats[lb]
            plot_rows.append(
                [f"{row.dose:g}", lb, fmt_prob(st.mean), fmt_prob(st.ci_lo), fmt_prob(st.ci_hi)]
            )
    write_csv(out / "dose_plot.tsv", plot_header, plot_rows, sep="\t")

    print(
        f"simulate: {scenario.replicates} replicates, {scenario.n_subjects} subjects each, "
        f"{chain.iterations} iterations per fit"
    )
    print(f"{'dose':>6} {'true%':>7} {'inf%':>7} {'flat%':>7} {'inf width':>10} {'flat width':>11}")
    for row in report.dose_rows:
        st_i, st_f = row.stats[INFORMATIVE], row.stats[FLAT]
        print(
            f"{row.dose:>6g} {100 * row.true_p:>7.1f} {100 * st_i.mean:>7.1f} "
            f"{100 * st_f.mean:>7.1f} {100 * st_i.ci_width:>10.1f} {100 * st_f.ci_width:>11.1f}"
        )
    for row in report.decision_rows:
        print(
            f"P(uplift at {row.dose:g} > {scenario.decision_margin:g}): "
            f"informative {fmt_prob(row.prob[INFORMATIVE])}, flat {fmt_prob(row.prob[FLAT])}"
        )
    options = {
        "scenario": args.scenario,
        "reps": scenario.replicates,
        "iters": chain.iterations,
        "burnin": chain.burn_in,
        "thin": chain.thin,
        "seed": chain.seed,
        "out_dir": str(out),
    }
    _write_manifest(
        out,
        "simulate",
        options,
        chain.seed,
        ["dose_response.csv", "decision.csv", "diagnostics.csv", "dose_plot.tsv"],
    )
    return 0


def cmd_oring(args) -> int:
    out = _out_dir(args)
    cfg = _chain_config(args)
    priors = (FLAT,) if args.flat_only else (INFORMATIVE, FLAT)
    report = oring_analysis(chain=cfg, priors=priors)

    header = ["temperature_f"]
    for lb in report.priors:
        header += [f"{lb}_mean_pct", f"{lb}_lo_pct", f"{lb}_hi_pct"]
    rows = []
    for row in report.rows:
        cells = [f"{row.temperature:g}"]
        for lb in report.priors:
            st = row.stats[lb]
            cells += [fmt_pct(st.mean), fmt_pct(st.lo), fmt_pct(st.hi)]
        rows.append(cells)
    write_csv(out / "oring_table.csv", header, rows)

    print(f"oring: P(thermal distress) by launch temperature, {int(report.level * 100)}% CrI")
    for row in report.rows:
        parts = [f"{row.temperature:>4g} F:"]
        for lb in report.priors:
            st = row.stats[lb]
            parts.append(
                f"{lb} {100 * st.mean:5.1f}% [{100 * st.lo:.0f}, {100 * st.hi:.0f}]"
            )
        print("  ".join(parts))
    options = {
        "flat_only": args.flat_only,
        "iters": cfg.iterations,
        "burnin": cfg.burn_in,
        "thin": cfg.thin,
        "seed": cfg.seed,
        "out_dir": str(out),
    }
    _write_manifest(out, "oring", options, cfg.seed, ["oring_table.csv"])
    return 0


def cmd_ridge_demo(args) -> int:
    out = _out_dir(args)
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    rng = np.random.default_rng(seed)
    lams = (1e-3, 1.0, 1e3)
    header = ["instance", "n", "p", "lam", "max_abs_diff"]
    rows = []
    worst = 0.0
    for i in range(50):
        n = int(rng.integers(20, 101))
        p = int(rng.integers(1, 9))
        x = rng.standard_normal((n, p))
        y = rng.standard_normal(n)
        for lam in lams:
            prob = RidgeProblem(X=x, y=y, lam=lam)
            diff = float(np.max(np.abs(ridge_closed_form(prob) - ridge_augmented(prob))))
            worst = max(worst, diff)
            rows.append([str(i), str(n), str(p), f"{lam:g}", f"{diff:.3e}"])
    write_csv(out / "ridge_checks.csv", header, rows)
    print(
        f"ridge-demo: max |penalty-form - pseudo-data-form| over 50 instances x "
        f"{len(lams)} penalties = {worst:.3e}"
    )
    options = {"seed": seed, "out_dir": str(out)}
    _write_manifest(out, "ridge-demo", options, seed, ["ridge_checks.csv"])
    return 0


def cmd_diagnose(args) -> int:
    out = _out_dir(args)
    draws, labels = read_draws_csv(args.draws)
    header = ["coefficient", "mean", "sd", "ess", "geweke_z"]
    rows = []
    print(f"{'coefficient':<14} {'mean':>10} {'sd':>10} {'ess':>8} {'geweke':>8}")
    for j, name in enumerate(labels):
        series = draws[:, j]
        e = ess(series)
        z = geweke_z(series)
        rows.append([name, f"{series.mean():.6f}", f"{series.std(ddof=1):.6f}", f"{e:.1f}", f"{z:.3f}"])
        print(f"{name:<14} {series.mean():>10.4f} {series.std(ddof=1):>10.4f} {e:>8.0f} {z:>8.2f}")
    write_csv(out / "diagnose.csv", header, rows)
    options = {"draws": args.draws, "out_dir": str(out)}
    _write_manifest(out, "diagnose", options, None, ["diagnose.csv"])
    return 0


_COMMANDS = {
    "fit": cmd_fit,
    "simulate": cmd_simulate,
    "oring": cmd_oring,
    "ridge-demo": cmd_ridge_demo,
    "diagnose": cmd_diagnose,
}


def _error_category(err: Exception) -> str:
    if isinstance(err, FileFormatError):
        return "parse"
    if isinstance(err, np.linalg.LinAlgError):
        return "numeric"
    if isinstance(err, (ValueError, TypeError)):
        return "validation"
    if isinstance(err, OSError):
        return "io"
    return "internal"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_err:
        return int(exit_err.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (FileFormatError, ValueError, TypeError, OSError, np.linalg.LinAlgError) as err:
        print(f"pglogit: error [{_error_category(err)}] {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
