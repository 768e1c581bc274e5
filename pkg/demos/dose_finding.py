"""A replicated dose-finding trial: what an informative prior buys.

Each replicate simulates a five-arm binary trial (doses 0 to 4 mg, 60
subjects per arm) from an Emax-shaped truth on the log-odds scale, then
fits the linear-logit working model twice on the same data: once with an
informative prior worth 10 imaginary subjects at each end of the dose
range, once flat.  Averaging over replicates shows the informative fit
giving uniformly narrower credible intervals at essentially the same
posterior means, and near-identical dose-selection decisions.

The full 30-replicate study takes about a minute; pass --reps 5 for a
quick look.  The same study is available as `pglogit simulate`, or from
the shipped scenario file:

    pglogit simulate demos/dose_finding_scenario.json

Run:  python3 demos/dose_finding.py [--reps N] [--seed S]
"""

import argparse
import sys
from dataclasses import replace

from pglogit import default_scenario, run_replications


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--reps", type=int, default=30, help="replicate trials")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    scenario = default_scenario(seed=args.seed)
    scenario = replace(scenario, replicates=args.reps)

    def progress(done: int, total: int) -> None:
        print(f"\rreplicate {done}/{total}", end="", file=sys.stderr, flush=True)

    report = run_replications(scenario, progress=progress)
    print(file=sys.stderr)

    print(
        f"{args.reps} replicates, {scenario.per_arm} subjects per arm, "
        f"{scenario.chain.iterations} iterations per fit\n"
    )
    print(
        f"{'dose':>5} {'truth':>6} | {'inf mean':>8} {'flat mean':>9} | "
        f"{'inf width':>9} {'flat width':>10}"
    )
    for row in report.dose_rows:
        inf, flat = row.stats["informative"], row.stats["flat"]
        print(
            f"{row.dose:>5g} {100 * row.true_p:>5.1f}% | {100 * inf.mean:>7.1f}% "
            f"{100 * flat.mean:>8.1f}% | {100 * inf.ci_width:>8.1f}pp {100 * flat.ci_width:>9.1f}pp"
        )

    print(f"\nP(response uplift over placebo > {scenario.decision_margin:g}):")
    for row in report.decision_rows:
        print(
            f"  dose {row.dose:g}: informative {row.prob['informative']:.3f}, "
            f"flat {row.prob['flat']:.3f}"
        )

    print("\nsampler health (mean ESS per coefficient; replicates with |Geweke z| <= 2):")
    for label in ("informative", "flat"):
        e0, e1 = report.mean_ess[label]
        print(
            f"  {label:<12} ESS {e0:7.0f} / {e1:7.0f}   "
            f"Geweke pass {report.geweke_pass[label]}/{args.reps}"
        )


if __name__ == "__main__":
    main()
