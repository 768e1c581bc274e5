"""Check the Polya-Gamma sampler against the closed-form mean.

E[omega] for omega ~ PG(b, z) is (b / 2z) tanh(z / 2), so a Monte Carlo
average over many exact draws should land within a few standard errors of
that value for every (b, z).  This sweep prints the comparison over a grid
covering the regimes the Gibbs sampler visits: untilted (z = 0), moderately
tilted, and strongly tilted shapes, at single-trial and binomial weights.

Run:  python3 demos/pg_moments.py [--draws N] [--seed S]
"""

import argparse

import numpy as np

from pglogit import pg_mean, sample_pg_vector


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--draws", type=int, default=100_000, help="draws per cell")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'b':>4} {'z':>5} {'analytic':>10} {'monte carlo':>12} {'|err|/SE':>9}")
    worst = 0.0
    for b in (1.0, 2.0, 10.0):
        for z in (0.0, 0.5, 2.0, 5.0):
            draws = sample_pg_vector(
                np.full(args.draws, b), np.full(args.draws, z), rng
            )
            se = draws.std(ddof=1) / np.sqrt(args.draws)
            exact = pg_mean(b, z)
            ratio = abs(draws.mean() - exact) / se
            worst = max(worst, ratio)
            print(f"{b:>4g} {z:>5g} {exact:>10.6f} {draws.mean():>12.6f} {ratio:>9.2f}")
    print(f"\nworst |error| = {worst:.2f} standard errors (expect < 4)")


if __name__ == "__main__":
    main()
