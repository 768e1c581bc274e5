"""Validate the sampler against an exactly solvable posterior.

For an intercept-only logistic model, a single Beta(a, b) assessment at
x = 1 is conjugate: after observing s successes in n Bernoulli trials, the
response probability sigmoid(beta0) has posterior Beta(a + s, b + n - s)
exactly.  The Gibbs sampler knows nothing about this — it sees one real
data block plus one imaginary binomial row — so agreement between its
sigmoid(beta0) draws and the Beta posterior is a sharp end-to-end check.

Here: prior Beta(1, 9) (mean 0.1, worth 10 imaginary trials) and data with
3 successes in 10 trials, so the truth is Beta(4, 16) with mean 0.2.

Run:  python3 demos/conjugate_check.py [--kept N] [--seed S]
"""

import argparse

import numpy as np
from scipy.special import expit
from scipy.stats import beta as beta_dist

from pglogit import (
    ChainConfig,
    ConditionalMeansPrior,
    Dataset,
    DesignPoint,
    augment,
    beta_binomial_posterior,
    run_chain,
    to_synthetic,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--kept", type=int, default=50_000, help="kept draws")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    data = Dataset(X=np.ones((10, 1)), y=np.array([1.0] * 3 + [0.0] * 7))
    prior = ConditionalMeansPrior([DesignPoint(x=np.array([1.0]), a=1.0, b=9.0)])
    truth = beta_binomial_posterior(1.0, 9.0, successes=3, n=10)
    print(f"exact posterior: Beta({truth.a:g}, {truth.b:g}), mean {truth.mean:.4f}\n")

    cfg = ChainConfig(iterations=args.kept + 3_000, burn_in=3_000, seed=args.seed)
    draws = run_chain(augment(data, to_synthetic(prior)), cfg, labels=("beta0",))
    probs = expit(draws.draws[:, 0])

    print(f"sampled mean   : {probs.mean():.4f}  (error {abs(probs.mean() - truth.mean):.5f})")
    print(f"{'quantile':>9} {'exact':>8} {'sampled':>8} {'|err|':>8}")
    for q in (0.05, 0.25, 0.50, 0.75, 0.95):
        exact_q = beta_dist.ppf(q, truth.a, truth.b)
        emp_q = float(np.quantile(probs, q))
        print(f"{q:>9.2f} {exact_q:>8.4f} {emp_q:>8.4f} {abs(emp_q - exact_q):>8.5f}")


if __name__ == "__main__":
    main()
