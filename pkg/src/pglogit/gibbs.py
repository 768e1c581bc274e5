"""Two-block Gibbs sampler for logistic regression with pseudo-data priors.

Each sweep alternates two exact conditional draws:

  1. omega_i | beta  ~  PG(b_i, x_i' beta)           one per augmented row,
  2. beta | omega    ~  N(m, V),   V^-1 = X' Omega X,   m = V X' kappa.

There is no accept/reject step at the beta level, so every iteration
advances the chain.  The Gaussian draw works in precision form: Cholesky
factor L of V^-1, mean from two triangular solves, noise from one solve of
L' u = xi with xi standard normal.  V is never formed explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_solve, solve_triangular

from .model import AugmentedDataset
from .pg import sample_pg_vector

__all__ = ["ChainConfig", "PosteriorDraws", "step_omega", "step_beta", "run_chain"]


@dataclass(frozen=True)
class ChainConfig:
    """Run-length and reproducibility settings for one chain.

    kept draws = floor((iterations - burn_in) / thin); iteration t (1-based)
    is stored when t > burn_in and (t - burn_in) is a multiple of thin.
    initial_beta defaults to the zero vector.
    """

    iterations: int
    burn_in: int = 0
    thin: int = 1
    seed: int = 0
    initial_beta: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if not (0 <= self.burn_in < self.iterations):
            raise ValueError(
                f"burn_in must lie in [0, iterations), got {self.burn_in}"
            )
        if self.thin < 1:
            raise ValueError(f"thin must be >= 1, got {self.thin}")
        if self.initial_beta is not None:
            beta0 = np.asarray(self.initial_beta, dtype=np.float64)
            if beta0.ndim != 1 or not np.all(np.isfinite(beta0)):
                raise ValueError("initial_beta must be a finite 1-d vector")
            object.__setattr__(self, "initial_beta", beta0)

    @property
    def kept(self) -> int:
        return (self.iterations - self.burn_in) // self.thin


@dataclass(frozen=True)
class PosteriorDraws:
    """Kept coefficient draws (kept x p) plus the config that produced them."""

    draws: np.ndarray
    config: ChainConfig
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        draws = np.asarray(self.draws, dtype=np.float64)
        if draws.ndim != 2:
            raise ValueError(f"draws must be 2-d, got shape {draws.shape}")
        object.__setattr__(self, "draws", draws)
        labels = tuple(self.labels) or tuple(f"beta{j}" for j in range(draws.shape[1]))
        if len(labels) != draws.shape[1]:
            raise ValueError("need one label per coefficient column")
        object.__setattr__(self, "labels", labels)

    @property
    def kept(self) -> int:
        return self.draws.shape[0]

    @property
    def p(self) -> int:
        return self.draws.shape[1]

    def to_csv(self, path) -> None:
        """Write the draws with a header row, full precision."""
        with open(path, "w", newline="") as fh:
            fh.write(",".join(self.labels) + "\n")
            for row in self.draws:
                fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def step_omega(
    aug: AugmentedDataset, beta: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    """Draw omega_i ~ PG(b_i, x_i' beta) for every augmented row."""
    return sample_pg_vector(aug.b, aug.X @ beta, rng)


def step_beta(
    aug: AugmentedDataset, omega: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    """Draw beta ~ N(m, V) with V^-1 = X' Omega X and m = V X' kappa."""
    omega = np.asarray(omega, dtype=np.float64)
    if omega.shape != (aug.n_rows,) or np.any(omega <= 0.0):
        raise ValueError("omega must be a positive vector, one entry per row")
    precision = aug.X.T @ (omega[:, None] * aug.X)
    try:
        chol = np.linalg.cholesky(precision)
    except np.linalg.LinAlgError as err:
        raise np.linalg.LinAlgError(
            "posterior precision is not positive definite; the augmented "
            "design should be full rank by construction"
        ) from err
    mean = cho_solve((chol, True), aug.X.T @ aug.kappa)
    noise = solve_triangular(chol, rng.standard_normal(aug.p), lower=True, trans="T")
    return mean + noise


def run_chain(
    aug: AugmentedDataset,
    config: ChainConfig,
    labels: tuple[str, ...] = (),
) -> PosteriorDraws:
    """Run the two-block sampler and return the kept draws.

    The generator is seeded from config.seed alone, so a given (dataset,
    config) pair reproduces the draws exactly.
    """
    rng = np.random.default_rng(config.seed)
    if config.initial_beta is None:
        beta = np.zeros(aug.p)
    else:
        if config.initial_beta.shape != (aug.p,):
            raise ValueError(
                f"initial_beta has length {config.initial_beta.size}, expected {aug.p}"
            )
        beta = config.initial_beta.copy()
    kept = np.empty((config.kept, aug.p))
    k = 0
    for t in range(1, config.iterations + 1):
        omega = step_omega(aug, beta, rng)
        beta = step_beta(aug, omega, rng)
        if t > config.burn_in and (t - config.burn_in) % config.thin == 0:
            kept[k] = beta
            k += 1
    assert k == config.kept, "every sweep advances; kept count is determined by config"
    return PosteriorDraws(draws=kept, config=config, labels=labels)
