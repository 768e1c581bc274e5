"""Logistic model pieces shared by the sampler and the diagnostics.

The central object is the augmented dataset: real Bernoulli rows and
imaginary binomial rows from the prior, stored uniformly as (x_i, b_i,
kappa_i) with b_i the trial weight and kappa_i = successes_i - b_i / 2.
In that parameterization the log posterior kernel is

    log p(beta | data, prior)  =  sum_i [ s_i t_i - b_i log(1 + e^{t_i}) ],

with t_i = x_i' beta and s_i = kappa_i + b_i / 2 the success count, which is
also the form the Polya-Gamma sampler augments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import expit

from .prior import SyntheticObservation

__all__ = [
    "Dataset",
    "AugmentedRow",
    "AugmentedDataset",
    "augment",
    "log_posterior",
    "log_posterior_grad",
    "predict_prob",
]


def _as_design_matrix(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] == 0 or x.shape[1] == 0:
        raise ValueError(f"design matrix must be 2-d and non-empty, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("design matrix contains non-finite entries")
    return x


def _null_directions(x: np.ndarray) -> list[str]:
    # Human-readable combinations of columns that the rows cannot identify.
    _, s, vt = np.linalg.svd(x)
    tol = max(x.shape) * np.finfo(np.float64).eps * (s[0] if s.size else 0.0)
    out = []
    for i in range(x.shape[1]):
        if i >= s.size or s[i] <= tol:
            v = vt[i]
            terms = [f"{c:+.3f}*x{j}" for j, c in enumerate(v) if abs(c) > 1e-8]
            out.append(" ".join(terms))
    return out


@dataclass(frozen=True)
class Dataset:
    """Real binary observations: design matrix X (n x p) and labels y in {0, 1}."""

    X: np.ndarray
    y: np.ndarray

    def __post_init__(self) -> None:
        x = _as_design_matrix(self.X)
        y = np.asarray(self.y, dtype=np.float64)
        if y.ndim != 1 or y.shape[0] != x.shape[0]:
            raise ValueError(
                f"y must be 1-d with one entry per row of X, got {y.shape} vs {x.shape}"
            )
        if not np.all((y == 0.0) | (y == 1.0)):
            raise ValueError("y must contain only 0 and 1")
        object.__setattr__(self, "X", x)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def p(self) -> int:
        return self.X.shape[1]


@dataclass(frozen=True)
class AugmentedRow:
    """One row in trial-weight form: covariates x, weight b, offset kappa.

    kappa = successes - b / 2, so |kappa| <= b / 2 always holds.  A real
    observation has b = 1 and kappa = y - 1/2; an imaginary prior row has
    b = a + b trials and kappa = a - b_trials / 2.
    """

    x: np.ndarray
    b: float
    kappa: float

    def __post_init__(self) -> None:
        x = np.atleast_1d(np.asarray(self.x, dtype=np.float64))
        if x.ndim != 1 or not np.all(np.isfinite(x)):
            raise ValueError("row covariates must be a finite 1-d vector")
        object.__setattr__(self, "x", x)
        if not (math.isfinite(self.b) and self.b > 0.0):
            raise ValueError(f"trial weight b must be positive, got {self.b}")
        if abs(self.kappa) > 0.5 * self.b:
            raise ValueError(f"kappa must satisfy |kappa| <= b/2, got {self.kappa} with b={self.b}")

    @property
    def successes(self) -> float:
        return self.kappa + 0.5 * self.b


class AugmentedDataset:
    """Real rows followed by imaginary prior rows, in trial-weight form.

    Construction requires the stacked design to have full column rank, which
    guarantees the conditional Gaussian draw of the sampler is well defined
    regardless of the drawn weights.
    """

    def __init__(
        self,
        X: np.ndarray,
        b: np.ndarray,
        kappa: np.ndarray,
        n_real: int,
    ):
        X = _as_design_matrix(X)
        b = np.asarray(b, dtype=np.float64)
        kappa = np.asarray(kappa, dtype=np.float64)
        m = X.shape[0]
        if b.shape != (m,) or kappa.shape != (m,):
            raise ValueError("b and kappa must be 1-d with one entry per row")
        if not np.all(np.isfinite(b)) or np.any(b <= 0.0):
            raise ValueError("trial weights must be finite and positive")
        if np.any(np.abs(kappa) > 0.5 * b):
            raise ValueError("every row must satisfy |kappa| <= b/2")
        if not (0 <= n_real <= m):
            raise ValueError(f"n_real must lie in [0, {m}], got {n_real}")
        if np.linalg.matrix_rank(X) < X.shape[1]:
            bad = "; ".join(_null_directions(X))
            raise ValueError(
                "augmented design is rank deficient: no information about "
                f"direction(s) {bad}"
            )
        self.X = X
        self.b = b
        self.kappa = kappa
        self.n_real = int(n_real)

    @property
    def n_rows(self) -> int:
        return self.X.shape[0]

    @property
    def p(self) -> int:
        return self.X.shape[1]

    @property
    def n_synthetic(self) -> int:
        return self.n_rows - self.n_real

    @property
    def integer_weights(self) -> bool:
        """True when every trial weight is an integer, i.e. PG draws are exact."""
        return bool(np.array_equal(np.floor(self.b), self.b))

    @property
    def rows(self) -> list[AugmentedRow]:
        return [
            AugmentedRow(x=self.X[i], b=float(self.b[i]), kappa=float(self.kappa[i]))
            for i in range(self.n_rows)
        ]


def augment(
    data: Dataset | None, synthetic: Sequence[SyntheticObservation]
) -> AugmentedDataset:
    """Stack real rows (b = 1, kappa = y - 1/2) and imaginary prior rows.

    Real rows come first, prior rows after, preserving both input orders.
    Either part may be empty, but not both, and the stacked design must have
    full column rank.
    """
    blocks_x, blocks_b, blocks_k = [], [], []
    n_real = 0
    if data is not None and data.n > 0:
        blocks_x.append(data.X)
        blocks_b.append(np.ones(data.n))
        blocks_k.append(data.y - 0.5)
        n_real = data.n
    for obs in synthetic:
        blocks_x.append(obs.x[None, :])
        blocks_b.append(np.array([obs.trials]))
        blocks_k.append(np.array([obs.successes - 0.5 * obs.trials]))
    if not blocks_x:
        raise ValueError("augmentation needs at least one real or synthetic row")
    return AugmentedDataset(
        X=np.vstack(blocks_x),
        b=np.concatenate(blocks_b),
        kappa=np.concatenate(blocks_k),
        n_real=n_real,
    )


def log_posterior(beta: np.ndarray, aug: AugmentedDataset) -> float:
    """Unnormalized log posterior sum_i [s_i t_i - b_i log(1 + e^{t_i})].

    log(1 + e^t) is evaluated as logaddexp(0, t), so the result is finite
    for any finite beta.
    """
    beta = np.asarray(beta, dtype=np.float64)
    t = aug.X @ beta
    s = aug.kappa + 0.5 * aug.b
    return float(np.sum(s * t) - np.sum(aug.b * np.logaddexp(0.0, t)))


def log_posterior_grad(beta: np.ndarray, aug: AugmentedDataset) -> np.ndarray:
    """Gradient of log_posterior: X' (s - b * sigmoid(X beta))."""
    beta = np.asarray(beta, dtype=np.float64)
    t = aug.X @ beta
    s = aug.kappa + 0.5 * aug.b
    return aug.X.T @ (s - aug.b * expit(t))


def predict_prob(beta: np.ndarray, x: np.ndarray) -> float:
    """Response probability sigmoid(x' beta) for one covariate vector."""
    return float(expit(np.dot(np.asarray(x, dtype=np.float64), beta)))
