"""Ridge regression two ways: penalty form and pseudo-data form.

Ridge is the linear-model analogue of the pseudo-data prior construction
used for the logistic model: minimizing ||y - X beta||^2 + lambda ||beta||^2
is exactly ordinary least squares on the data augmented with sqrt(lambda)
times the identity as imaginary rows with zero responses,

    X_aug = [X; sqrt(lambda) I],   y_aug = [y; 0],

because X_aug' X_aug = X' X + lambda I and X_aug' y_aug = X' y.  The two
solvers below follow deliberately different routes (Cholesky on the normal
equations versus least squares on the stacked system) so agreement is a
meaningful check rather than a tautology.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

__all__ = ["RidgeProblem", "augmented_system", "ridge_closed_form", "ridge_augmented"]


@dataclass(frozen=True)
class RidgeProblem:
    """Design X (n x p), response y (n,), and penalty lam >= 0."""

    X: np.ndarray
    y: np.ndarray
    lam: float

    def __post_init__(self) -> None:
        x = np.asarray(self.X, dtype=np.float64)
        y = np.asarray(self.y, dtype=np.float64)
        if x.ndim != 2 or x.shape[0] == 0 or x.shape[1] == 0:
            raise ValueError(f"X must be 2-d and non-empty, got shape {x.shape}")
        if y.shape != (x.shape[0],):
            raise ValueError(f"y must be 1-d with {x.shape[0]} entries, got {y.shape}")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise ValueError("X and y must be finite")
        if not (math.isfinite(self.lam) and self.lam >= 0.0):
            raise ValueError(f"penalty must be non-negative, got {self.lam}")
        object.__setattr__(self, "X", x)
        object.__setattr__(self, "y", y)

    @property
    def p(self) -> int:
        return self.X.shape[1]


def augmented_system(prob: RidgeProblem) -> tuple[np.ndarray, np.ndarray]:
    """The stacked design [X; sqrt(lam) I] and response [y; 0]."""
    root = math.sqrt(prob.lam)
    x_aug = np.vstack([prob.X, root * np.eye(prob.p)])
    y_aug = np.concatenate([prob.y, np.zeros(prob.p)])
    return x_aug, y_aug


def ridge_closed_form(prob: RidgeProblem) -> np.ndarray:
    """Solve (X'X + lam I) beta = X'y by Cholesky.

    Requires X'X + lam I positive definite, which holds for any lam > 0 and
    for lam = 0 when X has full column rank.
    """
    gram = prob.X.T @ prob.X + prob.lam * np.eye(prob.p)
    try:
        factor = cho_factor(gram)
    except np.linalg.LinAlgError as err:
        raise np.linalg.LinAlgError(
            "X'X + lam I is not positive definite; use lam > 0 or a full-rank X"
        ) from err
    return cho_solve(factor, prob.X.T @ prob.y)


def ridge_augmented(prob: RidgeProblem) -> np.ndarray:
    """Solve the same problem as unpenalized least squares on pseudo-rows.

    Requires lam > 0 so the stacked design always has full column rank.
    """
    if prob.lam <= 0.0:
        raise ValueError("the pseudo-data route needs lam > 0")
    x_aug, y_aug = augmented_system(prob)
    beta, *_ = np.linalg.lstsq(x_aug, y_aug, rcond=None)
    return beta
