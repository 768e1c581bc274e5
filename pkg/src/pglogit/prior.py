"""Conditional-means priors expressed as pseudo-data.

Following Bedrick, Christensen & Johnson (1996), a prior for logistic
regression coefficients is elicited on the probability scale: at each of a
set of design points x~_j the analyst states a Beta(a_j, b_j) belief about
the response probability.  Each assessment acts exactly like an imaginary
binomial observation at x~_j with a_j successes in a_j + b_j trials, so the
induced prior density on beta is

    p(beta)  proportional to  prod_j sigmoid(x~_j' beta)^a_j
                                     * (1 - sigmoid(x~_j' beta))^b_j,

and posterior updating reduces to appending these pseudo-rows to the data.
When the design points span coefficient space and every weight a_j + b_j is
at least 1, the induced prior is proper.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
import scipy.linalg

__all__ = [
    "DesignPoint",
    "ConditionalMeansPrior",
    "SyntheticObservation",
    "PriorValidation",
    "BetaBinomialPosterior",
    "elicit_from_mean_and_weight",
    "to_synthetic",
    "validate_prior",
    "beta_binomial_posterior",
]

# Relative tolerance for rank decisions in validate_prior.
_RANK_RTOL = 1e-10


@dataclass(frozen=True)
class DesignPoint:
    """One elicitation: a Beta(a, b) belief about P(y = 1) at covariates x.

    a and b must be positive (they need not be integers); x must be finite.
    The implied prior mean is a / (a + b) and the implied weight, the number
    of imaginary trials the assessment is worth, is a + b.
    """

    x: np.ndarray
    a: float
    b: float

    def __post_init__(self) -> None:
        x = np.atleast_1d(np.asarray(self.x, dtype=np.float64))
        if x.ndim != 1 or x.size == 0 or not np.all(np.isfinite(x)):
            raise ValueError("design point covariates must be a finite 1-d vector")
        object.__setattr__(self, "x", x)
        if not (math.isfinite(self.a) and self.a > 0.0):
            raise ValueError(f"Beta parameter a must be positive, got {self.a}")
        if not (math.isfinite(self.b) and self.b > 0.0):
            raise ValueError(f"Beta parameter b must be positive, got {self.b}")

    @property
    def mean(self) -> float:
        return self.a / (self.a + self.b)

    @property
    def weight(self) -> float:
        return self.a + self.b


@dataclass(frozen=True)
class ConditionalMeansPrior:
    """A collection of Beta assessments at design points, one per row.

    All design points must share the same covariate dimension p.  The prior
    is proper when the stacked design-point matrix has rank p and every
    weight is at least one imaginary trial; use validate_prior to check.
    """

    points: tuple[DesignPoint, ...]

    def __init__(self, points: Sequence[DesignPoint]):
        points = tuple(points)
        if not points:
            raise ValueError("a conditional-means prior needs at least one design point")
        p = points[0].x.size
        for j, pt in enumerate(points):
            if pt.x.size != p:
                raise ValueError(
                    f"design point {j} has dimension {pt.x.size}, expected {p}"
                )
        object.__setattr__(self, "points", points)

    @property
    def p(self) -> int:
        return self.points[0].x.size

    @property
    def design_matrix(self) -> np.ndarray:
        return np.vstack([pt.x for pt in self.points])

    @property
    def weights(self) -> np.ndarray:
        return np.array([pt.weight for pt in self.points])


@dataclass(frozen=True)
class SyntheticObservation:
    """An imaginary binomial row: `successes` out of `trials` at covariates x.

    Unlike real data the counts may be fractional; they must satisfy
    trials > 0 and 0 <= successes <= trials.
    """

    x: np.ndarray
    trials: float
    successes: float

    def __post_init__(self) -> None:
        x = np.atleast_1d(np.asarray(self.x, dtype=np.float64))
        if x.ndim != 1 or x.size == 0 or not np.all(np.isfinite(x)):
            raise ValueError("synthetic observation covariates must be a finite 1-d vector")
        object.__setattr__(self, "x", x)
        if not (math.isfinite(self.trials) and self.trials > 0.0):
            raise ValueError(f"trials must be positive, got {self.trials}")
        if not (0.0 <= self.successes <= self.trials):
            raise ValueError(
                f"successes must lie in [0, trials], got {self.successes} of {self.trials}"
            )


class BetaBinomialPosterior(NamedTuple):
    a: float
    b: float
    mean: float


@dataclass(frozen=True)
class PriorValidation:
    """Structural report on a conditional-means prior.

    proper requires the design points to span coefficient space (rank == p)
    and every assessment to carry at least one imaginary trial.  More points
    than coefficients is legal over-determination; its pull toward the prior
    means resembles a ridge penalty rather than a conjugate update.
    """

    n_points: int
    p: int
    rank: int
    proper: bool
    over_determined: bool
    under_determined: bool
    min_weight: float


def elicit_from_mean_and_weight(
    mean: float, weight: float, x: np.ndarray
) -> DesignPoint:
    """Convert a (prior mean, imaginary-trials weight) assessment to Beta form.

    a = mean * weight and b = (1 - mean) * weight.  mean must lie strictly
    inside (0, 1): an analyst certain of the outcome produces an improper
    Beta and is rejected rather than clipped.
    """
    mean = float(mean)
    weight = float(weight)
    if not (0.0 < mean < 1.0):
        raise ValueError(f"prior mean must lie strictly in (0, 1), got {mean}")
    if not (math.isfinite(weight) and weight > 0.0):
        raise ValueError(f"prior weight must be positive, got {weight}")
    return DesignPoint(x=x, a=mean * weight, b=(1.0 - mean) * weight)


def to_synthetic(prior: ConditionalMeansPrior) -> list[SyntheticObservation]:
    """Rewrite each Beta(a, b) assessment as an imaginary binomial row.

    Beta(a_j, b_j) at x~_j contributes a_j successes in a_j + b_j trials;
    the order of the design points is preserved.
    """
    return [
        SyntheticObservation(x=pt.x, trials=pt.weight, successes=pt.a)
        for pt in prior.points
    ]


def validate_prior(prior: ConditionalMeansPrior) -> PriorValidation:
    """Report rank and properness of the prior's design-point system.

    Rank comes from a pivoted QR of the stacked design points, counting
    diagonal entries of R above 1e-10 times the largest.
    """
    x = prior.design_matrix
    r = scipy.linalg.qr(x, mode="r", pivoting=True)[0]
    diag = np.abs(np.diag(r))
    if diag.size == 0 or diag[0] == 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(diag > _RANK_RTOL * diag[0]))
    p = prior.p
    min_weight = float(prior.weights.min())
    return PriorValidation(
        n_points=len(prior.points),
        p=p,
        rank=rank,
        proper=(rank == p) and min_weight >= 1.0,
        over_determined=len(prior.points) > p,
        under_determined=rank < p,
        min_weight=min_weight,
    )


def beta_binomial_posterior(
    a: float, b: float, successes: float, n: float
) -> BetaBinomialPosterior:
    """Conjugate update of a Beta(a, b) belief by `successes` of `n` trials.

    Returns Beta(a + successes, b + n - successes) and its mean.  For an
    intercept-only logistic model this is the exact posterior of the response
    probability, which makes it a convenient oracle for sampler checks.
    """
    if not (math.isfinite(a) and a > 0.0 and math.isfinite(b) and b > 0.0):
        raise ValueError(f"Beta parameters must be positive, got a={a}, b={b}")
    if not (0.0 <= successes <= n):
        raise ValueError(f"successes must lie in [0, n], got {successes} of {n}")
    a_post = a + successes
    b_post = b + (n - successes)
    return BetaBinomialPosterior(a_post, b_post, a_post / (a_post + b_post))
