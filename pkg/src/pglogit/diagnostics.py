"""Chain diagnostics and posterior summaries.

Effective sample size follows Geyer (1992): the lag sums of adjacent
autocorrelation pairs are truncated at the first non-positive pair and
forced monotone non-increasing (the initial monotone positive sequence),
giving a conservative estimate for reversible chains.  Convergence is
screened with the Geweke (1992) z score comparing the first 10% of the
chain against the last 50%, with window variances from batch means.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .gibbs import PosteriorDraws

__all__ = [
    "ess",
    "geweke_z",
    "credible_interval",
    "decision_prob",
    "ed50_posterior",
    "Ed50Summary",
    "CoefficientSummary",
    "ProbabilitySummary",
    "ChainSummary",
    "summarize_chain",
]

# ESS is clamped to (0, kept * (1 + _ESS_SLACK)]: tiny negative-correlation
# estimates can push the raw value just above the number of draws.
_ESS_SLACK = 0.05


def _autocorrelation(x: np.ndarray) -> np.ndarray:
    # Biased-normalization autocovariance via FFT, returned as correlation.
    n = x.size
    x = x - x.mean()
    size = 1 << (2 * n - 1).bit_length()
    f = np.fft.rfft(x, size)
    acov = np.fft.irfft(f * np.conjugate(f), size)[:n].real / n
    return acov / acov[0]


def ess(series: np.ndarray) -> float:
    """Effective sample size of one scalar chain (Geyer initial monotone).

    Requires at least 10 points and a non-constant series.  The result is
    clamped to (0, N * 1.05] so small-sample noise cannot report more
    information than the draws contain.
    """
    x = np.asarray(series, dtype=np.float64)
    if x.ndim != 1 or x.size < 10:
        raise ValueError(f"ess needs a 1-d series of at least 10 points, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("series contains non-finite values")
    n = x.size
    if np.all(x == x[0]):
        raise ValueError("ess is undefined for a constant series")
    rho = _autocorrelation(x)
    # Sum adjacent pairs; keep while positive, then enforce monotonicity.
    n_pairs = (n - 1) // 2
    pair_sum = 0.0
    running_min = math.inf
    for m in range(n_pairs):
        gamma = rho[2 * m] + rho[2 * m + 1]
        if gamma <= 0.0:
            break
        running_min = min(running_min, gamma)
        pair_sum += running_min
    tau = 2.0 * pair_sum - 1.0
    if tau <= 0.0:
        return n * (1.0 + _ESS_SLACK)
    return float(min(n / tau, n * (1.0 + _ESS_SLACK)))


def _batch_means_var(window: np.ndarray) -> float:
    # Variance of the window mean estimated from up to 20 batch means.
    k = min(20, window.size)
    m = window.size // k
    batches = window[: k * m].reshape(k, m).mean(axis=1)
    if k < 2:
        return 0.0
    return float(np.var(batches, ddof=1) / k)


def geweke_z(series: np.ndarray) -> float:
    """Geweke z comparing the first 10% of draws to the last 50%.

    Values outside roughly [-2, 2] suggest the early chain has not reached
    the region the late chain explores.  Requires at least 100 points.
    """
    x = np.asarray(series, dtype=np.float64)
    if x.ndim != 1 or x.size < 100:
        raise ValueError(f"geweke_z needs a 1-d series of at least 100 points, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("series contains non-finite values")
    n = x.size
    first = x[: max(1, n // 10)]
    last = x[-(n // 2):]
    diff = first.mean() - last.mean()
    denom = _batch_means_var(first) + _batch_means_var(last)
    if denom == 0.0:
        return 0.0 if diff == 0.0 else math.copysign(math.inf, diff)
    return float(diff / math.sqrt(denom))


def credible_interval(series: np.ndarray, level: float) -> tuple[float, float]:
    """Equal-tailed credible interval from empirical quantiles.

    Uses linearly interpolated quantiles at (1 - level)/2 and (1 + level)/2.
    """
    x = np.asarray(series, dtype=np.float64)
    if x.ndim != 1 or x.size < 2:
        raise ValueError("credible_interval needs a 1-d series of at least 2 points")
    if not (0.0 < level < 1.0):
        raise ValueError(f"level must lie strictly in (0, 1), got {level}")
    lo, hi = np.quantile(x, [(1.0 - level) / 2.0, (1.0 + level) / 2.0])
    return float(lo), float(hi)


def decision_prob(
    draws: PosteriorDraws,
    x_dose: np.ndarray,
    x_ref: np.ndarray,
    delta: float,
) -> float:
    """Posterior probability that p(x_dose) exceeds p(x_ref) by more than delta.

    Computed as the fraction of kept draws with sigmoid(x_dose' beta) -
    sigmoid(x_ref' beta) > delta; a Monte Carlo estimate of the decision
    quantity used for dose selection.
    """
    x_dose = np.asarray(x_dose, dtype=np.float64)
    x_ref = np.asarray(x_ref, dtype=np.float64)
    if x_dose.shape != (draws.p,) or x_ref.shape != (draws.p,):
        raise ValueError(
            f"query points must have length {draws.p}, got {x_dose.shape} and {x_ref.shape}"
        )
    if draws.kept == 0:
        raise ValueError("decision_prob needs at least one kept draw")
    uplift = expit(draws.draws @ x_dose) - expit(draws.draws @ x_ref)
    return float(np.mean(uplift > delta))


@dataclass(frozen=True)
class Ed50Summary:
    """Posterior summary of the dose -beta0/beta1 giving a 50% response rate.

    The per-draw ratio is heavy tailed whenever the slope has mass near
    zero, so the median and equal-tailed interval are the stable summaries;
    the mean is reported for completeness but should be read with care.
    """

    median: float
    lo: float
    hi: float
    mean: float
    level: float


def ed50_posterior(draws: PosteriorDraws, level: float = 0.95) -> Ed50Summary:
    """Summarize -beta0/beta1 over the kept draws of a two-coefficient model.

    Errors out when 1% or more of the slope draws sit within 1e-8 of zero:
    the ratio is then numerically unstable and no summary is trustworthy.
    """
    if draws.p != 2:
        raise ValueError(f"ed50 is defined for exactly 2 coefficients, got {draws.p}")
    if draws.kept == 0:
        raise ValueError("ed50_posterior needs at least one kept draw")
    slope = draws.draws[:, 1]
    near_zero = np.mean(np.abs(slope) < 1e-8)
    if near_zero >= 0.01:
        raise ValueError(
            f"{100 * near_zero:.1f}% of slope draws are within 1e-8 of zero; "
            "the dose at 50% response is unstable for this posterior"
        )
    ratio = -draws.draws[:, 0] / slope
    lo, hi = credible_interval(ratio, level)
    return Ed50Summary(
        median=float(np.median(ratio)),
        lo=lo,
        hi=hi,
        mean=float(np.mean(ratio)),
        level=level,
    )


@dataclass(frozen=True)
class CoefficientSummary:
    name: str
    mean: float
    sd: float
    ess: float
    geweke_z: float


@dataclass(frozen=True)
class ProbabilitySummary:
    x: tuple[float, ...]
    mean: float
    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.lo <= self.hi <= 1.0):
            raise ValueError(
                f"probability interval must satisfy 0 <= lo <= hi <= 1, got [{self.lo}, {self.hi}]"
            )

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class ChainSummary:
    coefficients: tuple[CoefficientSummary, ...]
    probabilities: tuple[ProbabilitySummary, ...]
    level: float


def summarize_chain(
    draws: PosteriorDraws,
    query_points: np.ndarray | None = None,
    level: float = 0.95,
) -> ChainSummary:
    """Per-coefficient moments and diagnostics, plus response-probability
    summaries at optional query points (rows of covariates)."""
    coefficients = []
    for j, name in enumerate(draws.labels):
        series = draws.draws[:, j]
        coefficients.append(
            CoefficientSummary(
                name=name,
                mean=float(series.mean()),
                sd=float(series.std(ddof=1)),
                ess=ess(series),
                geweke_z=geweke_z(series),
            )
        )
    probabilities = []
    if query_points is not None:
        query_points = np.atleast_2d(np.asarray(query_points, dtype=np.float64))
        if query_points.shape[1] != draws.p:
            raise ValueError(
                f"query points must have {draws.p} columns, got {query_points.shape[1]}"
            )
        for x in query_points:
            probs = expit(draws.draws @ x)
            lo, hi = credible_interval(probs, level)
            probabilities.append(
                ProbabilitySummary(x=tuple(x), mean=float(probs.mean()), lo=lo, hi=hi)
            )
    return ChainSummary(
        coefficients=tuple(coefficients),
        probabilities=tuple(probabilities),
        level=level,
    )
