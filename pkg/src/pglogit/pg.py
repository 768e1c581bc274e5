"""Exact sampling from the Polya-Gamma distribution PG(b, z).

A PG(b, z) variate is an infinite weighted sum of gammas,

    omega  =  (1 / (2 pi^2)) * sum_{k>=1}  g_k / ((k - 1/2)^2 + z^2 / (4 pi^2)),

with g_k ~ Gamma(b, 1) independent (Polson, Scott & Windle, 2013).  Its
defining property for logistic models is the mixture identity

    exp(psi)^a / (1 + exp(psi))^b
        = 2^-b * exp(kappa psi) * E[exp(-omega psi^2 / 2)],   kappa = a - b/2,

which turns a Bernoulli/binomial likelihood in psi into a Gaussian one
conditional on omega.

PG(1, z) is drawn exactly with the alternating-series rejection sampler of
Devroye (2009), as adapted by Polson, Scott & Windle: proposals come from a
two-piece mixture of a truncated inverse-Gaussian (left of the truncation
point t = 0.64) and a truncated exponential (right of it), and partial sums
of the series coefficients decide acceptance after finitely many terms.
Integer b >= 1 is the sum of b independent PG(1, z) draws and is therefore
exact as well.  Non-integer b >= 1 falls back to a truncated sum-of-gammas
draw with a mean-matching tail correction and is approximate; callers that
need to know which regime they are in can test ``float(b).is_integer()``.

The rejection kernels are numba-compiled and consume a shared
``numpy.random.Generator``, so a given seed reproduces the same draws
bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

__all__ = ["PgParams", "sample_pg1", "sample_pg", "sample_pg_vector", "pg_mean"]

# Truncation point of the two-piece proposal.  Devroye shows any t in
# [0.25, 1] works; 0.64 approximately balances the two pieces at z = 0.
_TRUNC = 0.64
_TRUNC_RECIP = 1.0 / _TRUNC

# Number of leading gamma terms drawn explicitly for non-integer b.
_GAMMA_TERMS = 200


@dataclass(frozen=True)
class PgParams:
    """Parameter pair (b, z) of a Polya-Gamma distribution.

    b is the shape (number of Bernoulli trials when used for logistic
    augmentation) and z the tilt.  b must be positive and both entries
    finite; the distribution is symmetric in the sign of z.
    """

    b: float
    z: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.b) and self.b > 0.0):
            raise ValueError(f"PG shape b must be positive and finite, got {self.b}")
        if not math.isfinite(self.z):
            raise ValueError(f"PG tilt z must be finite, got {self.z}")

    @property
    def mean(self) -> float:
        return pg_mean(self.b, self.z)


@njit(cache=True)
def _log_norm_cdf(x):
    # log Phi(x); asymptotic expansion in the far left tail where erfc underflows.
    if x > -10.0:
        return math.log(0.5 * math.erfc(-x / math.sqrt(2.0)))
    x2 = x * x
    return (
        -0.5 * x2
        - math.log(-x)
        - 0.5 * math.log(2.0 * math.pi)
        + math.log1p(-1.0 / x2 + 3.0 / (x2 * x2))
    )


@njit(cache=True)
def _mass_texpon(z):
    # Probability that the accepted proposal comes from the truncated
    # exponential (right) piece rather than the inverse-Gaussian (left) piece.
    t = _TRUNC
    k = 0.125 * math.pi * math.pi + 0.5 * z * z
    b = (t * z - 1.0) / math.sqrt(t)
    a = -(t * z + 1.0) / math.sqrt(t)
    x0 = math.log(k) + k * t
    xb = x0 - z + _log_norm_cdf(b)
    xa = x0 + z + _log_norm_cdf(a)
    if xb > 700.0 or xa > 700.0:
        # Right-piece mass is numerically zero for very large tilts.
        return 0.0
    qdivp = 4.0 / math.pi * (math.exp(xb) + math.exp(xa))
    return 1.0 / (1.0 + qdivp)


@njit(cache=True)
def _rtigauss(z, rng):
    # Inverse-Gaussian IG(1/z, 1) truncated to (0, t].  For small z the
    # one-sided rejection of Devroye is used; otherwise draw IG by the
    # Michael-Schucany-Haas transform until the draw lands in (0, t].
    t = _TRUNC
    x = t + 1.0
    if _TRUNC_RECIP > z:
        alpha = 0.0
        while rng.random() > alpha:
            e1 = rng.standard_exponential()
            e2 = rng.standard_exponential()
            while e1 * e1 > 2.0 * e2 / t:
                e1 = rng.standard_exponential()
                e2 = rng.standard_exponential()
            x = t / ((1.0 + t * e1) * (1.0 + t * e1))
            alpha = math.exp(-0.5 * z * z * x)
    else:
        mu = 1.0 / z
        while x > t:
            y = rng.standard_normal()
            y *= y
            mu_y = mu * y
            x = mu + 0.5 * mu * mu_y - 0.5 * mu * math.sqrt(4.0 * mu_y + mu_y * mu_y)
            if rng.random() > mu / (mu + x):
                x = mu * mu / x
    return x


@njit(cache=True)
def _series_coef(n, x):
    # Coefficient a_n(x) of the alternating series for the J*(1, z) density,
    # in the form appropriate for each side of the truncation point.
    d = n + 0.5
    if x > _TRUNC:
        return math.pi * d * math.exp(-0.5 * d * d * math.pi * math.pi * x)
    return math.pi * d * math.pow(2.0 / (math.pi * x), 1.5) * math.exp(-2.0 * d * d / x)


@njit(cache=True)
def _draw_pg1(psi, rng):
    # One exact PG(1, psi) draw.  PG(1, psi) = X / 4 with X ~ J*(1, |psi| / 2).
    z = 0.5 * abs(psi)
    k = 0.125 * math.pi * math.pi + 0.5 * z * z
    p_right = _mass_texpon(z)
    while True:
        if rng.random() < p_right:
            x = _TRUNC + rng.standard_exponential() / k
        else:
            x = _rtigauss(z, rng)
        # Accept/reject by squeezing the alternating series between its
        # partial sums; termination is a.s. after finitely many terms.
        s = _series_coef(0, x)
        y = rng.random() * s
        n = 0
        while True:
            n += 1
            if n % 2 == 1:
                s -= _series_coef(n, x)
                if y <= s:
                    return 0.25 * x
            else:
                s += _series_coef(n, x)
                if y > s:
                    break


@njit(cache=True)
def _draw_pg_int(b, psi, rng):
    total = 0.0
    for _ in range(b):
        total += _draw_pg1(psi, rng)
    return total


@njit(cache=True)
def _draw_pg_int_vector(b, psi, rng, out):
    for i in range(psi.shape[0]):
        out[i] = _draw_pg_int(b[i], psi[i], rng)


def _draw_pg_frac(frac, z, rng):
    # Truncated sum-of-gammas draw for the fractional part frac in (0, 1),
    # plus the expected mass of the dropped tail so the mean is exact.
    k = np.arange(1, _GAMMA_TERMS + 1)
    denom = (k - 0.5) ** 2 + (z / (2.0 * math.pi)) ** 2
    g = rng.gamma(frac, size=_GAMMA_TERMS)
    draw = float(np.sum(g / denom)) / (2.0 * math.pi**2)
    truncated_mean = frac * float(np.sum(1.0 / denom)) / (2.0 * math.pi**2)
    return draw + (pg_mean(frac, z) - truncated_mean)


def _check_tilt(z: float) -> float:
    z = float(z)
    if not math.isfinite(z):
        raise ValueError(f"PG tilt z must be finite, got {z}")
    return z


def sample_pg1(z: float, rng: np.random.Generator) -> float:
    """Draw one exact PG(1, z) variate."""
    return float(_draw_pg1(_check_tilt(z), rng))


def sample_pg(b: float, z: float, rng: np.random.Generator) -> float:
    """Draw one PG(b, z) variate for b >= 1.

    Integer b is drawn exactly by convolution of PG(1, z) draws.  Non-integer
    b adds an approximate draw of the fractional part from the truncated
    sum-of-gammas representation (200 terms, mean-matched tail).  b < 1 is
    outside the supported domain and raises ``ValueError``.
    """
    b = float(b)
    z = _check_tilt(z)
    if not math.isfinite(b) or b < 1.0:
        raise ValueError(f"PG shape b must be >= 1, got {b}")
    n_whole = math.floor(b)
    total = float(_draw_pg_int(n_whole, z, rng))
    frac = b - n_whole
    if frac > 0.0:
        total += _draw_pg_frac(frac, z, rng)
    return total


def sample_pg_vector(
    b: np.ndarray, z: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    """Draw PG(b[i], z[i]) for each row, sequentially from a shared stream.

    All shapes b[i] must be >= 1.  When every shape is an integer the whole
    batch runs in the compiled kernel; otherwise rows are drawn one by one.
    """
    b = np.asarray(b, dtype=np.float64)
    z = np.ascontiguousarray(z, dtype=np.float64)
    if b.shape != z.shape or b.ndim != 1:
        raise ValueError(f"b and z must be 1-d of equal length, got {b.shape} and {z.shape}")
    if not np.all(np.isfinite(z)):
        raise ValueError("PG tilt vector contains non-finite entries")
    if not np.all(np.isfinite(b)) or np.any(b < 1.0):
        raise ValueError("all PG shapes must be finite and >= 1")
    out = np.empty_like(z)
    b_whole = np.floor(b)
    if np.array_equal(b_whole, b):
        _draw_pg_int_vector(b_whole.astype(np.int64), z, rng, out)
        return out
    for i in range(z.shape[0]):
        out[i] = sample_pg(b[i], z[i], rng)
    return out


def pg_mean(b: float, z: float) -> float:
    """E[omega] for omega ~ PG(b, z): (b / (2 z)) * tanh(z / 2).

    The removable singularity at z = 0 is handled by the even Taylor series
    b/4 - b z^2 / 48, used for |z| < 1e-8; the mean is an even function of z.
    """
    b = float(b)
    z = float(z)
    if not (math.isfinite(b) and b > 0.0):
        raise ValueError(f"PG shape b must be positive and finite, got {b}")
    if not math.isfinite(z):
        raise ValueError(f"PG tilt z must be finite, got {z}")
    if abs(z) < 1e-8:
        return b / 4.0 - b * z * z / 48.0
    return (b / (2.0 * z)) * math.tanh(0.5 * z)
