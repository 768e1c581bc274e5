"""Gibbs sampler: chain bookkeeping, the exact Gaussian step, conjugacy."""

import numpy as np
import pytest
from scipy.special import expit

from pglogit import (
    ChainConfig,
    ConditionalMeansPrior,
    Dataset,
    DesignPoint,
    PosteriorDraws,
    augment,
    run_chain,
    step_beta,
    step_omega,
    to_synthetic,
)
from pglogit.fileio import read_draws_csv


def _aug(n=20, p=3, seed=0):
    rng = np.random.default_rng(seed)
    x = np.column_stack([np.ones(n), rng.standard_normal((n, p - 1))])
    y = (rng.random(n) < 0.5).astype(float)
    return augment(Dataset(X=x, y=y), [])


# ---------------------------------------------------------------------------
# Configuration bookkeeping.
# ---------------------------------------------------------------------------


def test_kept_count_accounts_for_burn_in_and_thinning():
    assert ChainConfig(iterations=100, burn_in=10, thin=3).kept == 30
    assert ChainConfig(iterations=100, burn_in=0, thin=1).kept == 100
    assert ChainConfig(iterations=101, burn_in=1, thin=10).kept == 10


def test_chain_config_rejects_bad_settings():
    with pytest.raises(ValueError):
        ChainConfig(iterations=0)
    with pytest.raises(ValueError):
        ChainConfig(iterations=10, burn_in=10)
    with pytest.raises(ValueError):
        ChainConfig(iterations=10, burn_in=-1)
    with pytest.raises(ValueError):
        ChainConfig(iterations=10, thin=0)
    with pytest.raises(ValueError):
        ChainConfig(iterations=10, initial_beta=np.array([np.nan]))


def test_run_chain_respects_kept_and_labels():
    aug = _aug()
    cfg = ChainConfig(iterations=50, burn_in=20, thin=3, seed=1)
    draws = run_chain(aug, cfg, labels=("a", "b", "c"))
    assert draws.draws.shape == (cfg.kept, 3)
    assert draws.labels == ("a", "b", "c")
    assert draws.kept == cfg.kept


def test_thinning_subsamples_the_unthinned_chain():
    aug = _aug(seed=5)
    dense = run_chain(aug, ChainConfig(iterations=40, burn_in=10, thin=1, seed=9))
    thinned = run_chain(aug, ChainConfig(iterations=40, burn_in=10, thin=5, seed=9))
    # Same seed, same sweep sequence: the thinned chain keeps sweeps 15, 20, ...
    assert np.array_equal(thinned.draws, dense.draws[4::5])


def test_initial_beta_must_match_dimension():
    aug = _aug(p=3)
    cfg = ChainConfig(iterations=5, initial_beta=np.zeros(2))
    with pytest.raises(ValueError):
        run_chain(aug, cfg)


def test_posterior_draws_validation_and_default_labels():
    draws = PosteriorDraws(draws=np.zeros((4, 2)), config=ChainConfig(iterations=4))
    assert draws.labels == ("beta0", "beta1")
    with pytest.raises(ValueError):
        PosteriorDraws(
            draws=np.zeros((4, 2)), config=ChainConfig(iterations=4), labels=("x",)
        )
    with pytest.raises(ValueError):
        PosteriorDraws(draws=np.zeros(4), config=ChainConfig(iterations=4))


def test_draws_csv_round_trip_preserves_values(tmp_path):
    aug = _aug(seed=2)
    draws = run_chain(aug, ChainConfig(iterations=20, burn_in=5, seed=3))
    path = tmp_path / "draws.csv"
    draws.to_csv(path)
    loaded, labels = read_draws_csv(path)
    assert labels == draws.labels
    assert np.array_equal(loaded, draws.draws)  # %.17g is lossless for float64


# ---------------------------------------------------------------------------
# The two conditional draws.
# ---------------------------------------------------------------------------


def test_step_omega_draws_one_positive_weight_per_row():
    aug = _aug(n=15)
    omega = step_omega(aug, np.zeros(aug.p), np.random.default_rng(0))
    assert omega.shape == (aug.n_rows,)
    assert np.all(omega > 0.0)


def test_step_beta_rejects_non_positive_weights():
    aug = _aug(n=6, p=2)
    with pytest.raises(ValueError):
        step_beta(aug, np.zeros(aug.n_rows), np.random.default_rng(0))
    with pytest.raises(ValueError):
        step_beta(aug, np.ones(aug.n_rows - 1), np.random.default_rng(0))


def test_step_beta_samples_the_exact_gaussian_conditional():
    # Freeze omega and compare the sampled mean and covariance entrywise
    # against the dense-algebra answer m = V X' kappa, V = (X' Omega X)^-1.
    aug = _aug(n=25, p=3, seed=8)
    rng = np.random.default_rng(42)
    omega = rng.gamma(2.0, 0.5, size=aug.n_rows)
    precision = aug.X.T @ np.diag(omega) @ aug.X
    v = np.linalg.inv(precision)
    m = v @ (aug.X.T @ aug.kappa)

    n = 40_000
    draws = np.array([step_beta(aug, omega, rng) for _ in range(n)])
    sample_mean = draws.mean(axis=0)
    sample_cov = np.cov(draws.T)

    for j in range(3):
        se = np.sqrt(v[j, j] / n)
        assert abs(sample_mean[j] - m[j]) < 4.0 * se
    # Entrywise covariance must match within Monte Carlo error: for Gaussian
    # draws, Var(S_jk) ~= (V_jj V_kk + V_jk^2) / n.
    for j in range(3):
        for k in range(3):
            se = np.sqrt((v[j, j] * v[k, k] + v[j, k] ** 2) / n)
            assert abs(sample_cov[j, k] - v[j, k]) < 5.0 * se, (j, k)


def test_step_beta_mean_is_the_generalized_least_squares_solve():
    # With the noise stripped off (same rng consumed), two calls with the
    # same omega differ only in noise; averaging many draws converges to the
    # solve.  Cheaper and sharper: the mean solve itself is deterministic,
    # so feed a generator and subtract the reproduced noise.
    aug = _aug(n=10, p=2, seed=3)
    omega = np.full(aug.n_rows, 0.7)
    precision = aug.X.T @ np.diag(omega) @ aug.X
    m = np.linalg.solve(precision, aug.X.T @ aug.kappa)
    chol = np.linalg.cholesky(precision)
    rng = np.random.default_rng(17)
    draw = step_beta(aug, omega, rng)
    xi = np.random.default_rng(17).standard_normal(aug.p)
    noise = np.linalg.solve(chol.T, xi)
    assert np.allclose(draw, m + noise, rtol=1e-12, atol=1e-12)


def test_precision_decomposes_into_per_row_contributions():
    aug = augment(
        Dataset(
            X=np.column_stack([np.ones(8), np.arange(8.0)]),
            y=np.array([0, 1, 0, 1, 1, 0, 0, 1], dtype=float),
        ),
        to_synthetic(
            ConditionalMeansPrior(
                [
                    DesignPoint(x=np.array([1.0, 0.0]), a=1.0, b=4.0),
                    DesignPoint(x=np.array([1.0, 7.0]), a=2.0, b=3.0),
                ]
            )
        ),
    )
    omega = np.random.default_rng(4).gamma(1.5, 1.0, size=aug.n_rows)
    matrix_form = aug.X.T @ (omega[:, None] * aug.X)
    row_sum = sum(w * np.outer(x, x) for w, x in zip(omega, aug.X))
    real = slice(0, aug.n_real)
    synth = slice(aug.n_real, aug.n_rows)
    block_sum = aug.X[real].T @ (omega[real, None] * aug.X[real]) + aug.X[synth].T @ (
        omega[synth, None] * aug.X[synth]
    )
    assert np.allclose(matrix_form, row_sum, rtol=1e-13, atol=1e-13)
    assert np.allclose(matrix_form, block_sum, rtol=1e-13, atol=1e-13)


# ---------------------------------------------------------------------------
# End-to-end behavior of the full chain.
# ---------------------------------------------------------------------------


def test_chain_is_deterministic_in_the_seed():
    aug = _aug(seed=12)
    cfg = ChainConfig(iterations=60, burn_in=10, seed=2024)
    one = run_chain(aug, cfg)
    two = run_chain(aug, cfg)
    other = run_chain(aug, ChainConfig(iterations=60, burn_in=10, seed=2025))
    assert one.draws.tobytes() == two.draws.tobytes()
    assert not np.array_equal(one.draws, other.draws)


def test_conjugate_posterior_smoke():
    # Intercept-only with a Beta(1, 9) assessment and 3 successes in 10
    # trials: sigmoid(beta0) must look like Beta(4, 16) (mean 0.2).
    data = Dataset(X=np.ones((10, 1)), y=np.array([1.0] * 3 + [0.0] * 7))
    prior = ConditionalMeansPrior([DesignPoint(x=np.array([1.0]), a=1.0, b=9.0)])
    draws = run_chain(
        augment(data, to_synthetic(prior)),
        ChainConfig(iterations=6_000, burn_in=1_000, seed=6),
    )
    probs = expit(draws.draws[:, 0])
    assert probs.mean() == pytest.approx(0.2, abs=0.02)
    assert probs.std(ddof=1) == pytest.approx(np.sqrt(0.2 * 0.8 / 21.0), abs=0.02)


def test_prior_only_chain_recovers_the_assessment():
    # Sampling the prior alone: one Beta(2, 8) point at x = 1 means
    # sigmoid(beta0) ~ Beta(2, 8) with mean 0.2.
    prior = ConditionalMeansPrior([DesignPoint(x=np.array([1.0]), a=2.0, b=8.0)])
    draws = run_chain(
        augment(None, to_synthetic(prior)),
        ChainConfig(iterations=6_000, burn_in=1_000, seed=31),
    )
    probs = expit(draws.draws[:, 0])
    assert probs.mean() == pytest.approx(0.2, abs=0.02)
