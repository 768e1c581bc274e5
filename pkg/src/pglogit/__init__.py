"""Bayesian logistic regression with pseudo-data priors and exact
Polya-Gamma Gibbs sampling.

Beliefs about response probabilities at chosen covariate points become
imaginary binomial observations appended to the data (a conditional-means
prior in the sense of Bedrick, Christensen & Johnson, 1996); the augmented
model is then sampled exactly with the Polya-Gamma scheme of Polson, Scott
& Windle (2013).  The same pseudo-data idea in the Gaussian case recovers
ridge regression, included here as a closed-form cross-check.
"""

from .diagnostics import (
    ChainSummary,
    CoefficientSummary,
    Ed50Summary,
    ProbabilitySummary,
    credible_interval,
    decision_prob,
    ed50_posterior,
    ess,
    geweke_z,
    summarize_chain,
)
from .gibbs import ChainConfig, PosteriorDraws, run_chain, step_beta, step_omega
from .model import (
    AugmentedDataset,
    AugmentedRow,
    Dataset,
    augment,
    log_posterior,
    log_posterior_grad,
    predict_prob,
)
from .pg import PgParams, pg_mean, sample_pg, sample_pg1, sample_pg_vector
from .prior import (
    BetaBinomialPosterior,
    ConditionalMeansPrior,
    DesignPoint,
    PriorValidation,
    SyntheticObservation,
    beta_binomial_posterior,
    elicit_from_mean_and_weight,
    to_synthetic,
    validate_prior,
)
from .ridge import RidgeProblem, augmented_system, ridge_augmented, ridge_closed_form
from .scenarios import (
    EmaxTruth,
    OringData,
    OringReport,
    ReplicationReport,
    TrialScenario,
    default_scenario,
    emax_prob,
    oring_analysis,
    oring_dataset,
    oring_prior,
    run_replications,
    simulate_trial,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # pg
    "PgParams",
    "sample_pg1",
    "sample_pg",
    "sample_pg_vector",
    "pg_mean",
    # prior
    "DesignPoint",
    "ConditionalMeansPrior",
    "SyntheticObservation",
    "PriorValidation",
    "BetaBinomialPosterior",
    "elicit_from_mean_and_weight",
    "to_synthetic",
    "validate_prior",
    "beta_binomial_posterior",
    # model
    "Dataset",
    "AugmentedRow",
    "AugmentedDataset",
    "augment",
    "log_posterior",
    "log_posterior_grad",
    "predict_prob",
    # gibbs
    "ChainConfig",
    "PosteriorDraws",
    "step_omega",
    "step_beta",
    "run_chain",
    # diagnostics
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
    # ridge
    "RidgeProblem",
    "augmented_system",
    "ridge_closed_form",
    "ridge_augmented",
    # scenarios
    "EmaxTruth",
    "TrialScenario",
    "ReplicationReport",
    "OringData",
    "OringReport",
    "emax_prob",
    "simulate_trial",
    "run_replications",
    "default_scenario",
    "oring_dataset",
    "oring_prior",
    "oring_analysis",
]
