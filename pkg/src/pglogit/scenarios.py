"""End-to-end study drivers: a simulated dose-finding trial and the
Challenger O-ring field data.

The dose-finding scenario simulates binary responses from an Emax curve on
the log-odds scale, fits the working linear-logit model under both an
informative conditional-means prior and a flat prior on the same simulated
data, and aggregates posterior summaries, dose-selection probabilities and
sampler diagnostics across replicate trials.

The O-ring analysis reproduces the classic logistic regression of primary
O-ring thermal distress on launch temperature (Dalal, Fowlkes & Hoadley,
1989), with an informative prior anchored by two engineering assessments:
failure is very likely at 31 F and very unlikely at 81 F.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import expit, logit

from .diagnostics import ProbabilitySummary, credible_interval, decision_prob, ess, geweke_z
from .gibbs import ChainConfig, PosteriorDraws, run_chain
from .model import Dataset, augment
from .prior import ConditionalMeansPrior, DesignPoint, elicit_from_mean_and_weight, to_synthetic

__all__ = [
    "INFORMATIVE",
    "FLAT",
    "DEFAULT_SEED",
    "EmaxTruth",
    "TrialScenario",
    "PriorDoseStats",
    "DoseRow",
    "DecisionRow",
    "ReplicationReport",
    "OringData",
    "OringRow",
    "OringReport",
    "emax_prob",
    "simulate_trial",
    "run_replications",
    "default_scenario",
    "oring_dataset",
    "oring_prior",
    "oring_analysis",
]

# Labels for the two fits run on every dataset.
INFORMATIVE = "informative"
FLAT = "flat"

# Master seed used by the shipped scenario and the command-line defaults,
# fixed so the distributed tables regenerate bit for bit.
DEFAULT_SEED = 7

_COEF_LABELS = ("beta0", "beta1")


@dataclass(frozen=True)
class EmaxTruth:
    """Data-generating dose-response curve, Emax-shaped on the log-odds scale.

    logit P(d) = logit(p_placebo) + (logit(p_max) - logit(p_placebo)) * d / (ed50 + d),
    so the response probability rises from p_placebo at dose zero toward the
    plateau p_max, reaching halfway (on the log-odds scale) at dose ed50.
    """

    p_placebo: float = 0.10
    p_max: float = 0.35
    ed50: float = 0.5

    def __post_init__(self) -> None:
        for name in ("p_placebo", "p_max"):
            v = getattr(self, name)
            if not (0.0 < v < 1.0):
                raise ValueError(f"{name} must lie strictly in (0, 1), got {v}")
        if not (math.isfinite(self.ed50) and self.ed50 > 0.0):
            raise ValueError(f"ed50 must be positive, got {self.ed50}")


def emax_prob(truth: EmaxTruth, dose):
    """True response probability at one or more non-negative doses."""
    d = np.asarray(dose, dtype=np.float64)
    if np.any(d < 0.0) or not np.all(np.isfinite(d)):
        raise ValueError("doses must be finite and non-negative")
    e0 = logit(truth.p_placebo)
    span = logit(truth.p_max) - e0
    p = expit(e0 + span * d / (truth.ed50 + d))
    return float(p) if np.isscalar(dose) else p


@dataclass(frozen=True)
class TrialScenario:
    """A replicated parallel-arm binary trial analyzed with the linear-logit
    working model on design (1, dose).

    decision_doses defaults to every dose other than the reference; the
    decision quantity at dose d is the posterior probability that the
    response rate exceeds the reference-dose rate by more than
    decision_margin.
    """

    doses: tuple[float, ...]
    per_arm: int
    truth: EmaxTruth
    prior: ConditionalMeansPrior
    chain: ChainConfig
    replicates: int = 30
    decision_margin: float = 0.05
    reference_dose: float = 0.0
    decision_doses: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        doses = tuple(float(d) for d in self.doses)
        if not doses:
            raise ValueError("scenario needs at least one dose")
        if len(set(doses)) != len(doses):
            raise ValueError("doses must be distinct")
        if any(not math.isfinite(d) or d < 0.0 for d in doses):
            raise ValueError("doses must be finite and non-negative")
        object.__setattr__(self, "doses", doses)
        if self.per_arm < 1:
            raise ValueError(f"per_arm must be >= 1, got {self.per_arm}")
        if self.replicates < 1:
            raise ValueError(f"replicates must be >= 1, got {self.replicates}")
        if not (0.0 <= self.decision_margin < 1.0):
            raise ValueError(f"decision_margin must lie in [0, 1), got {self.decision_margin}")
        if self.prior.p != 2:
            raise ValueError(
                f"the working model has 2 coefficients, but the prior has p={self.prior.p}"
            )
        if self.reference_dose not in doses:
            raise ValueError(
                f"reference dose {self.reference_dose} is not one of the trial doses {doses}"
            )
        decision = tuple(float(d) for d in self.decision_doses) or tuple(
            d for d in doses if d != self.reference_dose
        )
        for d in decision:
            if d not in doses:
                raise ValueError(f"decision dose {d} is not one of the trial doses {doses}")
        object.__setattr__(self, "decision_doses", decision)

    @property
    def n_subjects(self) -> int:
        return self.per_arm * len(self.doses)


def simulate_trial(scenario: TrialScenario, rng: np.random.Generator) -> Dataset:
    """Simulate one trial: per_arm Bernoulli responses at each dose.

    Rows are grouped by dose in scenario order; the design is (1, dose).
    """
    doses = np.repeat(np.asarray(scenario.doses), scenario.per_arm)
    p = emax_prob(scenario.truth, doses)
    y = (rng.random(doses.size) < p).astype(np.float64)
    return Dataset(X=np.column_stack([np.ones(doses.size), doses]), y=y)


def _derived_seed(master: int, *path: int) -> int:
    # A distinct, order-insensitive-to-schedule 64-bit seed per (replicate,
    # stream) so replicates can be recomputed independently.
    return int(np.random.SeedSequence([master, *path]).generate_state(1, np.uint64)[0])


def _fit(data: Dataset, prior: ConditionalMeansPrior | None, cfg: ChainConfig) -> PosteriorDraws:
    synthetic = to_synthetic(prior) if prior is not None else []
    return run_chain(augment(data, synthetic), cfg, labels=_COEF_LABELS)


@dataclass(frozen=True)
class PriorDoseStats:
    """Across-replicate aggregates of one dose's posterior response summary."""

    mean: float      # mean over replicates of the posterior mean probability
    sd: float        # SD over replicates of the same (NaN for one replicate)
    ci_width: float  # mean over replicates of the 95% CrI width
    ci_lo: float     # mean over replicates of the CrI endpoints
    ci_hi: float


@dataclass(frozen=True)
class DoseRow:
    dose: float
    true_p: float
    stats: dict[str, PriorDoseStats]


@dataclass(frozen=True)
class DecisionRow:
    dose: float
    prob: dict[str, float]


@dataclass(frozen=True)
class ReplicationReport:
    scenario: TrialScenario
    dose_rows: tuple[DoseRow, ...]
    decision_rows: tuple[DecisionRow, ...]
    mean_ess: dict[str, tuple[float, ...]]
    geweke_pass: dict[str, int]  # replicates with every |z| <= 2
    level: float = 0.95


def run_replications(scenario: TrialScenario, progress=None) -> ReplicationReport:
    """Simulate and fit `scenario.replicates` trials under both priors.

    Each replicate draws fresh data, fits the informative-prior and
    flat-prior models on that same dataset, and records per-dose posterior
    summaries, decision probabilities and per-coefficient diagnostics.
    Seeds are derived from scenario.chain.seed per (replicate, stream), so
    the whole study is reproducible and order-independent.

    `progress`, if given, is called with (replicate_index, total) after each
    replicate finishes.
    """
    master = scenario.chain.seed
    doses = np.asarray(scenario.doses)
    queries = np.column_stack([np.ones(doses.size), doses])
    x_ref = np.array([1.0, scenario.reference_dose])
    labels = (INFORMATIVE, FLAT)
    reps = scenario.replicates
    level = 0.95

    post_mean = {lb: np.empty((reps, doses.size)) for lb in labels}
    ci_lo = {lb: np.empty((reps, doses.size)) for lb in labels}
    ci_hi = {lb: np.empty((reps, doses.size)) for lb in labels}
    decisions = {lb: np.empty((reps, len(scenario.decision_doses))) for lb in labels}
    ess_mat = {lb: np.empty((reps, 2)) for lb in labels}
    geweke_mat = {lb: np.empty((reps, 2)) for lb in labels}

    for r in range(reps):
        sim_rng = np.random.default_rng(np.random.SeedSequence([master, r, 0]))
        data = simulate_trial(scenario, sim_rng)
        for stream, lb in enumerate(labels, start=1):
            cfg = replace(scenario.chain, seed=_derived_seed(master, r, stream))
            prior = scenario.prior if lb == INFORMATIVE else None
            draws = _fit(data, prior, cfg)
            for j, x in enumerate(queries):
                probs = expit(draws.draws @ x)
                post_mean[lb][r, j] = probs.mean()
                ci_lo[lb][r, j], ci_hi[lb][r, j] = credible_interval(probs, level)
            for j, d in enumerate(scenario.decision_doses):
                decisions[lb][r, j] = decision_prob(
                    draws, np.array([1.0, d]), x_ref, scenario.decision_margin
                )
            for j in range(2):
                ess_mat[lb][r, j] = ess(draws.draws[:, j])
                geweke_mat[lb][r, j] = geweke_z(draws.draws[:, j])
        if progress is not None:
            progress(r + 1, reps)

    dose_rows = []
    for j, d in enumerate(doses):
        stats = {}
        for lb in labels:
            means = post_mean[lb][:, j]
            widths = ci_hi[lb][:, j] - ci_lo[lb][:, j]
            stats[lb] = PriorDoseStats(
                mean=float(means.mean()),
                sd=float(means.std(ddof=1)) if reps > 1 else float("nan"),
                ci_width=float(widths.mean()),
                ci_lo=float(ci_lo[lb][:, j].mean()),
                ci_hi=float(ci_hi[lb][:, j].mean()),
            )
        dose_rows.append(DoseRow(dose=float(d), true_p=emax_prob(scenario.truth, float(d)), stats=stats))

    decision_rows = [
        DecisionRow(
            dose=float(d),
            prob={lb: float(decisions[lb][:, j].mean()) for lb in labels},
        )
        for j, d in enumerate(scenario.decision_doses)
    ]
    mean_ess = {lb: tuple(float(v) for v in ess_mat[lb].mean(axis=0)) for lb in labels}
    geweke_pass = {
        lb: int(np.sum(np.all(np.abs(geweke_mat[lb]) <= 2.0, axis=1))) for lb in labels
    }
    return ReplicationReport(
        scenario=scenario,
        dose_rows=tuple(dose_rows),
        decision_rows=tuple(decision_rows),
        mean_ess=mean_ess,
        geweke_pass=geweke_pass,
        level=level,
    )


def default_scenario(seed: int = DEFAULT_SEED) -> TrialScenario:
    """The shipped five-arm scenario: doses 0 to 4 mg, 60 subjects per arm.

    The informative prior holds two assessments worth 10 imaginary subjects
    each: a 10% response rate at placebo and a 30% rate at the top dose.
    """
    prior = ConditionalMeansPrior(
        [
            elicit_from_mean_and_weight(0.10, 10.0, np.array([1.0, 0.0])),
            elicit_from_mean_and_weight(0.30, 10.0, np.array([1.0, 4.0])),
        ]
    )
    return TrialScenario(
        doses=(0.0, 0.5, 1.5, 2.5, 4.0),
        per_arm=60,
        truth=EmaxTruth(),
        prior=prior,
        chain=ChainConfig(iterations=10_000, burn_in=3_000, thin=1, seed=seed),
        replicates=30,
    )


@dataclass(frozen=True)
class OringData:
    """Launch temperature (F) and primary O-ring thermal distress indicator
    for the 23 shuttle flights before the Challenger accident."""

    temperature: np.ndarray
    failure: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.temperature, dtype=np.float64)
        y = np.asarray(self.failure, dtype=np.float64)
        if t.ndim != 1 or t.shape != y.shape:
            raise ValueError("temperature and failure must be 1-d of equal length")
        if not np.all((y == 0.0) | (y == 1.0)):
            raise ValueError("failure indicators must be 0 or 1")
        object.__setattr__(self, "temperature", t)
        object.__setattr__(self, "failure", y)

    def to_dataset(self) -> Dataset:
        return Dataset(
            X=np.column_stack([np.ones(self.temperature.size), self.temperature]),
            y=self.failure,
        )


_ORING_ROWS = (
    (53, 1), (57, 1), (58, 1), (63, 1), (66, 0), (67, 0), (67, 0), (67, 0),
    (68, 0), (69, 0), (70, 1), (70, 1), (70, 0), (70, 0), (72, 0), (73, 0),
    (75, 1), (75, 0), (76, 0), (76, 0), (78, 0), (79, 0), (81, 0),
)


def oring_dataset() -> OringData:
    """The 23 pre-Challenger flights: 7 with thermal distress, 16 without."""
    rows = np.asarray(_ORING_ROWS, dtype=np.float64)
    return OringData(temperature=rows[:, 0], failure=rows[:, 1])


def oring_prior() -> ConditionalMeansPrior:
    """Two engineering assessments: failure probability Beta(8, 2) at 31 F
    (mean 0.8) and Beta(1, 9) at 81 F (mean 0.1)."""
    return ConditionalMeansPrior(
        [
            DesignPoint(x=np.array([1.0, 31.0]), a=8.0, b=2.0),
            DesignPoint(x=np.array([1.0, 81.0]), a=1.0, b=9.0),
        ]
    )


@dataclass(frozen=True)
class OringRow:
    temperature: float
    stats: dict[str, ProbabilitySummary]


@dataclass(frozen=True)
class OringReport:
    rows: tuple[OringRow, ...]
    priors: tuple[str, ...]
    level: float = 0.95


def oring_analysis(
    chain: ChainConfig | None = None,
    temps: tuple[float, ...] = (31.0, 50.0, 65.0, 75.0, 81.0),
    priors: tuple[str, ...] = (INFORMATIVE, FLAT),
) -> OringReport:
    """Posterior failure probabilities at query temperatures under the
    requested priors (any non-empty subset of informative / flat).

    Each fit derives its own seed from chain.seed, so results do not depend
    on which priors are requested together.
    """
    if chain is None:
        chain = ChainConfig(iterations=10_000, burn_in=3_000, seed=DEFAULT_SEED)
    if not priors or any(lb not in (INFORMATIVE, FLAT) for lb in priors):
        raise ValueError(f"priors must be a non-empty subset of {(INFORMATIVE, FLAT)}")
    data = oring_dataset().to_dataset()
    level = 0.95
    per_prior: dict[str, PosteriorDraws] = {}
    for lb in priors:
        cfg = replace(chain, seed=_derived_seed(chain.seed, (INFORMATIVE, FLAT).index(lb)))
        prior = oring_prior() if lb == INFORMATIVE else None
        per_prior[lb] = _fit(data, prior, cfg)
    rows = []
    for t in temps:
        x = np.array([1.0, float(t)])
        stats = {}
        for lb, draws in per_prior.items():
            probs = expit(draws.draws @ x)
            lo, hi = credible_interval(probs, level)
            stats[lb] = ProbabilitySummary(x=tuple(x), mean=float(probs.mean()), lo=lo, hi=hi)
        rows.append(OringRow(temperature=float(t), stats=stats))
    return OringReport(rows=tuple(rows), priors=tuple(priors), level=level)
