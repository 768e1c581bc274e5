"""Reading and writing the file formats used by the command-line tools.

Data files are headered CSV with a binary column named `y`; every other
column is a covariate, kept in file order.  Prior files are JSON arrays of
design-point objects given either as Beta parameters {covariates, a, b} or
as assessments {covariates, mean, weight}.  Scenario files are JSON objects
describing a replicated trial.  All numeric table output uses fixed
formatting (probabilities to 4 decimals, percentages to 1 decimal) so
reruns diff cleanly.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .gibbs import ChainConfig
from .model import Dataset
from .prior import ConditionalMeansPrior, DesignPoint, elicit_from_mean_and_weight
from .scenarios import EmaxTruth, TrialScenario

__all__ = [
    "FileFormatError",
    "read_data_csv",
    "read_prior_json",
    "read_scenario_json",
    "read_draws_csv",
    "write_csv",
    "write_json",
    "fmt_prob",
    "fmt_pct",
]


class FileFormatError(Exception):
    """An input file exists but does not match its documented format."""


def fmt_prob(x: float) -> str:
    """A probability, fixed at 4 decimals."""
    return f"{x:.4f}"


def fmt_pct(x: float) -> str:
    """A probability rendered as a percentage, fixed at 1 decimal.

    NaN (e.g. an across-replicate SD with one replicate) renders empty.
    """
    return "" if math.isnan(x) else f"{100.0 * x:.1f}"


def read_data_csv(path, add_intercept: bool = True) -> tuple[Dataset, tuple[str, ...]]:
    """Read a headered CSV with a binary `y` column into a Dataset.

    Covariate columns keep their file order; an intercept column of ones is
    prepended unless add_intercept is False.  Returns the dataset and the
    design column labels.  Malformed rows are reported by file line number.
    """
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FileFormatError(f"{path}: file is empty, expected a header row") from None
        header = [h.strip() for h in header]
        if "y" not in header:
            raise FileFormatError(f"{path}: header must contain a column named 'y', got {header}")
        if len(set(header)) != len(header):
            raise FileFormatError(f"{path}: duplicate column names in header {header}")
        y_col = header.index("y")
        x_rows: list[list[float]] = []
        y_vals: list[float] = []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise FileFormatError(
                    f"{path}: line {line_no} has {len(row)} fields, expected {len(header)}"
                )
            try:
                values = [float(v) for v in row]
            except ValueError:
                raise FileFormatError(
                    f"{path}: line {line_no} contains a non-numeric field: {row}"
                ) from None
            y = values.pop(y_col)
            if y not in (0.0, 1.0):
                raise FileFormatError(f"{path}: line {line_no} has y={y}, expected 0 or 1")
            x_rows.append(values)
            y_vals.append(y)
    if not x_rows:
        raise FileFormatError(f"{path}: no data rows after the header")
    labels = tuple(h for h in header if h != "y")
    x = np.asarray(x_rows)
    if add_intercept:
        x = np.column_stack([np.ones(len(x_rows)), x])
        labels = ("intercept",) + labels
    if x.shape[1] == 0:
        raise FileFormatError(f"{path}: no covariate columns (only y) and no intercept requested")
    try:
        return Dataset(X=x, y=np.asarray(y_vals)), labels
    except ValueError as err:
        raise FileFormatError(f"{path}: {err}") from None


def _prior_point(entry: Any, idx: int, source: str) -> DesignPoint:
    if not isinstance(entry, dict):
        raise FileFormatError(f"{source}: prior entry {idx} must be an object, got {type(entry).__name__}")
    if "covariates" not in entry:
        raise FileFormatError(f"{source}: prior entry {idx} is missing 'covariates'")
    x = np.asarray(entry["covariates"], dtype=np.float64)
    has_beta = "a" in entry and "b" in entry
    has_assessment = "mean" in entry and "weight" in entry
    if has_beta == has_assessment:
        raise FileFormatError(
            f"{source}: prior entry {idx} must give exactly one of (a, b) or (mean, weight)"
        )
    try:
        if has_beta:
            return DesignPoint(x=x, a=float(entry["a"]), b=float(entry["b"]))
        return elicit_from_mean_and_weight(float(entry["mean"]), float(entry["weight"]), x)
    except (TypeError, ValueError) as err:
        raise FileFormatError(f"{source}: prior entry {idx}: {err}") from None


def read_prior_json(path) -> ConditionalMeansPrior:
    """Read a JSON array of design points into a conditional-means prior."""
    path = Path(path)
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as err:
        raise FileFormatError(f"{path}: not valid JSON: {err}") from None
    if not isinstance(doc, list) or not doc:
        raise FileFormatError(f"{path}: expected a non-empty JSON array of design points")
    points = [_prior_point(entry, i, str(path)) for i, entry in enumerate(doc)]
    try:
        return ConditionalMeansPrior(points)
    except ValueError as err:
        raise FileFormatError(f"{path}: {err}") from None


def read_scenario_json(path) -> TrialScenario:
    """Read a trial scenario description.

    Required keys: doses, per_arm, truth {p_placebo, p_max, ed50}, prior
    (array of design points over (1, dose)), chain {iterations, burn_in,
    thin, seed}.  Optional: replicates (default 30), decision_margin
    (default 0.05), reference_dose (default 0.0), decision_doses.
    """
    path = Path(path)
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as err:
        raise FileFormatError(f"{path}: not valid JSON: {err}") from None
    if not isinstance(doc, dict):
        raise FileFormatError(f"{path}: expected a JSON object")
    missing = [k for k in ("doses", "per_arm", "truth", "prior", "chain") if k not in doc]
    if missing:
        raise FileFormatError(f"{path}: missing required keys {missing}")
    try:
        truth = EmaxTruth(**{k: float(v) for k, v in doc["truth"].items()})
    except (TypeError, ValueError) as err:
        raise FileFormatError(f"{path}: bad truth block: {err}") from None
    if not isinstance(doc["prior"], list) or not doc["prior"]:
        raise FileFormatError(f"{path}: 'prior' must be a non-empty array of design points")
    prior = ConditionalMeansPrior(
        [_prior_point(entry, i, str(path)) for i, entry in enumerate(doc["prior"])]
    )
    chain_doc = doc["chain"]
    if not isinstance(chain_doc, dict) or "iterations" not in chain_doc:
        raise FileFormatError(f"{path}: 'chain' must be an object with at least 'iterations'")
    try:
        chain = ChainConfig(
            iterations=int(chain_doc["iterations"]),
            burn_in=int(chain_doc.get("burn_in", 0)),
            thin=int(chain_doc.get("thin", 1)),
            seed=int(chain_doc.get("seed", 0)),
        )
        return TrialScenario(
            doses=tuple(float(d) for d in doc["doses"]),
            per_arm=int(doc["per_arm"]),
            truth=truth,
            prior=prior,
            chain=chain,
            replicates=int(doc.get("replicates", 30)),
            decision_margin=float(doc.get("decision_margin", 0.05)),
            reference_dose=float(doc.get("reference_dose", 0.0)),
            decision_doses=tuple(float(d) for d in doc.get("decision_doses", ())),
        )
    except (TypeError, ValueError) as err:
        raise FileFormatError(f"{path}: {err}") from None


def read_draws_csv(path) -> tuple[np.ndarray, tuple[str, ...]]:
    """Read a draws CSV (header plus one numeric row per kept draw)."""
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FileFormatError(f"{path}: file is empty, expected a header row") from None
        rows = []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise FileFormatError(
                    f"{path}: line {line_no} has {len(row)} fields, expected {len(header)}"
                )
            try:
                rows.append([float(v) for v in row])
            except ValueError:
                raise FileFormatError(
                    f"{path}: line {line_no} contains a non-numeric field: {row}"
                ) from None
    if not rows:
        raise FileFormatError(f"{path}: no draws after the header")
    return np.asarray(rows), tuple(h.strip() for h in header)


def write_csv(path, header: Sequence[str], rows: Sequence[Sequence[str]], sep: str = ",") -> None:
    """Write pre-formatted string cells with a header row and '\\n' endings."""
    path = Path(path)
    with open(path, "w", newline="") as fh:
        fh.write(sep.join(header) + "\n")
        for row in rows:
            fh.write(sep.join(row) + "\n")


def write_json(path, obj) -> None:
    """Write JSON with sorted keys and a trailing newline (stable bytes)."""
    path = Path(path)
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")
