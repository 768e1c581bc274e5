"""Command-line interface: subcommands, artifacts, manifests, error lines."""

import json
from pathlib import Path

import numpy as np
import pytest

from pglogit.cli import main

DEMOS = Path(__file__).resolve().parent.parent / "demos"

ORING_CSV = (
    "temperature,y\n"
    "53,1\n57,1\n58,1\n63,1\n66,0\n67,0\n67,0\n67,0\n68,0\n69,0\n70,1\n70,1\n"
    "70,0\n70,0\n72,0\n73,0\n75,1\n75,0\n76,0\n76,0\n78,0\n79,0\n81,0\n"
)

ORING_PRIOR = [
    {"covariates": [1.0, 31.0], "a": 8.0, "b": 2.0},
    {"covariates": [1.0, 81.0], "a": 1.0, "b": 9.0},
]


@pytest.fixture()
def oring_files(tmp_path):
    data = tmp_path / "oring.csv"
    data.write_text(ORING_CSV)
    prior = tmp_path / "prior.json"
    prior.write_text(json.dumps(ORING_PRIOR))
    return data, prior


def _fit_argv(data, prior, out, iters=600, burnin=150, seed=11):
    argv = ["fit", "--data", str(data), "--iters", str(iters),
            "--burnin", str(burnin), "--seed", str(seed), "--out-dir", str(out)]
    if prior is not None:
        argv[1:1] = []  # keep subcommand first
        argv += ["--prior", str(prior)]
    return argv


# ---------------------------------------------------------------------------
# fit
# ---------------------------------------------------------------------------


def test_fit_writes_draws_summary_and_manifest(oring_files, tmp_path, capsys):
    data, prior = oring_files
    out = tmp_path / "out"
    assert main(_fit_argv(data, prior, out)) == 0
    captured = capsys.readouterr()
    assert "kept draws" in captured.out
    assert "p(y=1 | x=[1,31])" in captured.out

    draws = (out / "draws.csv").read_text().splitlines()
    assert draws[0] == "intercept,temperature"
    assert len(draws) == 1 + 450  # header + kept

    summary = json.loads((out / "fit_summary.json").read_text())
    assert summary["prior"] == "informative"
    assert summary["pg_sampling"] == "exact"  # both assessments carry 10 trials
    assert summary["kept_draws"] == 450
    assert [c["name"] for c in summary["coefficients"]] == ["intercept", "temperature"]
    assert summary["coefficients"][1]["mean"] < 0.0  # failure odds fall with temp
    assert len(summary["query_probabilities"]) == 2
    q31 = summary["query_probabilities"][0]
    assert q31["covariates"] == [1.0, 31.0]
    assert 0.0 <= q31["lo"] <= q31["mean"] <= q31["hi"] <= 1.0

    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["tool"] == "pglogit"
    assert manifest["command"] == "fit"
    assert manifest["seed"] == 11
    assert manifest["artifacts"] == ["draws.csv", "fit_summary.json"]
    assert manifest["options"]["iters"] == 600


def test_fit_without_prior_is_flat(oring_files, tmp_path):
    data, _ = oring_files
    out = tmp_path / "out"
    assert main(["fit", "--data", str(data), "--iters", "400", "--burnin", "100",
                 "--out-dir", str(out)]) == 0
    summary = json.loads((out / "fit_summary.json").read_text())
    assert summary["prior"] == "flat"
    assert summary["query_probabilities"] == []


def test_fit_warns_about_an_improper_prior(oring_files, tmp_path, capsys):
    data, _ = oring_files
    prior = tmp_path / "one_point.json"
    prior.write_text(json.dumps([{"covariates": [1.0, 31.0], "a": 8.0, "b": 2.0}]))
    out = tmp_path / "out"
    assert main(["fit", "--data", str(data), "--prior", str(prior), "--iters", "300",
                 "--burnin", "50", "--out-dir", str(out)]) == 0
    assert "improper" in capsys.readouterr().err


def test_fit_flags_fractional_weights_as_approximate(oring_files, tmp_path):
    data, _ = oring_files
    prior = tmp_path / "frac.json"
    prior.write_text(
        json.dumps(
            [
                {"covariates": [1.0, 31.0], "mean": 0.8, "weight": 2.5},
                {"covariates": [1.0, 81.0], "mean": 0.1, "weight": 10.0},
            ]
        )
    )
    out = tmp_path / "out"
    assert main(["fit", "--data", str(data), "--prior", str(prior), "--iters", "300",
                 "--burnin", "50", "--out-dir", str(out)]) == 0
    summary = json.loads((out / "fit_summary.json").read_text())
    assert summary["pg_sampling"] == "approximate"


def test_manifest_replay_reproduces_artifacts_byte_for_byte(oring_files, tmp_path):
    data, prior = oring_files
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(_fit_argv(data, prior, out1)) == 0
    manifest = json.loads((out1 / "manifest.json").read_text())
    opts = manifest["options"]
    argv = [
        manifest["command"], "--data", opts["data"], "--prior", opts["prior"],
        "--iters", str(opts["iters"]), "--burnin", str(opts["burnin"]),
        "--thin", str(opts["thin"]), "--seed", str(opts["seed"]),
        "--out-dir", str(out2),
    ]
    assert main(argv) == 0
    for name in manifest["artifacts"]:
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name


# ---------------------------------------------------------------------------
# Error reporting contract.
# ---------------------------------------------------------------------------


def test_malformed_csv_is_a_parse_error_naming_the_line(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("x,y\n1,0\n2,banana\n")
    code = main(["fit", "--data", str(bad), "--out-dir", str(tmp_path)])
    assert code == 1
    err = capsys.readouterr().err
    assert err.startswith("pglogit: error [parse]")
    assert "line 3" in err


def test_prior_dimension_mismatch_is_a_validation_error(oring_files, tmp_path, capsys):
    data, _ = oring_files
    prior = tmp_path / "wide.json"
    prior.write_text(json.dumps([{"covariates": [1.0, 31.0, 5.0], "a": 1.0, "b": 1.0}]))
    code = main(["fit", "--data", str(data), "--prior", str(prior),
                 "--out-dir", str(tmp_path)])
    assert code == 1
    assert "pglogit: error [validation]" in capsys.readouterr().err


def test_missing_input_file_is_an_io_error(tmp_path, capsys):
    code = main(["fit", "--data", str(tmp_path / "nope.csv"), "--out-dir", str(tmp_path)])
    assert code == 1
    assert "pglogit: error [io]" in capsys.readouterr().err


def test_usage_errors_exit_nonzero(capsys):
    assert main([]) != 0
    assert main(["fit"]) != 0  # --data is required
    capsys.readouterr()


def test_version_flag(capsys):
    assert main(["--version"]) == 0
    assert "pglogit" in capsys.readouterr().out


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


def _tiny_scenario_doc(seed=5):
    return {
        "doses": [0.0, 2.0, 4.0],
        "per_arm": 8,
        "truth": {"p_placebo": 0.1, "p_max": 0.35, "ed50": 0.5},
        "prior": [
            {"covariates": [1, 0], "mean": 0.1, "weight": 10},
            {"covariates": [1, 4], "mean": 0.3, "weight": 10},
        ],
        "chain": {"iterations": 300, "burn_in": 80, "thin": 1, "seed": seed},
        "replicates": 2,
    }


def test_simulate_writes_the_four_tables(tmp_path, capsys):
    scenario = tmp_path / "s.json"
    scenario.write_text(json.dumps(_tiny_scenario_doc()))
    out = tmp_path / "out"
    assert main(["simulate", str(scenario), "--out-dir", str(out)]) == 0
    captured = capsys.readouterr()
    assert "replicate 2/2" in captured.err  # progress goes to stderr
    assert "P(uplift at 2 > 0.05)" in captured.out

    dose = (out / "dose_response.csv").read_text().splitlines()
    assert dose[0] == (
        "dose,true_pct,informative_mean_pct,informative_sd_pct,informative_ci_width_pp,"
        "flat_mean_pct,flat_sd_pct,flat_ci_width_pp"
    )
    assert len(dose) == 4
    decision = (out / "decision.csv").read_text().splitlines()
    assert decision[0] == "dose,informative_decision_prob,flat_decision_prob"
    assert len(decision) == 3
    for line in decision[1:]:
        cells = line.split(",")
        assert 0.0 <= float(cells[1]) <= 1.0
        assert 0.0 <= float(cells[2]) <= 1.0
    diag = (out / "diagnostics.csv").read_text().splitlines()
    assert diag[0] == "prior,coefficient,mean_ess,geweke_within_2,replicates"
    assert len(diag) == 5
    plot = (out / "dose_plot.tsv").read_text().splitlines()
    assert plot[0] == "dose\tprior\tpost_mean\tci_lo\tci_hi"
    assert len(plot) == 7

    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["command"] == "simulate"
    assert manifest["options"]["reps"] == 2


def test_simulate_rerun_is_byte_identical(tmp_path):
    scenario = tmp_path / "s.json"
    scenario.write_text(json.dumps(_tiny_scenario_doc()))
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["simulate", str(scenario), "--out-dir", str(out1)]) == 0
    assert main(["simulate", str(scenario), "--out-dir", str(out2)]) == 0
    for name in ("dose_response.csv", "decision.csv", "diagnostics.csv", "dose_plot.tsv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name


def test_simulate_single_replicate_leaves_sd_columns_empty(tmp_path):
    scenario = tmp_path / "s.json"
    scenario.write_text(json.dumps(_tiny_scenario_doc()))
    out = tmp_path / "out"
    assert main(["simulate", str(scenario), "--reps", "1", "--out-dir", str(out)]) == 0
    rows = (out / "dose_response.csv").read_text().splitlines()
    header = rows[0].split(",")
    sd_idx = [header.index("informative_sd_pct"), header.index("flat_sd_pct")]
    for line in rows[1:]:
        cells = line.split(",")
        for i in sd_idx:
            assert cells[i] == ""


def test_simulate_flag_overrides_scenario_chain(tmp_path):
    scenario = tmp_path / "s.json"
    scenario.write_text(json.dumps(_tiny_scenario_doc()))
    out = tmp_path / "out"
    assert main(["simulate", str(scenario), "--iters", "200", "--burnin", "40",
                 "--seed", "99", "--out-dir", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["options"]["iters"] == 200
    assert manifest["options"]["seed"] == 99


def test_simulate_can_lower_iters_below_scenario_burnin(tmp_path):
    # --iters 200 is below the file's burn_in of 250; with --burnin 50 the
    # final config is valid, and applying the overrides must not trip the
    # config validation on any intermediate state.
    doc = _tiny_scenario_doc()
    doc["chain"]["burn_in"] = 250
    scenario = tmp_path / "s.json"
    scenario.write_text(json.dumps(doc))
    out = tmp_path / "out"
    assert main(["simulate", str(scenario), "--iters", "200", "--burnin", "50",
                 "--out-dir", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["options"]["iters"] == 200
    assert manifest["options"]["burnin"] == 50


def test_simulate_unknown_decision_dose_fails_cleanly(tmp_path, capsys):
    doc = _tiny_scenario_doc()
    doc["decision_doses"] = [7.0]
    scenario = tmp_path / "s.json"
    scenario.write_text(json.dumps(doc))
    assert main(["simulate", str(scenario), "--out-dir", str(tmp_path)]) == 1
    assert "pglogit: error [parse]" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# oring / ridge-demo / diagnose
# ---------------------------------------------------------------------------


def test_oring_flat_only_emits_only_flat_columns(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["oring", "--flat-only", "--iters", "400", "--burnin", "100",
                 "--out-dir", str(out)]) == 0
    rows = (out / "oring_table.csv").read_text().splitlines()
    assert rows[0] == "temperature_f,flat_mean_pct,flat_lo_pct,flat_hi_pct"
    assert len(rows) == 6
    assert "informative" not in capsys.readouterr().out


def test_oring_default_runs_both_priors(tmp_path):
    out = tmp_path / "out"
    assert main(["oring", "--iters", "400", "--burnin", "100", "--out-dir", str(out)]) == 0
    header = (out / "oring_table.csv").read_text().splitlines()[0]
    assert header == (
        "temperature_f,informative_mean_pct,informative_lo_pct,informative_hi_pct,"
        "flat_mean_pct,flat_lo_pct,flat_hi_pct"
    )


def test_ridge_demo_reports_machine_precision_agreement(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["ridge-demo", "--out-dir", str(out)]) == 0
    assert "max |penalty-form - pseudo-data-form|" in capsys.readouterr().out
    rows = (out / "ridge_checks.csv").read_text().splitlines()
    assert rows[0] == "instance,n,p,lam,max_abs_diff"
    assert len(rows) == 1 + 150
    assert max(float(r.split(",")[4]) for r in rows[1:]) < 1e-10


def test_diagnose_reads_a_fit_draws_csv(oring_files, tmp_path, capsys):
    data, prior = oring_files
    out = tmp_path / "out"
    assert main(_fit_argv(data, prior, out)) == 0
    capsys.readouterr()
    assert main(["diagnose", str(out / "draws.csv"), "--out-dir", str(out)]) == 0
    assert "geweke" in capsys.readouterr().out
    rows = (out / "diagnose.csv").read_text().splitlines()
    assert rows[0] == "coefficient,mean,sd,ess,geweke_z"
    assert len(rows) == 3
    for line in rows[1:]:
        cells = line.split(",")
        assert float(cells[3]) > 0.0  # ESS


def test_out_dir_falls_back_to_the_environment(tmp_path, monkeypatch):
    env_dir = tmp_path / "from_env"
    monkeypatch.setenv("PGLOGIT_OUT_DIR", str(env_dir))
    assert main(["ridge-demo"]) == 0
    assert (env_dir / "ridge_checks.csv").exists()


# ---------------------------------------------------------------------------
# The shipped demo inputs stay loadable.
# ---------------------------------------------------------------------------


def test_shipped_demo_inputs_parse():
    from pglogit.fileio import read_data_csv, read_prior_json, read_scenario_json

    data, labels = read_data_csv(DEMOS / "oring_data.csv")
    assert labels == ("intercept", "temperature")
    assert data.n == 23
    prior = read_prior_json(DEMOS / "oring_prior.json")
    assert prior.p == 2
    scenario = read_scenario_json(DEMOS / "dose_finding_scenario.json")
    assert scenario.doses == (0.0, 0.5, 1.5, 2.5, 4.0)
    assert scenario.replicates == 30
    assert np.allclose(scenario.prior.weights, [10.0, 10.0])
