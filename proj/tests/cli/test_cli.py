"""End-to-end tests for the command-line interface.

The binary path comes from the STEPDOWN_CLI_BIN environment variable, which
the test target sets to the freshly built executable.
"""

import json
import os
import subprocess

import pytest

BIN = os.environ.get("STEPDOWN_CLI_BIN")

pytestmark = pytest.mark.skipif(not BIN, reason="STEPDOWN_CLI_BIN is not set")


def run_cli(*args, env_extra=None, expect_code=0):
    """Run the CLI; expect_code=None means "any nonzero exit"."""
    env = os.environ.copy()
    env.pop("STEPDOWN_TRIALS", None)
    env.pop("STEPDOWN_WORKERS", None)
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run([BIN, *args], capture_output=True, text=True, env=env)
    ok = proc.returncode != 0 if expect_code is None else proc.returncode == expect_code
    assert ok, (
        f"args={args!r} rc={proc.returncode}\nstdout:\n{proc.stdout}\nstderr:\n{proc.stderr}"
    )
    return proc


def test_constants_holm_csv():
    out = run_cli("constants", "--method", "holm", "--s", "4", "--alpha", "0.05").stdout
    assert out.splitlines() == [
        "i,alpha_i",
        "1,0.0125",
        "2,0.0166667",
        "3,0.025",
        "4,0.05",
    ]


def test_constants_requires_s():
    proc = run_cli("constants", "--method", "holm", "--alpha", "0.05", expect_code=None)
    assert "--s" in proc.stderr


def test_constants_gamma_required_for_fdp():
    proc = run_cli(
        "constants", "--method", "fdp-base", "--s", "10", "--alpha", "0.05", expect_code=1
    )
    assert proc.stderr.startswith("error:")
    assert "--gamma" in proc.stderr


def test_constants_rejects_fraction_gamma():
    proc = run_cli(
        "constants",
        "--method", "fdp-base",
        "--s", "10",
        "--alpha", "0.05",
        "--gamma", "1/3",
        expect_code=1,
    )
    assert proc.stderr.startswith("error:")


def test_fdr_sd_alias_matches_fdr_stepdown():
    a = run_cli("constants", "--method", "fdr-sd", "--s", "5", "--alpha", "0.1").stdout
    b = run_cli("constants", "--method", "fdr-stepdown", "--s", "5", "--alpha", "0.1").stdout
    assert a == b


def test_apply_with_ids(tmp_path):
    csv = tmp_path / "pvals.csv"
    csv.write_text("id,p\ng1,0.001\ng2,0.01\ng3,0.02\ng4,0.9\n")
    out = run_cli(
        "apply", "--method", "holm", "--alpha", "0.05", "--pvalues", str(csv)
    ).stdout
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert doc["mode"] == "stepdown"
    assert doc["recipe"] == "holm"
    assert doc["params"]["s"] == 4  # resolved from the file
    assert doc["num_rejected"] == 3
    assert doc["rejected_ids"] == ["g1", "g2", "g3"]
    assert len(doc["thresholds"]) == 4
    assert doc["thresholds"][0] == pytest.approx(0.0125)
    assert len(doc["trace"]) == 4
    assert doc["trace"][0] == {
        "rank": 1,
        "id": "g1",
        "p": 0.001,
        "threshold": pytest.approx(0.0125),
        "rejected": True,
    }
    assert doc["trace"][3]["rejected"] is False


def test_apply_single_column_uses_positions(tmp_path):
    csv = tmp_path / "pvals.csv"
    csv.write_text("p\n0.001\n0.9\n")
    doc = json.loads(
        run_cli("apply", "--method", "holm", "--alpha", "0.05", "--pvalues", str(csv)).stdout
    )
    assert doc["rejected_ids"] == [1]


def test_apply_stepup_mode(tmp_path):
    csv = tmp_path / "pvals.csv"
    csv.write_text("0.06\n0.09\n0.9\n0.9\n")
    common = ["apply", "--method", "bh-stepup", "--alpha", "0.2", "--pvalues", str(csv)]
    down = json.loads(run_cli(*common, "--mode", "stepdown").stdout)
    up = json.loads(run_cli(*common, "--mode", "stepup").stdout)
    assert down["num_rejected"] == 0
    assert up["num_rejected"] == 2


def test_apply_rejects_bad_pvalue_with_location(tmp_path):
    csv = tmp_path / "pvals.csv"
    csv.write_text("id,p\ng1,0.5\ng2,1.5\n")
    proc = run_cli(
        "apply", "--method", "holm", "--alpha", "0.05", "--pvalues", str(csv), expect_code=1
    )
    assert proc.stderr.startswith("error:")
    assert ":3" in proc.stderr  # 1-based line of the offending value
    assert "[0, 1]" in proc.stderr


def test_table_matches_reference_row():
    out = run_cli("table", "1").stdout
    lines = out.splitlines()
    assert lines[0] == "s,gamma,D,C_or_bound,ratio"
    assert len(lines) == 24
    assert "100,0.1,2.0385,3.0199,1.4814" in lines


def test_table_out_file(tmp_path):
    target = tmp_path / "table2.csv"
    proc = run_cli("table", "2", "--out", str(target))
    assert proc.stdout == ""
    assert target.read_text() == run_cli("table", "2").stdout


def test_figure_headers():
    out = run_cli("figure", "2").stdout
    lines = out.splitlines()
    assert lines[0] == "i,alpha_fdp,alpha_fdr_tuned_for_fdp,ratio"
    assert len(lines) == 101
    assert lines[1].startswith("1,")


def test_figure_rejects_bad_index():
    proc = run_cli("figure", "4", expect_code=None)
    assert proc.stderr != ""


def test_simulate_example31():
    out = run_cli(
        "simulate",
        "--scenario", "example31",
        "--method", "fdp-base",
        "--gamma", "0.1",
        "--alpha", "0.05",
        "--trials", "2000",
        "--seed", "7",
        "--workers", "2",
    ).stdout
    doc = json.loads(out)
    assert doc["scenario"]["name"] == "example31"
    assert doc["scenario"]["s"] == 100
    assert doc["params"]["s"] == 100  # resolved from the scenario
    assert doc["trials"] == 2000
    assert doc["seed"] == 7
    est = doc["estimates"]["p_fdp_gt_gamma"]
    assert 0.0 <= est["mean"] <= 1.0
    assert est["se"] >= 0.0
    assert set(doc["estimates"]) == {
        "p_fdp_gt_gamma", "fdr", "kfwer", "mean_rejections", "thm32_bound",
    }


def test_simulate_worker_count_invariance():
    args = [
        "simulate",
        "--scenario", "independent",
        "--method", "holm",
        "--s", "20",
        "--alpha", "0.05",
        "--trials", "3000",
        "--seed", "11",
    ]
    one = json.loads(run_cli(*args, "--workers", "1").stdout)
    three = json.loads(run_cli(*args, "--workers", "3").stdout)
    assert one["estimates"] == three["estimates"]


def test_simulate_trials_env_override():
    args = [
        "simulate",
        "--scenario", "independent",
        "--method", "holm",
        "--s", "5",
        "--alpha", "0.05",
        "--seed", "3",
    ]
    doc = json.loads(run_cli(*args, env_extra={"STEPDOWN_TRIALS": "500"}).stdout)
    assert doc["trials"] == 500
    doc = json.loads(
        run_cli(*args, "--trials", "800", env_extra={"STEPDOWN_TRIALS": "500"}).stdout
    )
    assert doc["trials"] == 800


def test_simulate_rejects_unknown_scenario():
    proc = run_cli(
        "simulate", "--scenario", "bogus", "--method", "holm", "--s", "5", expect_code=None
    )
    assert proc.stderr != ""


def test_simulate_d_used_reported():
    doc = json.loads(
        run_cli(
            "simulate",
            "--scenario", "independent",
            "--method", "fdp-improved",
            "--s", "100",
            "--alpha", "0.05",
            "--gamma", "0.1",
            "--trials", "200",
            "--seed", "1",
        ).stdout
    )
    assert f"{doc['d_used']:.5g}" == "2.0385"


def test_config_file(tmp_path):
    cfg = tmp_path / "sim.ini"
    cfg.write_text(
        "[simulate]\n"
        "scenario = example41\n"
        "method = fdr-stepdown\n"
        "alpha = 0.12\n"
        "trials = 1000\n"
        "seed = 3\n"
    )
    doc = json.loads(run_cli("--config", str(cfg), "simulate").stdout)
    assert doc["recipe"] == "fdr-stepdown"
    assert doc["trials"] == 1000
    assert doc["scenario"]["name"] == "example41"

    # command line wins over the config file
    doc = json.loads(run_cli("--config", str(cfg), "simulate", "--trials", "250").stdout)
    assert doc["trials"] == 250


def test_config_rejects_unknown_keys(tmp_path):
    cfg = tmp_path / "sim.ini"
    cfg.write_text("[simulate]\nscenario = example41\nmethod = fdr-stepdown\nbogus = 1\n")
    proc = subprocess.run(
        [BIN, "--config", str(cfg), "simulate"], capture_output=True, text=True
    )
    assert proc.returncode != 0
