"""Smoke tests for the Python bindings."""

import math

import pytest

import stepdown


def test_version_and_exports():
    assert stepdown.__version__ == "1.0.0"
    for name in (
        "harmonic", "normal_cdf", "constants", "d_value", "n_cap", "convert_level",
        "apply", "apply_method", "table_csv", "figure_csv", "simulate",
    ):
        assert callable(getattr(stepdown, name))


def test_harmonic_and_normal():
    assert stepdown.harmonic(1) == 1.0
    assert stepdown.harmonic(3) == pytest.approx(11.0 / 6.0, rel=1e-15)
    assert stepdown.normal_cdf(0.0) == pytest.approx(0.5, abs=1e-7)
    assert stepdown.normal_cdf(1.96) == pytest.approx(0.9750021049, abs=1e-7)


def test_constants_holm():
    seq = stepdown.constants("holm", 4, 0.05)
    assert seq["recipe"] == "holm"
    assert seq["s"] == 4
    assert seq["values"] == [
        pytest.approx(0.05 / 4),
        pytest.approx(0.05 / 3),
        pytest.approx(0.05 / 2),
        pytest.approx(0.05),
    ]
    assert seq["d_used"] is None


def test_constants_gamma_required():
    with pytest.raises((ValueError, RuntimeError)):
        stepdown.constants("fdp-base", 10, 0.05)


def test_constants_accepts_fraction_gamma():
    a = stepdown.constants("fdp-improved", 100, 0.05, gamma="0.1")
    b = stepdown.constants("fdp-improved", 100, 0.05, gamma="1/10")
    assert a["values"] == b["values"]
    assert f"{a['d_used']:.5g}" == "2.0385"


def test_d_value_frozen():
    res = stepdown.d_value(100, "0.1")
    assert f"{res['d']:.5g}" == "2.0385"
    assert res["argmax_num_true"] == 55
    assert stepdown.n_cap(100, "0.1", 55) == 6


def test_convert_level_round_trip():
    assert stepdown.convert_level("fdr_to_fdp", "0.1", 0.005) == pytest.approx(0.05)
    back = stepdown.convert_level("fdp_to_fdr", "1/40", 0.05 / 1.95)
    assert back == pytest.approx((0.05 / 1.95) * (1 - 1 / 40) + 1 / 40)


def test_apply_worked_example():
    thresholds = stepdown.constants("holm", 4, 0.05)["values"]
    out = stepdown.apply([0.001, 0.01, 0.02, 0.9], thresholds)
    assert out["num_rejected"] == 3
    assert out["rejected"] == [0, 1, 2]
    up = stepdown.apply([0.06, 0.09, 0.9, 0.9], [0.05, 0.1, 0.15, 0.2], mode="stepup")
    assert up["num_rejected"] == 2


def test_apply_method_infers_s():
    out = stepdown.apply_method([0.001, 0.01, 0.02, 0.9], "holm", 0.05)
    assert out["num_rejected"] == 3
    assert len(out["thresholds"]) == 4


def test_table_csv():
    csv = stepdown.table_csv(1)
    lines = csv.splitlines()
    assert lines[0] == "s,gamma,D,C_or_bound,ratio"
    assert len(lines) == 24
    assert "100,0.1,2.0385,3.0199,1.4814" in lines


def test_figure_csv():
    lines = stepdown.figure_csv(3).splitlines()
    assert lines[0] == "i,alpha_fdp_tuned_for_fdr,alpha_fdr,ratio"
    assert len(lines) == 101


def test_simulate_example31():
    rep = stepdown.simulate(
        "example31", "fdp-base", alpha=0.05, gamma="0.1",
        trials=20000, seed=4242, workers=2,
    )
    assert rep["scenario"] == "example31"
    assert rep["s"] == 100
    assert rep["I"] == 90
    est = rep["estimates"]["p_fdp_gt_gamma"]
    # analytic frequency is ~0.0739; 20000 trials put 4*SE under 0.008
    assert abs(est["mean"] - 0.0739) < 0.008
    assert est["se"] == pytest.approx(
        math.sqrt(est["mean"] * (1 - est["mean"]) / 20000), rel=1e-9
    )


def test_simulate_worker_invariance():
    kwargs = dict(s=20, alpha=0.05, trials=4000, seed=99)
    one = stepdown.simulate("independent", "holm", workers=1, **kwargs)
    three = stepdown.simulate("independent", "holm", workers=3, **kwargs)
    assert one["estimates"] == three["estimates"]
