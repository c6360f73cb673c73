# SPDX-License-Identifier: Apache-2.0
import json
import math

import pytest

import relab


def test_minkowski_basics():
    t = relab.FourVector(t=1.0)
    null = relab.FourVector(x=1.0, t=1.0)
    assert relab.minkowski_dot(t, t) == 1.0
    assert relab.minkowski_dot(null, null) == 0.0
    m = relab.boost(0.6)
    # (t, x) = (0, 1) maps to (-0.75, 1.25)
    assert m[0][1] == pytest.approx(-0.75)
    assert m[1][1] == pytest.approx(1.25)
    with pytest.raises(ValueError):
        relab.boost(1.0)


def test_epr_operations():
    assert relab.emit_pair(0) == ((1.0, 0.0), (0.0, -1.0))
    assert relab.coincidence_analytic(0.0, math.pi / 2) == pytest.approx(0.5)
    exact = relab.estimate_coincidence(math.pi / 4, math.pi / 4, estimator="intensity")
    assert exact["value"] == pytest.approx(0.25)
    assert exact["exact"] and exact["standard_error"] == 0.0
    sampled = relab.estimate_coincidence(0.0, math.pi / 8, mode="sampled", trials=100000, seed=3)
    again = relab.estimate_coincidence(0.0, math.pi / 8, mode="sampled", trials=100000, seed=3)
    assert sampled == again
    assert abs(sampled["value"] - relab.coincidence_analytic(0.0, math.pi / 8)) < 4 * sampled["standard_error"]
    assert relab.chsh(0, math.pi / 4, math.pi / 8, 3 * math.pi / 8) == pytest.approx(2 * math.sqrt(2))
    report = relab.bayes_decomposition(math.pi / 4, math.pi / 4)
    assert report["factorization_holds"]
    assert report["deviation"] == pytest.approx(0.25)


def test_twin_and_chart():
    conv = relab.chart_conventional(3.0, 0.6)
    equal = relab.chart_equal_aging(3.0, 0.6)
    assert (conv["tau_traveler"], conv["tau_home"]) == pytest.approx((4.0, 5.0))
    assert (equal["tau_traveler"], equal["tau_home"]) == pytest.approx((5.0, 5.0))
    chart = json.loads(relab.emit_chart_json(3.0, 0.6, 11))
    assert len(chart["curves"]) == 8
    assert chart["params"] == {"D": 3, "beta": 0.6}
    with pytest.raises(ValueError):
        relab.chart_equal_aging(3.0, 1.0)


def test_decay():
    assert relab.decay_experiment(1.0, 1.0, 1.5, "equal_aging") == 1.0
    assert relab.decay_experiment(1.0, 1.0, 1.0 + 1e-12) - 1.0 == pytest.approx(1e-12, rel=1e-3)
    s = relab.decay_sensitivity(1.0, 1.0, 1.0 + 1e-12)
    assert not s["detectable"]


def test_fields_and_lightcone():
    w = relab.Worldline.static(relab.FourVector(), -50.0, 10.0, 0.1)
    src = relab.Particle(1.0, 1.0, w)
    event = relab.FourVector(x=10.0, t=3.0)
    tau, residual = relab.lightcone_intersection(w, event)
    assert tau == pytest.approx(-7.0)
    assert abs(residual) < 1e-10
    f = relab.retarded_field(src, event)
    assert f[1][0] == pytest.approx(0.01)
    g = relab.regularized_field_oracle(src, event, 1e-3)
    assert g[1][0] == pytest.approx(0.01, rel=1e-6)
    with pytest.raises(relab.InsufficientHistoryError):
        relab.lightcone_intersection(w, relab.FourVector(x=100.0))


def test_integrate_json():
    config = json.dumps({
        "dtau": 0.1, "tau_end": 1.0,
        "particles": [
            {"mass": 1, "charge": 1, "history": {"type": "static", "position": [-5, 0, 0], "depth": 20}},
            {"mass": 1, "charge": 1, "history": {"type": "static", "position": [5, 0, 0], "depth": 20}},
        ],
    })
    out = relab.integrate_json(config)
    assert out["status"] == "completed"
    rows = out["trajectories_csv"].strip().splitlines()
    assert rows[0].startswith("particle_id,tau")
    assert len(rows) == 1 + 2 * 11
    summary = json.loads(out["summary"])
    assert summary["max_normalization_drift"] < 1e-9

    shallow = config.replace('"depth": 20', '"depth": 5')
    assert relab.integrate_json(shallow)["status"] == "insufficient_history"
    with pytest.raises(ValueError):
        relab.integrate_json("{not json")
